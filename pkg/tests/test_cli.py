import json

import pytest

from novfiber.acceptance import FIGURE_EIGHT, circle_complex, koszul_complex
from novfiber.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    p = {}
    p["circle"] = tmp_path / "circle.json"
    p["circle"].write_text(json.dumps(circle_complex().to_json()))
    p["koszul"] = tmp_path / "koszul.json"
    p["koszul"].write_text(json.dumps(koszul_complex().to_json()))
    p["tms"] = tmp_path / "tms.json"
    p["tms"].write_text(json.dumps({"rank": 2, "field": "Fp:2", "differentials": [[["t - 1 - s"]]]}))
    p["knot"] = tmp_path / "fig8.txt"
    p["knot"].write_text(FIGURE_EIGHT + "\n")
    p["poly"] = tmp_path / "poly.json"
    p["poly"].write_text(json.dumps({"rank": 2, "poly": "t - 1 - s"}))
    p["chain"] = tmp_path / "chain.json"
    p["chain"].write_text(json.dumps({"levels": [[[1, 0], [0, 1]], [[0, 1]], []]}))
    p["short"] = tmp_path / "short.json"
    p["short"].write_text(json.dumps({"levels": [[[1, 0], [0, 1]], [[0, 1]]]}))
    p["tower"] = tmp_path / "tower.json"
    p["tower"].write_text(json.dumps({"diagonal": [2, 4]}))
    p["bad"] = tmp_path / "bad.json"
    p["bad"].write_text('{"rank": 1,\n  "differentials": [}')
    return p


def test_betti(capsys, files):
    code, out, err = run(capsys, "betti", str(files["circle"]))
    assert code == 0 and out == '{"betti":[0,0]}\n'
    assert "Betti" in err


def test_novikov(capsys, files):
    code, out, _ = run(capsys, "novikov", str(files["tms"]), "--psi", "1,0")
    obj = json.loads(out)
    assert code == 0
    assert obj["degrees"][0]["status"] == "Nonvanishing"
    code, out, _ = run(capsys, "novikov", str(files["tms"]), "--psi", "1,1", "--T", "8")
    assert all(d["status"] == "VanishesExactly" for d in json.loads(out)["degrees"])


def test_fiber_check_presentation(capsys, files):
    code, out, err = run(capsys, "fiber-check", str(files["knot"]), "--psi", "1")
    assert code == 0 and json.loads(out)["verdict"] == "fibered"
    assert "fibered" in err
    code, out, _ = run(capsys, "fiber-check", str(files["knot"]), "--psi", "1", "--field", "Fp:2")
    assert json.loads(out)["verdict"] == "fibered"


def test_bns_sample(capsys, files):
    code, out, _ = run(capsys, "bns-sample", str(files["tms"]), "--max-coeff", "2")
    obj = json.loads(out)
    assert code == 0
    assert sorted(obj["nonvanishing"]) == [[-1, -1], [0, 1], [1, 0]]


def test_unit_check(capsys, files):
    code, out, _ = run(capsys, "unit-check", str(files["poly"]), "--chain", str(files["chain"]))
    obj = json.loads(out)
    assert code == 0 and obj["unit"] and obj["depth"] == 2
    code, out, _ = run(capsys, "unit-check", str(files["poly"]), "--chain", str(files["short"]))
    obj = json.loads(out)
    assert code == 0 and obj["unit"] is False and obj["level"] == 1


def test_growth(capsys, files, tmp_path):
    csv_path = tmp_path / "g.csv"
    code, out, _ = run(capsys, "growth", str(files["koszul"]), "--tower", str(files["tower"]),
                       "--csv", str(csv_path), "--field", "Fp:2")
    obj = json.loads(out)
    assert code == 0 and obj["indices"] == [4, 16]
    assert obj["degrees"][1]["normalized"] == ["1/2", "1/8"]
    assert csv_path.read_text().startswith("m,degree,b,b/m\n4,0,1,1/4\n")


def test_vc_check(capsys, files):
    code, out, _ = run(capsys, "vc-check", str(files["circle"]), "--sublattice", "[[2]]", "--psi", "1")
    obj = json.loads(out)
    assert code == 0 and obj["equal"] and obj["expected"] == [0, 0]


def test_output_is_byte_identical(capsys, files):
    a = run(capsys, "bns-sample", str(files["koszul"]), "--max-coeff", "2")[1]
    b = run(capsys, "bns-sample", str(files["koszul"]), "--max-coeff", "2")[1]
    assert a == b


@pytest.mark.parametrize("argv", [
    ["betti", "missing.json"],
    ["novikov", "{circle}", "--psi", "1,0"],
    ["novikov", "{circle}", "--psi", "0"],
    ["novikov", "{circle}", "--psi", "x"],
    ["betti", "{circle}", "--field", "Fp:4"],
    ["unit-check", "{poly}", "--chain", "{bad}"],
])
def test_input_errors(capsys, files, argv):
    argv = [a.format(**{k: str(v) for k, v in files.items()}) for a in argv]
    code, out, err = run(capsys, *argv)
    assert code == 1 and out == "" and err.startswith("error:")


def test_json_error_position(capsys, files):
    code, _, err = run(capsys, "betti", str(files["bad"]))
    assert code == 1
    assert f"{files['bad']}:2:" in err


def test_malformed_presentation(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("<a, b | a c>\n")
    code, _, err = run(capsys, "fiber-check", str(p), "--psi", "1")
    assert code == 1 and "line 1" in err
