"""Command line entry point.

JSON goes to stdout, a short human summary to stderr.  Exit status is 0
when everything was computed, 2 when some verdict is Inconclusive and 1
on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction as Q
from pathlib import Path

from .crossed import Sublattice
from .fox import Presentation, fox_complex
from .growth import QuotientTower, growth_csv, growth_estimate
from .homology import (FreeChainComplex, betti_over_fractions, bns_cone_sample,
                       fibering_check, novikov_homology, vc_rank_check)
from .laurent import LaurentPoly
from .orders import Character
from .scalars import FieldSpec
from .skewfield import LatticeChain, NonUnit, invariant_unit_certify

EXIT_OK, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2


class InputError(Exception):
    pass


def _plain(x):
    if isinstance(x, Q):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if x == float("inf"):
        return "inf"
    return x


def _emit(obj):
    sys.stdout.write(json.dumps(_plain(obj), sort_keys=True, separators=(",", ":")) + "\n")


def _say(msg):
    sys.stderr.write(msg + "\n")


def _read_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _load_complex(path, field=None):
    """A complex file (JSON) or a presentation (anything else)."""
    p = Path(path)
    if p.suffix.lower() == ".json":
        obj = _read_json(path)
        try:
            C = FreeChainComplex.from_json(obj)
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"{path}: {exc}") from exc
        if field is not None and field != C.field:
            from .growth import change_field
            C = change_field(C, field)
        return C
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        return fox_complex(Presentation.parse(text), field or FieldSpec.parse("Q"))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _psi(text, rank):
    try:
        w = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise InputError(f"--psi: expected comma separated integers, got {text!r}") from exc
    if len(w) != rank:
        raise InputError(f"--psi has {len(w)} entries but the complex has rank {rank}")
    if not any(w):
        raise InputError("--psi must be nonzero")
    return Character(w)


def _field(text):
    if text is None:
        return None
    try:
        return FieldSpec.parse(text)
    except ValueError as exc:
        raise InputError(f"--field: {exc}") from exc


def cmd_betti(args):
    C = _load_complex(args.complex, _field(args.field))
    b = betti_over_fractions(C)
    _emit({"betti": b})
    _say(f"Betti numbers over the fraction field: {b}")
    return EXIT_OK


def cmd_novikov(args):
    C = _load_complex(args.complex, _field(args.field))
    v = novikov_homology(C, _psi(args.psi, C.rank), args.deg, args.T)
    _emit(v.to_json())
    for s in v.statuses:
        _say(f"H_{s.degree}: {s.kind}")
    return EXIT_INCONCLUSIVE if v.inconclusive else EXIT_OK


def cmd_fiber_check(args):
    C = _load_complex(args.input, _field(args.field))
    rep = fibering_check(C, _psi(args.psi, C.rank), args.deg, args.T)
    _emit(rep.to_json())
    _say(f"psi={list(rep.psi.weights)}: {rep.verdict}")
    return EXIT_INCONCLUSIVE if rep.verdict == "inconclusive" else EXIT_OK


def cmd_bns_sample(args):
    C = _load_complex(args.input, _field(args.field))
    res = bns_cone_sample(C, args.deg, max_coeff=args.max_coeff, seed=args.seed,
                          samples=args.samples, T=args.T)
    rays = []
    for r, v in res.items():
        status = "vanishes" if v.vanishes else "inconclusive" if v.inconclusive else "nonvanishing"
        rays.append({"ray": list(r), "status": status, "verdict": v.to_json()})
    bad = [x["ray"] for x in rays if x["status"] == "nonvanishing"]
    _emit({"seed": args.seed, "max_coeff": args.max_coeff, "n": args.deg,
           "rays": rays, "nonvanishing": bad})
    _say(f"{len(rays)} rays, Novikov homology nonvanishing on {bad}")
    return EXIT_INCONCLUSIVE if any(x["status"] == "inconclusive" for x in rays) else EXIT_OK


def cmd_unit_check(args):
    obj = _read_json(args.poly)
    try:
        if isinstance(obj, dict) and "poly" in obj:
            field = FieldSpec.parse(obj.get("field", "Q"))
            f = LaurentPoly.from_json(obj["poly"], int(obj["rank"]), field)
        else:
            f = LaurentPoly.from_json(obj)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{args.poly}: {exc}") from exc
    try:
        chain = LatticeChain.from_json(_read_json(args.chain))
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{args.chain}: {exc}") from exc
    if chain.n != f.rank:
        raise InputError("polynomial rank does not match the chain")
    if not f:
        raise InputError(f"{args.poly}: the zero polynomial is not a unit")
    try:
        cert = invariant_unit_certify(f, chain)
    except NonUnit as exc:
        _emit({"unit": False, "level": exc.level, "path": exc.path, "fiber": exc.poly.to_json()})
        _say(f"not certified: fiber {exc.poly!r} at level {exc.level}")
        return EXIT_OK
    _emit(cert.to_json())
    _say(f"unit, certificate depth {cert.depth}")
    return EXIT_OK


def cmd_growth(args):
    field = _field(args.field)
    C = _load_complex(args.complex, field)
    try:
        tower = QuotientTower.from_json(_read_json(args.tower), C.rank)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{args.tower}: {exc}") from exc
    rep = growth_estimate(C, tower)
    _emit(rep)
    if args.csv:
        Path(args.csv).write_text(growth_csv(rep))
    for d in rep["degrees"]:
        _say(f"degree {d['degree']}: upper {d['upper'][-1]}, lower {d['lower'][-1]} at m={tower.indices[-1]}")
    return EXIT_OK


def cmd_vc_check(args):
    C = _load_complex(args.complex, _field(args.field))
    try:
        H = Sublattice.from_json(json.loads(args.sublattice))
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"--sublattice: {exc}") from exc
    rep = vc_rank_check(C, H, _psi(args.psi, C.rank), args.T)
    _emit(rep)
    _say(f"ranks {rep['plus']} / {rep['minus']} vs expected {rep['expected']}")
    return EXIT_INCONCLUSIVE if rep["inconclusive"] else EXIT_OK


def cmd_selftest(args):
    from .acceptance import run_all

    results = run_all(quick=args.quick)
    for r in results:
        _say(f"[{'PASS' if r.ok else 'FAIL'}] {r.number}. {r.title}: {r.detail}")
    _emit({"criteria": [{"number": r.number, "ok": r.ok, "detail": r.detail} for r in results]})
    return EXIT_OK if all(r.ok for r in results) else EXIT_INPUT


def build_parser():
    ap = argparse.ArgumentParser(prog="novfiber", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_T=True):
        p.add_argument("--field", help="coefficient field: Q or Fp:<p>")
        if with_T:
            p.add_argument("--T", type=int, default=None, help="fixed window (default: ladder 8, 16, 32)")

    p = sub.add_parser("betti", help="Betti numbers over the fraction field")
    p.add_argument("complex")
    common(p, with_T=False)
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("novikov", help="Novikov homology for one character")
    p.add_argument("complex")
    p.add_argument("--psi", required=True)
    p.add_argument("--deg", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_novikov)

    p = sub.add_parser("fiber-check", help="Novikov homology for +psi and -psi")
    p.add_argument("input", help="complex .json or presentation text file")
    p.add_argument("--psi", required=True)
    p.add_argument("--deg", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_fiber_check)

    p = sub.add_parser("bns-sample", help="Novikov verdicts on primitive rays")
    p.add_argument("input")
    p.add_argument("--max-coeff", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--deg", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_bns_sample)

    p = sub.add_parser("unit-check", help="certify a polynomial as a unit along a chain")
    p.add_argument("poly")
    p.add_argument("--chain", required=True)
    p.set_defaults(func=cmd_unit_check)

    p = sub.add_parser("growth", help="normalized Betti numbers along a tower")
    p.add_argument("complex")
    p.add_argument("--tower", required=True)
    p.add_argument("--csv")
    common(p, with_T=False)
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("vc-check", help="rank formula over a finite-index sublattice")
    p.add_argument("complex")
    p.add_argument("--sublattice", required=True, help="JSON basis, e.g. '[[2]]'")
    p.add_argument("--psi", required=True, help="character in sublattice coordinates")
    p.add_argument("--T", type=int, default=12)
    p.add_argument("--field")
    p.set_defaults(func=cmd_vc_check)

    p = sub.add_parser("selftest", help="run the acceptance criteria")
    p.add_argument("--quick", action="store_true", help="smaller random samples")
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        _say(f"error: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
