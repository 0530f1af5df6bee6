from fractions import Fraction as Q

import pytest

from novfiber import GF, QQ, LaurentPoly
from novfiber.acceptance import circle_complex, koszul_complex, zero_complex
from novfiber.growth import (QuotientTower, change_field, growth_csv, growth_estimate,
                             luck_approx_check, normalized_betti, specialize)
from novfiber.homology import FreeChainComplex


@pytest.mark.parametrize("m", [1, 2, 5, 8])
def test_specialize_circulant(m):
    S = specialize(circle_complex(), [[m]])
    assert S.ranks == [m, m]
    assert S.betti() == [1, 1]
    t, = LaurentPoly.variables(1)
    assert specialize(FreeChainComplex([[[t]]], 1), [[m]]).betti() == [0, 0]


def test_specialize_dense_shape():
    t, = LaurentPoly.variables(1)
    S = specialize(FreeChainComplex([[[t]]], 1), [[3]])
    assert S.dense(1) == [[0, 0, 1], [1, 0, 0], [0, 1, 0]]


def test_normalized_betti_examples():
    assert normalized_betti(circle_complex(), [[4]]) == [Q(1, 4), Q(1, 4)]
    assert normalized_betti(zero_complex(), [[7]]) == [1, 1]
    t, = LaurentPoly.variables(1)
    C = FreeChainComplex([[[1 + t]]], 1)
    assert normalized_betti(C, [[2]]) == [Q(1, 2), Q(1, 2)]
    assert normalized_betti(C, [[3]]) == [0, 0]
    assert normalized_betti(C, [[3]], GF(2)) == [Q(1, 3), Q(1, 3)]


def test_koszul_normalized():
    for m in (2, 3, 4):
        assert normalized_betti(koszul_complex(), [[m, 0], [0, m]]) == [Q(c, m * m) for c in (1, 2, 1)]


def test_direct_sum_additive():
    C = circle_complex().direct_sum(zero_complex())
    for m in (2, 3):
        a = normalized_betti(circle_complex(), [[m]])
        b = normalized_betti(zero_complex(), [[m]])
        assert normalized_betti(C, [[m]]) == [x + y for x, y in zip(a, b)]


def test_luck_check():
    tower = QuotientTower.diagonal([2, 4, 8], 1)
    rep = luck_approx_check(circle_complex(), tower)
    assert rep["ok"]
    assert rep["degrees"][0]["normalized"] == [Q(1, 2), Q(1, 4), Q(1, 8)]
    assert rep["degrees"][0]["monotone"]
    rep = luck_approx_check(koszul_complex(), QuotientTower.diagonal([2, 4], 2))
    assert not rep["ok"]  # 2/16 > 1/16 at m=16
    assert luck_approx_check(koszul_complex(), QuotientTower.diagonal([2, 4], 2), tol=Q(1, 8))["ok"]


def test_growth_estimate_envelopes():
    tower = QuotientTower.diagonal([2, 4, 8], 2)
    rep = growth_estimate(koszul_complex(GF(2)), tower)
    assert rep["indices"] == [4, 16, 64]
    d1 = rep["degrees"][1]
    assert d1["normalized"] == [Q(2, 4), Q(2, 16), Q(2, 64)]
    assert d1["upper"] == d1["normalized"] and d1["lower"] == [Q(2, 64)] * 3
    assert d1["gap"]
    assert [c["equal"] for c in rep["multiplicativity"]] == [True, True]


def test_multiplicativity_non_diagonal():
    tower = QuotientTower([[[2, 0], [0, 1]], [[2, 1], [0, 2]], [[4, 2], [0, 4]]])
    rep = growth_estimate(koszul_complex(), tower)
    assert all(c["equal"] for c in rep["multiplicativity"])


def test_tower_validation():
    with pytest.raises(ValueError):
        QuotientTower([[[2]], [[3]]])
    with pytest.raises(ValueError):
        QuotientTower([[[4]], [[2]]])
    with pytest.raises(ValueError):
        QuotientTower([])
    T = QuotientTower.from_json({"diagonal": [2, 6]}, 1)
    assert T.indices == [2, 6]
    assert QuotientTower.from_json(T.to_json(), 1).indices == [2, 6]


def test_change_field():
    C = change_field(koszul_complex(), GF(3))
    assert C.field == GF(3)


def test_csv():
    rep = growth_estimate(circle_complex(), QuotientTower.diagonal([2, 4], 1))
    assert growth_csv(rep).splitlines() == ["m,degree,b,b/m", "2,0,1,1/2", "2,1,1,1/2",
                                            "4,0,1,1/4", "4,1,1,1/4"]
