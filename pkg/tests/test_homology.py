import math

import pytest

from novfiber import GF, QQ, Character, LaurentPoly, NovikovSeries, Sublattice, leading_slab
from novfiber.acceptance import circle_complex, koszul_complex, zero_complex
from novfiber.homology import (FreeChainComplex, NoUnitPivot, betti_over_fractions, bns_cone_sample,
                               fibering_check, novikov_homology, primitive_rays, restrict_complex,
                               smith_normal_form, vc_rank_check)
from novfiber.linalg import poly_det
from novfiber.skewfield import Fraction

from conftest import rand_poly


def test_betti_examples():
    assert betti_over_fractions(circle_complex()) == [0, 0]
    assert betti_over_fractions(koszul_complex()) == [0, 0, 0]
    assert betti_over_fractions(zero_complex()) == [1, 1]
    t, s = LaurentPoly.variables(2)
    assert betti_over_fractions(FreeChainComplex([[[t - 1, t * t - 1]]], 2)) == [0, 1]


def test_d_squared_must_vanish():
    t, = LaurentPoly.variables(1)
    with pytest.raises(ValueError):
        FreeChainComplex([[[t - 1]], [[t]]], 1)


def test_shape_validation():
    t, = LaurentPoly.variables(1)
    with pytest.raises(ValueError):
        FreeChainComplex([[[t - 1, t]], [[t]]], 1)


def _check_snf(M, snf, mul):
    n, m = len(M), len(M[0])
    PM = [[sum((snf.P[i][k] * M[k][j] for k in range(n)), mul(0)) for j in range(m)] for i in range(n)]
    PMQ = [[sum((PM[i][k] * snf.Q[k][j] for k in range(m)), mul(0)) for j in range(m)] for i in range(n)]
    return PMQ


def test_smith_over_fractions(rng):
    for _ in range(20):
        M = [[rand_poly(rng, 2, QQ, 3, -1, 1) for _ in range(3)] for _ in range(2)]
        M[1] = [x * M[0][0] for x in M[0]] if rng.random() < 0.3 else M[1]
        snf = smith_normal_form(M)
        zero = Fraction(LaurentPoly.zero(2))
        lift = [[Fraction(x) for x in row] for row in M]
        D = _check_snf(lift, snf, lambda _: zero)
        for i in range(2):
            for j in range(3):
                want = 1 if (i == j and i < snf.rank) else 0
                assert D[i][j] == want
        det_rank = 2 if any(poly_det([[r[a], r[b]] for r in M], 2, QQ)
                            for a in range(3) for b in range(a + 1, 3)) else (1 if any(x for r in M for x in r) else 0)
        assert snf.rank == det_rank


def test_smith_over_novikov():
    t, s = LaurentPoly.variables(2)
    M = [[1 - t, s], [t * s, 1 + s]]
    psi = Character([1, 3])
    snf = smith_normal_form(M, psi=psi, T=10)
    zero = NovikovSeries.from_poly(LaurentPoly.zero(2), psi)
    lift = [[NovikovSeries.from_poly(x, psi) for x in row] for row in M]
    D = _check_snf(lift, snf, lambda _: zero)
    one = NovikovSeries.one(2, QQ, psi)
    assert snf.rank == 2
    for i in range(2):
        for j in range(2):
            want = one if i == j else zero
            assert D[i][j].agrees_with(want, min(D[i][j].complete_to, 5))


def test_smith_novikov_no_unit_pivot():
    F2 = GF(2)
    t, s = LaurentPoly.variables(2, F2)
    with pytest.raises(NoUnitPivot):
        smith_normal_form([[t - 1 - s]], psi=Character([1, 0]))


def test_novikov_circle():
    for sign in (1, -1):
        v = novikov_homology(circle_complex(), [sign], 1)
        assert v.vanishes
        assert [s.kind for s in v.statuses] == ["VanishesExactly", "VanishesExactly"]


def test_novikov_t_minus_one_minus_s_over_f2():
    F2 = GF(2)
    t, s = LaurentPoly.variables(2, F2)
    C = FreeChainComplex([[[t - 1 - s]]], 2, F2)
    v = novikov_homology(C, [1, 0], 1)
    st = v.statuses[0]
    assert st.kind == "Nonvanishing"
    assert LaurentPoly.from_json(st.witness["slab"], 2, F2) == 1 + s
    assert novikov_homology(C, [1, 1], 1).vanishes


def test_bns_sample_t_minus_one_minus_s():
    t, s = LaurentPoly.variables(2)
    res = bns_cone_sample(FreeChainComplex([[[t - 1 - s]]], 2), 1, max_coeff=3)
    assert len(res) == len(primitive_rays(2, 3))
    assert sorted(r for r, v in res.items() if not v.vanishes) == [(-1, -1), (0, 1), (1, 0)]


def test_bns_sample_is_deterministic():
    C = koszul_complex()
    a = bns_cone_sample(C, 1, max_coeff=4, samples=6, seed=3)
    b = bns_cone_sample(C, 1, max_coeff=4, samples=6, seed=3)
    assert list(a) == list(b) and len(a) == 6
    assert all(v.vanishes for v in a.values())
    with pytest.raises(ValueError):
        bns_cone_sample(C, 1, rays=[(2, 2)])


def test_zero_complex_free():
    v = novikov_homology(zero_complex(), [1], 1)
    assert [(s.kind, s.rank, s.window) for s in v.statuses] == [("FreeOfRank", 1, math.inf)] * 2
    assert fibering_check(zero_complex(), [1]).verdict == "not_fibered"


def test_character_validation():
    with pytest.raises(ValueError):
        novikov_homology(circle_complex(), [0], 1)
    with pytest.raises(ValueError):
        novikov_homology(circle_complex(), [1, 0], 1)


@pytest.mark.parametrize("size", [1, 2])
@pytest.mark.parametrize("field", [QQ, GF(2)], ids=str)
def test_random_square_complexes_against_determinant(rng, size, field):
    # For C_1 -> C_0 with a square matrix, H_0 vanishes iff det is a Novikov
    # unit (monomial leading slab) and H_1 vanishes iff det != 0.
    for _ in range(100):
        w = [0, 0]
        while not any(w):
            w = [rng.randint(-3, 3), rng.randint(-3, 3)]
        psi = Character(w)
        A = [[rand_poly(rng, 2, field, 3, -1, 1) for _ in range(size)] for _ in range(size)]
        det = poly_det(A, 2, field)
        v = novikov_homology(FreeChainComplex([A], 2, field), psi, 1)
        h0, h1 = v.statuses
        assert not v.inconclusive
        assert (h1.kind == "VanishesExactly") == bool(det)
        unit = bool(det) and leading_slab(det, psi.weights).is_monomial()
        assert (h0.kind == "VanishesExactly") == unit


def test_fibering_knots():
    from novfiber.fox import Presentation, fox_complex
    from novfiber.acceptance import FIGURE_EIGHT, TREFOIL
    for text in (FIGURE_EIGHT, TREFOIL):
        for field in (QQ, GF(2)):
            assert fibering_check(fox_complex(Presentation.parse(text), field), [1]).verdict == "fibered"


def test_restrict_complex_keeps_betti():
    H = Sublattice([[2, 0], [0, 1]])
    R = restrict_complex(koszul_complex(), H)
    assert R.ranks == [2, 4, 2]
    assert betti_over_fractions(R) == [0, 0, 0]


@pytest.mark.parametrize("m", [2, 3])
def test_vc_rank_check(m):
    H = Sublattice([[m]])
    for C, exp in ((zero_complex(), [m, m]), (circle_complex(), [0, 0]),
                   (zero_complex().direct_sum(circle_complex()), [m, m])):
        rep = vc_rank_check(C, H, [1], T=12)
        assert rep["expected"] == exp
        assert rep["equal"] and not rep["inconclusive"]


def test_sikorav_consistency():
    # vanishing for +psi and -psi agrees with vanishing Betti numbers over fractions
    t, s = LaurentPoly.variables(2)
    for C in (koszul_complex(), FreeChainComplex([[[t - 1 - s]]], 2)):
        b = betti_over_fractions(C)
        for r in primitive_rays(2, 2):
            if novikov_homology(C, r, 1).vanishes:
                assert b[0] == b[1] == 0


def test_complex_json_round_trip():
    C = koszul_complex(GF(5))
    D = FreeChainComplex.from_json(C.to_json())
    assert D.to_json() == C.to_json()
    obj = {"rank": 1, "differentials": [[["t - 1"]]]}
    assert betti_over_fractions(FreeChainComplex.from_json(obj)) == [0, 0]


def test_verdict_json():
    v = novikov_homology(zero_complex(), [1], 1)
    obj = v.to_json()
    assert obj["degrees"][0] == {"degree": 0, "status": "FreeOfRank", "rank": 1, "window": "inf"}
