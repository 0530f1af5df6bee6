import pytest

from novfiber import (GF, QQ, Fraction, LatticeChain, LaurentPoly, MatrixOrder, NovikovSeries,
                      Sublattice, ZeroInput, expand_fraction, invariant_unit_certify,
                      leading_coefficients, nov_mul, transport_finite_index)
from novfiber.skewfield import DivisionByZero, NonUnit, frac_det

from conftest import rand_nonzero

CHAIN = LatticeChain([[[1, 0], [0, 1]], [[0, 1]], []])


def test_fraction_sum():
    t, = LaurentPoly.variables(1)
    one = LaurentPoly.constant(1, 1)
    assert Fraction(one, 1 - t) + Fraction(one, 1 + t) == Fraction(one.scale(2), 1 - t ** 2)


def test_fraction_inverse(rng):
    for rank in (1, 2):
        for _ in range(100):
            a = Fraction(rand_nonzero(rng, rank, QQ), rand_nonzero(rng, rank, QQ))
            assert a * a.inverse() == 1


def test_fraction_over_f2():
    t, s = LaurentPoly.variables(2, GF(2))
    y = t - 1 - s
    assert Fraction(LaurentPoly.constant(1, 2, GF(2)), y) * y == 1


def test_fraction_normal_form_rank_one():
    t, = LaurentPoly.variables(1)
    f = Fraction((1 - t) * (2 + t) * t, (1 - t) * (1 + t).scale(3) * t ** 4)
    assert f.den == 1 + t
    assert f.num * 3 == (2 + t) * t ** -3


def test_division_by_zero():
    t, = LaurentPoly.variables(1)
    with pytest.raises(DivisionByZero):
        Fraction(t, LaurentPoly.zero(1))
    with pytest.raises(DivisionByZero):
        Fraction(LaurentPoly.zero(1)).inverse()


def test_chain_validation():
    with pytest.raises(ValueError):
        LatticeChain([[[1, 0], [0, 1]], [[0, 2]], []])  # not saturated
    with pytest.raises(ValueError):
        LatticeChain([[[2, 0], [0, 1]], []])
    c = LatticeChain([[[1, 0], [0, 1]], [[1, 1]], []], companions=[[[1, 0], [0, 1]], [[1, 1], [0, 2]], [[2, 0], [0, 2]]])
    assert LatticeChain.from_json(c.to_json()).companions == c.companions


def test_leading_coefficients_examples():
    t, s = LaurentPoly.variables(2)
    one = LaurentPoly.constant(1, 1)
    u, = LaurentPoly.variables(1)
    assert leading_coefficients(1 + t + s * t, CHAIN) == {one, 1 + u}
    assert leading_coefficients(1 + t + t * t, CHAIN) == {one}
    mono = (t ** 2 * s).scale(3)
    assert leading_coefficients(mono, CHAIN) == {u.scale(3)}
    with pytest.raises(ZeroInput):
        leading_coefficients(LaurentPoly.zero(2), CHAIN)


def test_certify_examples():
    t, s = LaurentPoly.variables(2)
    cert = invariant_unit_certify(t - 1 - s, CHAIN)
    assert cert.depth == 2
    fibers = sorted(repr(LaurentPoly.from_json(c["fiber"]["poly"])) for c in cert.tree["children"])
    assert fibers == ["-1 - t", "1"]
    assert invariant_unit_certify(LaurentPoly.constant(5, 2), CHAIN).depth == 0
    with pytest.raises(ZeroInput):
        invariant_unit_certify(LaurentPoly.zero(2), CHAIN)


def test_certify_nonterminal_chain():
    t, s = LaurentPoly.variables(2)
    chain = LatticeChain([[[1, 0], [0, 1]], [[0, 1]]])
    with pytest.raises(NonUnit) as info:
        invariant_unit_certify(t - 1 - s, chain)
    assert info.value.level == 1


def test_certified_units_invert_on_windows(rng):
    for _ in range(60):
        f = rand_nonzero(rng, 2, QQ, 5)
        invariant_unit_certify(f, CHAIN)
        o = MatrixOrder([[rng.randint(-5, 5) or 1, rng.randint(-5, 5)], [0, 1]])
        e = expand_fraction(LaurentPoly.constant(1, 2), f, o, 8)
        fs = NovikovSeries.from_poly(f, e.character)
        top = 8 + min(e.character(k) for k in f.terms)
        assert nov_mul(fs, e).agrees_with(NovikovSeries.one(2, QQ, e.character), top)


def test_transport_examples():
    t, = LaurentPoly.variables(1)
    H = Sublattice([[2]])
    one = LaurentPoly.constant(1, 1)
    M = transport_finite_index(Fraction(t), H)
    assert M == [[0, t], [1, 0]]
    assert transport_finite_index(Fraction(one), H) == [[1, 0], [0, 1]]
    M = transport_finite_index(Fraction(one, 1 - t), H)
    u = t  # t^2 in coordinates of 2Z
    d = 1 - u
    assert M == [[Fraction(one, d), Fraction(u, d)], [Fraction(one, d), Fraction(one, d)]]


def test_transport_is_a_field_embedding(rng):
    H = Sublattice([[3]])
    for _ in range(30):
        a = Fraction(rand_nonzero(rng, 1, QQ, 3), rand_nonzero(rng, 1, QQ, 3))
        b = Fraction(rand_nonzero(rng, 1, QQ, 3), rand_nonzero(rng, 1, QQ, 3))
        Ma, Mb = transport_finite_index(a, H), transport_finite_index(b, H)
        prod = [[sum((Ma[i][k] * Mb[k][j] for k in range(3)), Fraction(LaurentPoly.zero(1)))
                 for j in range(3)] for i in range(3)]
        assert transport_finite_index(a * b, H) == prod
        assert transport_finite_index(a + b, H) == [[x + y for x, y in zip(r, s)] for r, s in zip(Ma, Mb)]
        assert frac_det(Ma)


def test_fraction_json():
    t, s = LaurentPoly.variables(2)
    f = Fraction(t + 1, s - t)
    assert Fraction.from_json(f.to_json()) == f
