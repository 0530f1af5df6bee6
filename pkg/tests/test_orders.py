import pytest

from novfiber import (Character, LaurentPoly, MatrixOrder, NotSorted, compare, convex_flag,
                      dictionary_order, extend_order, leading_term, restrict_order,
                      separating_character)
from novfiber.orders import EQUAL, GREATER, LESS, random_order

from conftest import rand_nonzero
from novfiber import QQ


def test_compare_examples():
    lex = MatrixOrder([[1, 0], [0, 1]])
    assert compare(lex, (0, 5), (1, -100)) == LESS
    assert compare(lex, (3, 3), (3, 3)) == EQUAL
    o = MatrixOrder([[1, 1], [0, 1]])
    assert compare(o, (1, 0), (0, 1)) == LESS
    assert compare(o, (0, 1), (1, 0)) == GREATER


def test_order_must_be_total():
    with pytest.raises(ValueError):
        MatrixOrder([[1, 1], [2, 2]])


def test_leading_term_examples():
    t, = LaurentPoly.variables(1)
    assert leading_term(MatrixOrder([[1]]), 1 + t) == ((0,), 1)
    assert leading_term(MatrixOrder([[-1]]), 1 + t) == ((1,), 1)
    assert leading_term(MatrixOrder([[-1]]), 2 + 3 * t + 5 * t ** 2) == ((2,), 5)


def test_separating_character_examples():
    lex = MatrixOrder([[1, 0], [0, 1]])
    assert separating_character(lex, [(4, 4)]).is_zero()
    assert separating_character(lex, [(0, 0), (0, 1), (1, -5)]) == Character((7, 1))
    assert separating_character(MatrixOrder([[1]]), [(0,), (3,)]) == Character((1,))


def test_separating_character_rejects_unsorted():
    lex = MatrixOrder([[1, 0], [0, 1]])
    with pytest.raises(NotSorted):
        separating_character(lex, [(0, 1), (0, 0)])
    with pytest.raises(NotSorted):
        separating_character(lex, [(0, 1), (0, 1)])


def test_separating_character_random(rng):
    for _ in range(500):
        n = rng.randint(1, 4)
        o = random_order(rng, n, bound=rng.choice((1, 5, 50)), extra_rows=rng.randint(0, 2))
        pts = sorted({tuple(rng.randint(-50, 50) for _ in range(n)) for _ in range(rng.randint(1, 20))},
                     key=o.key)
        phi = separating_character(o, pts)
        vals = [phi(p) for p in pts]
        assert all(a < b for a, b in zip(vals, vals[1:]))


def test_bi_invariance(rng):
    for _ in range(10000):
        o = MatrixOrder([[3, -1, 2], [0, 1, 0], [0, 0, 1]])
        x, y, z = (tuple(rng.randint(-9, 9) for _ in range(3)) for _ in range(3))
        xz = tuple(a + b for a, b in zip(x, z))
        yz = tuple(a + b for a, b in zip(y, z))
        assert compare(o, xz, yz) == compare(o, x, y)


def test_leading_term_of_product(rng):
    for _ in range(200):
        o = random_order(rng, 2)
        f, g = rand_nonzero(rng, 2, QQ), rand_nonzero(rng, 2, QQ)
        (ef, cf), (eg, cg) = leading_term(o, f), leading_term(o, g)
        assert leading_term(o, f * g) == (tuple(a + b for a, b in zip(ef, eg)), cf * cg)


def test_extend_order_examples():
    assert extend_order([[2]], MatrixOrder([[1]])) == MatrixOrder([[1]])
    assert extend_order([[2]], MatrixOrder([[-1]])) == MatrixOrder([[-1]])


def test_extend_then_restrict(rng):
    L = [[1, 1], [0, 2]]  # a + b even
    oL = MatrixOrder([[1, 0], [0, 1]])
    o = extend_order(L, oL)
    back = restrict_order(o, L)
    for _ in range(100):
        x, y = (tuple(rng.randint(-20, 20) for _ in range(2)) for _ in range(2))
        assert compare(back, x, y) == compare(oL, x, y)
    # total on Z^2
    assert compare(o, (1, 0), (0, 0)) != EQUAL


def test_convex_flag():
    assert convex_flag(MatrixOrder([[1, 0], [0, 1]])) == [[[1, 0], [0, 1]], [[0, 1]], []]
    flag = convex_flag(MatrixOrder([[1, 2], [0, 1]]))
    assert len(flag) == 3 and len(flag[1]) == 1
    assert convex_flag(MatrixOrder([[1]])) == [[[1]], []]


def test_convex_flag_skips_repeated_rows():
    flag = convex_flag(MatrixOrder([[1, 0, 0], [2, 0, 0], [0, 1, 0], [0, 0, 1]]))
    assert [len(b) for b in flag] == [3, 2, 1, 0]


def test_dictionary_order():
    std = MatrixOrder([[1]])
    lex = dictionary_order([[[1, 0]], [[0, 1]]], [std, std])
    assert lex == MatrixOrder([[1, 0], [0, 1]])
    colex = dictionary_order([[[0, 1]], [[1, 0]]], [std, std])
    assert compare(lex, (1, 0), (0, 1)) == GREATER
    assert compare(colex, (1, 0), (0, 1)) == LESS
    full = dictionary_order([[[1, 0, 0], [0, 1, 0]], [[0, 0, 1]]],
                            [MatrixOrder([[1, 0], [0, 1]]), std])
    assert full == MatrixOrder([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def test_order_json_round_trip():
    o = MatrixOrder([[1, 2], [0, -1]])
    assert MatrixOrder.from_json(o.to_json()) == o
    c = Character((3, -4))
    assert Character.from_json(c.to_json()) == c
