"""Bi-invariant total orders on Z^n given by integer weight matrices, and
integral characters that separate finite ordered sets."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from . import lattice
from .laurent import LaurentPoly, ZeroPolynomial


class NotSorted(ValueError):
    """Input points are not strictly increasing under the given order."""


LESS, EQUAL, GREATER = -1, 0, 1


@dataclass(frozen=True)
class Character:
    """A homomorphism Z^n -> Z, given by its integer weight vector."""

    weights: tuple

    def __init__(self, weights):
        object.__setattr__(self, "weights", tuple(int(w) for w in weights))

    @property
    def rank(self):
        return len(self.weights)

    def __call__(self, x):
        return sum(w * a for w, a in zip(self.weights, x))

    def __neg__(self):
        return Character(-w for w in self.weights)

    def is_zero(self):
        return not any(self.weights)

    @classmethod
    def zero(cls, n):
        return cls((0,) * n)

    def to_json(self):
        return {"weights": list(self.weights)}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["weights"])


@dataclass(frozen=True)
class MatrixOrder:
    """x < y iff the first row r with r.x != r.y has r.x < r.y.

    The rows must span Q^n, which makes the comparison total.
    """

    rows: tuple

    def __init__(self, rows, n=None):
        rows = tuple(tuple(int(a) for a in r) for r in rows)
        if n is None:
            if not rows:
                raise ValueError("an order on Z^0 needs an explicit rank")
            n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ValueError("weight rows have inconsistent lengths")
        if lattice.rank([list(r) for r in rows], n) != n:
            raise ValueError("weight rows do not span Q^n; the order would not be total")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_n", n)

    @property
    def rank(self):
        return self._n

    def key(self, x):
        return tuple(sum(a * b for a, b in zip(r, x)) for r in self.rows)

    def reversed(self):
        return MatrixOrder([[-a for a in r] for r in self.rows], self._n)

    @classmethod
    def lex(cls, n):
        return cls(lattice.identity(n), n)

    def to_json(self):
        return {"rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, obj, n=None):
        return cls(obj["rows"], n)


def random_order(rng, n, bound=100, extra_rows=0):
    """A random full-rank weight-matrix order (rows drawn until they span)."""
    while True:
        rows = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n + extra_rows)]
        if lattice.rank(rows, n) == n:
            return MatrixOrder(rows, n)


def compare(o: MatrixOrder, x, y) -> int:
    if len(x) != o.rank or len(y) != o.rank:
        raise ValueError(f"rank mismatch: order on Z^{o.rank}, points {x}, {y}")
    for r in o.rows:
        a = sum(w * v for w, v in zip(r, x))
        b = sum(w * v for w, v in zip(r, y))
        if a != b:
            return LESS if a < b else GREATER
    return EQUAL


def leading_term(o: MatrixOrder, f: LaurentPoly):
    """The order-minimal exponent of ``f`` and its coefficient."""
    if not f.terms:
        raise ZeroPolynomial("leading term of zero")
    if f.rank != o.rank:
        raise ValueError("rank mismatch between order and polynomial")
    e = min(f.terms, key=o.key)
    return e, f.terms[e]


def separating_character(o: MatrixOrder, points) -> Character:
    """An integral character strictly increasing along ``points``.

    ``points`` must be strictly increasing under ``o``.  The first weight
    row is an order-preserving character; points it does not separate
    are handled recursively on the remaining rows, and the result is
    ``N * row + inner`` with the least N >= 1 that keeps every
    consecutive inequality strict.
    """
    pts = [tuple(p) for p in points]
    n = o.rank
    for a, b in zip(pts, pts[1:]):
        if compare(o, a, b) != LESS:
            raise NotSorted(f"{a} is not below {b} in the given order")
    return Character(_separate(o.rows, [pts], n))


def _separate(rows, chains, n):
    chains = [c for c in chains if len(c) > 1]
    if not chains:
        return (0,) * n
    r, rest = rows[0], rows[1:]
    val = lambda x: sum(a * b for a, b in zip(r, x))
    refined = []
    for c in chains:
        run = [c[0]]
        for x in c[1:]:
            if val(x) == val(run[-1]):
                run.append(x)
            else:
                refined.append(run)
                run = [x]
        refined.append(run)
    inner = _separate(rest, refined, n)
    ival = lambda x: sum(a * b for a, b in zip(inner, x))
    N = 1
    for c in chains:
        for a, b in zip(c, c[1:]):
            g = val(b) - val(a)
            if g > 0:
                # need N*g + inner(b) - inner(a) > 0
                spread = ival(a) - ival(b)
                N = max(N, spread // g + 1)
    return tuple(N * a + b for a, b in zip(r, inner))


def _primitive(v):
    g = 0
    for a in v:
        g = gcd(g, a)
    return [a // g for a in v] if g > 1 else list(v)


def extend_order(L_basis, oL: MatrixOrder) -> MatrixOrder:
    """Transfer an order on a finite-index sublattice L to Z^n.

    ``oL`` compares L-coordinates with respect to ``L_basis``.  The
    result compares ``x, y`` by comparing ``m x`` and ``m y`` in L, where
    ``m = [Z^n : L]``.
    """
    B = [list(map(int, r)) for r in L_basis]
    n = len(B)
    d = lattice.det(B)
    if d == 0 or any(len(r) != n for r in B):
        raise ValueError("sublattice does not have finite index")
    m = abs(d)
    Binv = lattice.rational_inverse(B)
    rows = []
    for r in oL.rows:
        row = [m * sum(Binv[j][k] * r[k] for k in range(n)) for j in range(n)]
        rows.append(_primitive([int(x) for x in row]))
    return MatrixOrder(rows, n)


def restrict_order(o: MatrixOrder, L_basis) -> MatrixOrder:
    """The order ``o`` read on coordinates with respect to ``L_basis``."""
    rows = [[sum(b * w for b, w in zip(Bi, r)) for Bi in L_basis] for r in o.rows]
    return MatrixOrder(rows, len(L_basis))


def convex_flag(o: MatrixOrder):
    """The chain of convex subgroups Z^n = C_0 > C_1 > ... > C_k = 0.

    C_i is the common kernel of the first weight rows, as a saturated
    basis; repeated subgroups (dependent rows) are skipped.
    """
    n = o.rank
    flag = [lattice.identity(n)]
    for i in range(1, len(o.rows) + 1):
        K = lattice.kernel_basis([list(r) for r in o.rows[:i]], n)
        if len(K) < len(flag[-1]):
            flag.append(K)
        if not K:
            break
    return flag


def dictionary_order(factor_bases, factor_orders) -> MatrixOrder:
    """Lexicographic order on Z^n = Q_0 + ... + Q_{m-1}, Q_0 most significant.

    ``factor_bases[j]`` lists basis rows of Q_j; together they must form a
    basis of Z^n.  ``factor_orders[j]`` orders the coordinates of Q_j.
    """
    B = [list(map(int, r)) for basis in factor_bases for r in basis]
    n = len(B)
    if any(len(r) != n for r in B) or abs(lattice.det(B)) != 1:
        raise ValueError("factor bases do not form a basis of Z^n")
    Binv = lattice.integer_inverse(B)
    rows = []
    offset = 0
    for basis, order in zip(factor_bases, factor_orders):
        d = len(basis)
        if order.rank != d:
            raise ValueError("factor order rank does not match its factor")
        for r in order.rows:
            rows.append([sum(r[k] * Binv[i][offset + k] for k in range(d)) for i in range(n)])
        offset += d
    return MatrixOrder(rows, n)
