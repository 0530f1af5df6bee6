"""The fraction field of F[Z^n], lattice chains, and the leading-coefficient
operator used to certify units of the inductive rings built from a chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q

from . import lattice
from .laurent import LaurentPoly, ZeroPolynomial, hull_vertices
from .linalg import poly_adjugate, poly_det
from .series import ZeroInput


class DivisionByZero(ZeroDivisionError):
    pass


class NonUnit(ArithmeticError):
    """A fiber that is not a monomial survived to the last level of a chain."""

    def __init__(self, poly, level, path):
        super().__init__(f"{poly!r} at level {level} is not a unit")
        self.poly = poly
        self.level = level
        self.path = path


class Fraction:
    """``num / den`` with Laurent polynomial numerator and denominator.

    The denominator is normalized (no monomial factor, leading
    coefficient one).  In one variable the pair is gcd-reduced; in more
    variables it is kept unreduced apart from exact cancellations, and
    equality is decided by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = LaurentPoly.constant(1, num.rank, num.field)
        if not den:
            raise DivisionByZero("fraction with zero denominator")
        if num.rank != den.rank or num.field != den.field:
            raise ValueError("numerator and denominator live in different rings")
        self.num, self.den = _normalize(num, den)

    @property
    def rank(self):
        return self.num.rank

    @property
    def field(self):
        return self.num.field

    def _lift(self, other):
        if isinstance(other, Fraction):
            return other
        if isinstance(other, LaurentPoly):
            return Fraction(other)
        if isinstance(other, (int, Q)):
            return Fraction(LaurentPoly.constant(other, self.rank, self.field))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return Fraction(self.num + other.num, self.den)
        return Fraction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Fraction(-self.num, self.den)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Fraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("inverse of zero")
        return Fraction(self.den, self.num)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __repr__(self):
        if self.den.is_constant():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, obj):
        return cls(LaurentPoly.from_json(obj["num"]), LaurentPoly.from_json(obj["den"]))


def _normalize(num, den):
    F = num.field
    if not num:
        return num, LaurentPoly.constant(1, den.rank, F)
    if den.rank == 1:
        g = num.gcd1(den)
        if not g.is_constant():
            num, den = num.divide_exact(g), den.divide_exact(g)
    else:
        q = num.divide_exact(den)
        if q is not None:
            return q, LaurentPoly.constant(1, den.rank, F)
        if not den.is_monomial():
            q = den.divide_exact(num)
            if q is not None:
                num, den = LaurentPoly.constant(1, den.rank, F), q
    mono, lead, g = den.content_normalized()
    inv = F.inv(lead)
    num = num.shift(tuple(-x for x in mono)).scale(inv)
    return num, g


class LatticeChain:
    """Z^n = K_0 > K_1 > ... > K_r with each K_{i+1} saturated in K_i.

    Levels are given as bases of row vectors in ambient coordinates.  The
    chain normally ends at 0; a nonzero last level is accepted, in which
    case unit certification may fail.  Optional ``companions`` H_i satisfy
    K_i <= H_i with H_i of finite index in Z^n and H_i / K_i free.
    """

    def __init__(self, levels, companions=None):
        levels = [[list(map(int, r)) for r in basis] for basis in levels]
        if not levels or not levels[0]:
            raise ValueError("a chain starts with a basis of Z^n")
        n = len(levels[0][0])
        if len(levels[0]) != n or abs(lattice.det(levels[0])) != 1:
            raise ValueError("the first level must be a basis of Z^n")
        self.n = n
        self.levels = levels
        # rel[i]: basis of K_{i+1} in K_i-coordinates
        self.rel = []
        for i in range(len(levels) - 1):
            big, small = levels[i], levels[i + 1]
            if len(small) >= len(big) and small:
                raise ValueError(f"level {i + 1} does not drop rank")
            rows = [_coords_in(big, v) for v in small]
            if any(c is None for c in rows):
                raise ValueError(f"level {i + 1} is not contained in level {i}")
            if not lattice.is_saturated(rows, len(big)):
                raise ValueError(f"level {i + 1} is not saturated in level {i}")
            self.rel.append(rows)
        self.companions = None
        if companions is not None:
            if len(companions) != len(levels):
                raise ValueError("need one companion per level")
            comps = [[list(map(int, r)) for r in b] for b in companions]
            for i, (K, H) in enumerate(zip(levels, comps)):
                if len(H) != n or lattice.det(H) == 0:
                    raise ValueError(f"companion {i} does not have finite index")
                kc = [_coords_in(H, v) for v in K]
                if any(c is None for c in kc):
                    raise ValueError(f"level {i} is not inside its companion")
                if not lattice.is_saturated(kc, n):
                    raise ValueError(f"companion {i} modulo level {i} has torsion")
            self.companions = comps

    @property
    def depth(self):
        return len(self.levels) - 1

    def terminal(self):
        return not self.levels[-1]

    def to_json(self):
        out = {"levels": self.levels}
        if self.companions is not None:
            out["companions"] = self.companions
        return out

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, list):
            return cls(obj)
        return cls(obj["levels"], obj.get("companions"))


def _coords_in(basis, v):
    """Integer coordinates of ``v`` in the row basis ``basis``, or None."""
    d = len(basis)
    if d == 0:
        return [] if not any(v) else None
    n = len(basis[0])
    E, U, r = lattice.column_echelon(basis, n)
    if r < d:
        raise ValueError("basis rows are dependent")
    vu = [sum(v[i] * U[i][j] for i in range(n)) for j in range(n)]
    if any(vu[r:]):
        return None
    Ed = [row[:d] for row in E]
    inv = lattice.rational_inverse(Ed)
    c = [sum(Q(vu[i]) * inv[i][j] for i in range(d)) for j in range(d)]
    if any(x.denominator != 1 for x in c):
        return None
    return [int(x) for x in c]


def _split_level(chain: LatticeChain, i):
    """Return ``(k, d, Uinv)``: coordinates ``y = x Uinv`` of K_i put the
    projection to K_i/K_{i+1} first and K_{i+1}-coordinates last."""
    k = len(chain.levels[i])
    C = chain.rel[i]
    d = len(C)
    E = lattice.unimodular_completion(C, k)
    U = E + C
    return k, d, lattice.integer_inverse(U)


def _fibers(f: LaurentPoly, chain: LatticeChain, i):
    k, d, Uinv = _split_level(chain, i)
    if f.rank != k:
        raise ValueError(f"polynomial of rank {f.rank} does not live on level {i} (rank {k})")
    proj = {}
    for x, c in f.terms.items():
        y = [sum(x[a] * Uinv[a][b] for a in range(k)) for b in range(k)]
        p = tuple(y[:k - d])
        proj.setdefault(p, {})[tuple(y[k - d:])] = c
    verts = hull_vertices(proj)
    return {v: LaurentPoly(proj[v], d, f.field, _clean=True) for v in sorted(verts)}


def leading_coefficients(f: LaurentPoly, chain: LatticeChain, level=0):
    """The set of leading coefficients of ``f`` over all orders on
    K_i / K_{i+1}: the fibers of ``f`` above the vertices of its projected
    Newton polytope, written in K_{i+1}-coordinates.
    """
    if not f:
        raise ZeroInput("leading coefficients of zero")
    if level >= chain.depth:
        raise ValueError(f"chain has no level below {level}")
    return set(_fibers(f, chain, level).values())


@dataclass
class Certificate:
    depth: int
    tree: dict

    def to_json(self):
        return {"unit": True, "depth": self.depth, "tree": self.tree}


def invariant_unit_certify(f: LaurentPoly, chain: LatticeChain) -> Certificate:
    """Iterate the leading-coefficient operator down the chain.

    Every node is expanded until it is a monomial; ``depth`` counts the
    levels needed.  Raises :class:`NonUnit` if a non-monomial fiber
    remains on the last level (only possible if the chain does not end at 0).
    """
    if not f:
        raise ZeroInput("zero is not a unit")

    def grow(g, i, path):
        node = {"level": i, "poly": g.to_json()}
        if g.is_monomial():
            node["monomial"] = True
            return node, 0
        if i >= chain.depth:
            raise NonUnit(g, i, path)
        node["monomial"] = False
        children = []
        deepest = 0
        for v, fib in _fibers(g, chain, i).items():
            child, dep = grow(fib, i + 1, path + [list(v)])
            children.append({"vertex": list(v), "fiber": child})
            deepest = max(deepest, dep)
        node["children"] = children
        return node, deepest + 1

    tree, depth = grow(f, 0, [])
    return Certificate(depth, tree)


def transport_finite_index(f, H):
    """Matrix of ``f`` in D_{F H} * (Z^n / H): ``M(num) M(den)^{-1}``.

    Entries are :class:`Fraction` over F[H] in coordinates of H's basis;
    the inverse is the adjugate divided by the determinant.
    """
    from .crossed import regular_matrix

    if isinstance(f, LaurentPoly):
        f = Fraction(f)
    Mn = regular_matrix(f.num, H)
    Md = regular_matrix(f.den, H)
    rank, F = H.n, f.field
    det = poly_det(Md, rank, F)
    if not det:
        raise DivisionByZero("denominator matrix is singular")
    adj = poly_adjugate(Md, rank, F)
    m = len(Mn)
    out = []
    for i in range(m):
        row = []
        for j in range(m):
            acc = LaurentPoly.zero(rank, F)
            for k in range(m):
                if Mn[i][k] and adj[k][j]:
                    acc = acc + Mn[i][k] * adj[k][j]
            row.append(Fraction(acc, det))
        out.append(row)
    return out


def frac_det(M):
    """Determinant of a square matrix of Fractions (Gaussian elimination)."""
    A = [list(r) for r in M]
    n = len(A)
    if n == 0:
        raise ValueError("empty matrix")
    one = A[0][0] - A[0][0] + 1
    d = one
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            return one - one
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        piv = A[c][c]
        d = d * piv
        inv = piv.inverse()
        for r in range(c + 1, n):
            if A[r][c]:
                fct = A[r][c] * inv
                A[r] = [a - fct * b for a, b in zip(A[r], A[c])]
    return d


__all__ = ["Fraction", "LatticeChain", "Certificate", "DivisionByZero", "NonUnit",
           "ZeroInput", "ZeroPolynomial", "leading_coefficients",
           "invariant_unit_certify", "transport_finite_index", "frac_det"]
