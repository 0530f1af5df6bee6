"""Finite free chain complexes over F[Z^n]: Betti numbers over the fraction
field, Smith normal forms, and Novikov homology with fibering verdicts.

Differentials are stored homologically: ``A_k`` is an ``n_{k-1} x n_k``
matrix, and a chain is a column vector, so ``A_{k-1} A_k = 0``.
"""

from __future__ import annotations

import itertools
import math
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from math import gcd

from .laurent import LaurentPoly
from .linalg import poly_rank
from .orders import Character
from .scalars import FieldSpec, QQ
from .series import NovikovSeries, leading_slab, nov_add, nov_invert, nov_mul
from .skewfield import Fraction

LADDER = (8, 16, 32)


class NoUnitPivot(ArithmeticError):
    def __init__(self, T):
        super().__init__(f"no unit pivot visible in window T={T}")
        self.T = T


class FreeChainComplex:
    """Free F[Z^n]-complex ``C_N -> ... -> C_0`` given by its differentials."""

    def __init__(self, differentials, rank, field: FieldSpec = QQ, ranks=None):
        self.rank = rank
        self.field = field
        mats = [[list(row) for row in A] for A in differentials]
        if ranks is None:
            if not mats:
                raise ValueError("ranks are required for a complex without differentials")
            ranks = [len(mats[0])]
            for A in mats:
                if not A or not A[0]:
                    raise ValueError("ranks are required when a differential is empty")
                ranks.append(len(A[0]))
        self.ranks = [int(r) for r in ranks]
        if len(self.ranks) != len(mats) + 1:
            raise ValueError("need one rank per degree 0..N")
        zero = LaurentPoly.zero(rank, field)
        for k, A in enumerate(mats, start=1):
            if len(A) != self.ranks[k - 1] or any(len(r) != self.ranks[k] for r in A):
                raise ValueError(f"differential {k} has the wrong shape")
            for row in A:
                for j, x in enumerate(row):
                    if not isinstance(x, LaurentPoly):
                        x = LaurentPoly.constant(x, rank, field)
                        row[j] = x
                    if x.rank != rank or x.field != field:
                        raise ValueError(f"differential {k} has an entry from another ring")
        self.mats = mats
        for k in range(1, len(mats)):
            A, B = mats[k - 1], mats[k]
            for i in range(len(A)):
                for j in range(self.ranks[k + 1]):
                    acc = zero
                    for m in range(self.ranks[k]):
                        if A[i][m] and B[m][j]:
                            acc = acc + A[i][m] * B[m][j]
                    if acc:
                        raise ValueError(f"d_{k} d_{k + 1} is nonzero at ({i}, {j})")

    @property
    def length(self):
        return len(self.mats)

    def n_(self, k):
        return self.ranks[k] if 0 <= k < len(self.ranks) else 0

    def matrix(self, k):
        """``A_k``, with zero-size matrices outside degrees 1..N."""
        if 1 <= k <= len(self.mats):
            return self.mats[k - 1]
        return [[] for _ in range(self.n_(k - 1))]

    def direct_sum(self, other: "FreeChainComplex") -> "FreeChainComplex":
        if other.rank != self.rank or other.field != self.field:
            raise ValueError("complexes over different rings")
        N = max(self.length, other.length)
        zero = LaurentPoly.zero(self.rank, self.field)
        mats = []
        for k in range(1, N + 1):
            A, B = self.matrix(k), other.matrix(k)
            a1, b1 = self.n_(k), other.n_(k)
            rows = [list(r) + [zero] * b1 for r in A]
            rows += [[zero] * a1 + list(r) for r in B]
            mats.append(rows)
        ranks = [self.n_(k) + other.n_(k) for k in range(N + 1)]
        return FreeChainComplex(mats, self.rank, self.field, ranks)

    def to_json(self):
        return {
            "rank": self.rank,
            "field": str(self.field),
            "ranks": self.ranks,
            "differentials": [[[x.to_json()["terms"] for x in row] for row in A] for A in self.mats],
        }

    @classmethod
    def from_json(cls, obj):
        rank = int(obj["rank"])
        field = FieldSpec.parse(obj.get("field", "Q"))
        mats = []
        for k, A in enumerate(obj.get("differentials", []), start=1):
            try:
                mats.append([[LaurentPoly.from_json(x, rank, field) for x in row] for row in A])
            except (ValueError, KeyError, TypeError) as exc:
                raise ValueError(f"differential {k}: {exc}") from exc
        return cls(mats, rank, field, obj.get("ranks"))


def betti_over_fractions(C: FreeChainComplex):
    """``b_k = n_k - rank A_k - rank A_{k+1}`` over Frac(F[Z^n])."""
    rk = [0] + [poly_rank(C.matrix(k), C.rank, C.field) for k in range(1, C.length + 1)] + [0]
    return [C.ranks[k] - rk[k] - rk[k + 1] for k in range(C.length + 1)]


# Smith normal form ---------------------------------------------------------

@dataclass
class SmithForm:
    P: list
    D: list
    Q: list
    rank: int


def _identity(n, one, zero):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def smith_normal_form(M, rank=None, field=None, psi=None, T=16) -> SmithForm:
    """``P M Q = D`` with ``D`` carrying ``rank`` leading ones.

    Entries are taken in the fraction field, or in the Novikov ring of
    ``psi`` when given; there only pivots with a monomial leading slab
    are used and :class:`NoUnitPivot` is raised if a visible nonzero block
    remains.  Novikov factors are exact up to their recorded windows.
    """
    nr = len(M)
    nc = len(M[0]) if nr else 0
    if nr and nc:
        sample = M[0][0]
        rank = sample.rank if rank is None else rank
        field = sample.field if field is None else field
    if rank is None or field is None:
        raise ValueError("ring unknown for an empty matrix; pass rank and field")
    if psi is None:
        conv = lambda x: Fraction(x) if isinstance(x, LaurentPoly) else x
        zero = Fraction(LaurentPoly.zero(rank, field))
        one = Fraction(LaurentPoly.constant(1, rank, field))
        is_pivot = lambda x: bool(x)
        inv = lambda x: x.inverse()
        key = lambda x: 0
    else:
        psi = psi if isinstance(psi, Character) else Character(psi)
        conv = lambda x: NovikovSeries.from_poly(x, psi) if isinstance(x, LaurentPoly) else x
        zero = NovikovSeries.from_poly(LaurentPoly.zero(rank, field), psi)
        one = NovikovSeries.one(rank, field, psi)
        is_pivot = lambda x: bool(x.terms) and leading_slab(x).is_monomial()
        inv = lambda x: nov_invert(x, T)
        key = lambda x: x.valuation_bound()
    D = [[conv(x) for x in row] for row in M]
    P = _identity(nr, one, zero)
    Q = _identity(nc, one, zero)
    r = 0
    while r < min(nr, nc):
        cands = [(key(D[i][j]), i, j) for i in range(r, nr) for j in range(r, nc) if is_pivot(D[i][j])]
        if not cands:
            if psi is not None and any(D[i][j].terms for i in range(r, nr) for j in range(r, nc)):
                raise NoUnitPivot(T)
            break
        _, i, j = min(cands)
        D[r], D[i] = D[i], D[r]
        P[r], P[i] = P[i], P[r]
        for row in D:
            row[r], row[j] = row[j], row[r]
        for row in Q:
            row[r], row[j] = row[j], row[r]
        a = inv(D[r][r])
        D[r] = [a * x for x in D[r]]
        P[r] = [a * x for x in P[r]]
        for i2 in range(nr):
            if i2 != r and _nonzero(D[i2][r]):
                f = D[i2][r]
                D[i2] = [x - f * y for x, y in zip(D[i2], D[r])]
                P[i2] = [x - f * y for x, y in zip(P[i2], P[r])]
        for j2 in range(nc):
            if j2 != r and _nonzero(D[r][j2]):
                f = D[r][j2]
                for row in D:
                    row[j2] = row[j2] - row[r] * f
                for row in Q:
                    row[j2] = row[j2] - row[r] * f
        r += 1
    return SmithForm(P, D, Q, r)


def _nonzero(x):
    return bool(x.terms) if isinstance(x, NovikovSeries) else bool(x)


# Novikov homology --------------------------------------------------------

@dataclass
class DegreeStatus:
    degree: int
    kind: str
    rank: int | None = None
    window: float | None = None
    witness: dict | None = None
    reason: str | None = None
    T: int | None = None

    def to_json(self):
        out = {"degree": self.degree, "status": self.kind}
        if self.rank is not None:
            out["rank"] = self.rank
        if self.kind == "FreeOfRank":
            out["window"] = "inf" if self.window == math.inf else self.window
        if self.witness is not None:
            out["witness"] = self.witness
        if self.reason is not None:
            out["reason"] = self.reason
        if self.T is not None:
            out["T"] = self.T
        return out


@dataclass
class FiberVerdict:
    psi: Character
    n: int
    statuses: list = dc_field(default_factory=list)
    T: int | None = None

    @property
    def vanishes(self):
        return all(s.kind == "VanishesExactly" for s in self.statuses)

    @property
    def inconclusive(self):
        return any(s.kind == "Inconclusive" for s in self.statuses)

    @property
    def obstructed(self):
        return any(s.kind == "Nonvanishing" or (s.kind == "FreeOfRank" and s.rank)
                   for s in self.statuses)

    def ranks(self):
        """Free ranks per degree where known (0 for vanishing), else None."""
        out = []
        for s in self.statuses:
            out.append(0 if s.kind == "VanishesExactly" else s.rank if s.kind == "FreeOfRank" else None)
        return out

    def to_json(self):
        return {"psi": list(self.psi.weights), "n": self.n, "T": self.T,
                "degrees": [s.to_json() for s in self.statuses]}


def _series_matrix(A, psi):
    return [[NovikovSeries.from_poly(x, psi) for x in row] for row in A]


def _eliminate(mats, dims, psi, T):
    """Unit-pivot elimination on ``mats[1..K]``; returns pivot counts per k."""
    K = len(mats) - 1
    count = [0] * (K + 2)
    while True:
        best = None
        for k in range(1, K + 1):
            for i, row in enumerate(mats[k]):
                for j, x in enumerate(row):
                    if not x.terms:
                        continue
                    d = x.valuation_bound()
                    if best is not None and d > best[0]:
                        continue
                    if leading_slab(x).is_monomial():
                        cand = (d, k, i, j)
                        if best is None or cand < best:
                            best = cand
        if best is None:
            return count
        _, k, i, j = best
        A = mats[k]
        a_inv = nov_invert(A[i][j], T)
        col = [A[r][j] for r in range(len(A))]
        prow = A[i]
        new = []
        for r in range(len(A)):
            if r == i:
                continue
            c = col[r]
            if c.terms:
                f = nov_mul(c, a_inv)
                new.append([nov_add(A[r][s], -nov_mul(f, prow[s])) if prow[s].terms else A[r][s]
                            for s in range(len(prow)) if s != j])
            else:
                new.append([A[r][s] for s in range(len(prow)) if s != j])
        mats[k] = new
        if k + 1 <= K:
            mats[k + 1] = [row for r, row in enumerate(mats[k + 1]) if r != j]
        if k - 1 >= 1:
            mats[k - 1] = [[x for s, x in enumerate(row) if s != i] for row in mats[k - 1]]
        dims[k] -= 1
        dims[k - 1] -= 1
        count[k] += 1


def _series_det(M):
    """Leibniz determinant with window bookkeeping (small matrices only)."""
    n = len(M)
    acc = None
    for perm in itertools.permutations(range(n)):
        sign = 1
        for a in range(n):
            for b in range(a + 1, n):
                if perm[a] > perm[b]:
                    sign = -sign
        term = None
        for r, c in enumerate(perm):
            term = M[r][c] if term is None else nov_mul(term, M[r][c])
        if sign < 0:
            term = -term
        acc = term if acc is None else nov_add(acc, term)
    return acc


MAX_LEIBNIZ = 6
MAX_MINORS = 200


def _decide(k, r, rho_k, rho_k1, B, T):
    """Status of H_k from reduced size ``r``, exact ranks and ``B = A'_{k+1}``."""
    if r == 0:
        return DegreeStatus(k, "VanishesExactly", reason="eliminated")
    if rho_k == 0 and rho_k1 == 0:
        return DegreeStatus(k, "FreeOfRank", rank=r, window=math.inf)
    b = r - rho_k - rho_k1
    if b > 0:
        return DegreeStatus(k, "Nonvanishing", witness={"kind": "rank", "betti_over_fractions": b})
    if rho_k1 == 0:
        return DegreeStatus(k, "VanishesExactly", reason="injective")
    if rho_k1 == r and r <= MAX_LEIBNIZ:
        ncols = len(B[0]) if B else 0
        combos = itertools.combinations(range(ncols), r)
        blind = False
        for idx, cols in enumerate(combos):
            if idx >= MAX_MINORS:
                blind = True
                break
            det = _series_det([[row[c] for c in cols] for row in B])
            if not det.terms:
                blind = True
                continue
            slab = leading_slab(det)
            if slab.is_monomial():
                return DegreeStatus(k, "VanishesExactly", reason="unit determinant")
            if ncols == r:
                return DegreeStatus(k, "Nonvanishing", witness={
                    "kind": "determinant slab", "degree": det.valuation_bound(),
                    "slab": slab.to_json()["terms"]})
        return DegreeStatus(k, "Inconclusive", T=T)
    return DegreeStatus(k, "Inconclusive", T=T)


def _novikov_once(C, psi, n, T, ranks):
    K = n + 1
    mats = [None] + [_series_matrix(C.matrix(k), psi) for k in range(1, K + 1)]
    dims = [C.n_(k) for k in range(K + 1)]
    count = _eliminate(mats, dims, psi, T)
    rho = [0] + [ranks[k] - count[k] for k in range(1, K + 1)] + [0]
    out = []
    for k in range(n + 1):
        out.append(_decide(k, dims[k], rho[k], rho[k + 1], mats[k + 1], T))
    return out


def novikov_homology(C: FreeChainComplex, psi, n, T=None) -> FiberVerdict:
    """Decide ``H_k(C; F[Z^n]^psi)`` for ``k <= n``.

    Without an explicit ``T`` the window climbs the ladder 8, 16, 32 and
    stops at the first run without an Inconclusive degree.
    """
    psi = psi if isinstance(psi, Character) else Character(psi)
    if psi.is_zero():
        raise ValueError("the character must be nonzero")
    if psi.rank != C.rank:
        raise ValueError("character rank does not match the complex")
    ladder = (T,) if T is not None else LADDER
    ranks = [0] + [poly_rank(C.matrix(k), C.rank, C.field) for k in range(1, n + 2)]
    statuses = []
    for t in ladder:
        statuses = _novikov_once(C, psi, n, t, ranks)
        if not any(s.kind == "Inconclusive" for s in statuses):
            break
    return FiberVerdict(psi, n, statuses, t)


@dataclass
class FiberingReport:
    psi: Character
    n: int
    plus: FiberVerdict
    minus: FiberVerdict

    @property
    def verdict(self):
        if self.plus.vanishes and self.minus.vanishes:
            return "fibered"
        if self.plus.obstructed or self.minus.obstructed:
            return "not_fibered"
        return "inconclusive"

    def to_json(self):
        return {"psi": list(self.psi.weights), "n": self.n, "verdict": self.verdict,
                "plus": self.plus.to_json(), "minus": self.minus.to_json()}


def fibering_check(C: FreeChainComplex, psi, n=1, T=None) -> FiberingReport:
    """Kernel of psi is FP_n over F iff Novikov homology vanishes for both
    psi and -psi in degrees <= n."""
    psi = psi if isinstance(psi, Character) else Character(psi)
    return FiberingReport(psi, n, novikov_homology(C, psi, n, T), novikov_homology(C, -psi, n, T))


def primitive_rays(n, max_coeff):
    out = []
    for v in itertools.product(range(-max_coeff, max_coeff + 1), repeat=n):
        g = 0
        for a in v:
            g = gcd(g, a)
        if g == 1:
            out.append(v)
    return out


def _threads():
    try:
        return max(1, int(os.environ.get("NOVFIBER_THREADS", "1")))
    except ValueError:
        return 1


def bns_cone_sample(C: FreeChainComplex, n=1, rays=None, max_coeff=3, seed=0, samples=None, T=None):
    """Novikov verdicts for ``+ray`` on each ray, keyed by the ray tuple.

    Rays default to all primitive vectors with entries bounded by
    ``max_coeff``; ``samples`` draws that many of them with ``seed``.
    """
    if rays is None:
        rays = primitive_rays(C.rank, max_coeff)
        if samples is not None and samples < len(rays):
            rays = sorted(random.Random(seed).sample(rays, samples))
    rays = [tuple(int(a) for a in r) for r in rays]
    for r in rays:
        g = 0
        for a in r:
            g = gcd(g, a)
        if g != 1:
            raise ValueError(f"ray {list(r)} is not primitive")
    job = lambda r: novikov_homology(C, Character(r), n, T)
    workers = _threads()
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            verdicts = list(ex.map(job, rays))
    else:
        verdicts = [job(r) for r in rays]
    return dict(zip(rays, verdicts))


def restrict_complex(C: FreeChainComplex, H) -> FreeChainComplex:
    """View ``C`` as a complex over F[H]: each generator becomes [Z^n:H] of them."""
    from .crossed import regular_matrix

    m = H.index
    zero = LaurentPoly.zero(H.n, C.field)
    mats = []
    for k in range(1, C.length + 1):
        A = C.matrix(k)
        big = [[zero] * (m * C.n_(k)) for _ in range(m * C.n_(k - 1))]
        for i, row in enumerate(A):
            for j, x in enumerate(row):
                if not x:
                    continue
                blk = regular_matrix(x, H)
                for a in range(m):
                    for b in range(m):
                        big[i * m + a][j * m + b] = blk[a][b]
        mats.append(big)
    return FreeChainComplex(mats, H.n, C.field, [m * r for r in C.ranks])


def vc_rank_check(C: FreeChainComplex, H, psi_H, T=12):
    """Compare Novikov ranks of the restriction to H (both signs of psi_H)
    with [Z^n:H] times the Betti numbers over fractions."""
    psi_H = psi_H if isinstance(psi_H, Character) else Character(psi_H)
    R = restrict_complex(C, H)
    N = C.length
    expected = [H.index * b for b in betti_over_fractions(C)]
    plus = novikov_homology(R, psi_H, N, T)
    minus = novikov_homology(R, -psi_H, N, T)
    return {
        "index": H.index,
        "expected": expected,
        "plus": plus.ranks(),
        "minus": minus.ranks(),
        "equal": plus.ranks() == expected and minus.ranks() == expected,
        "inconclusive": plus.inconclusive or minus.inconclusive,
    }
