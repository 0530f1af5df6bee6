"""Specialization of complexes to finite abelian covers, normalized Betti
numbers along lattice towers, and growth envelopes.

Everything here is relative to the sampled tower of lattice quotients;
no claim is made about covers outside it.
"""

from __future__ import annotations

import csv
import io
from fractions import Fraction

from . import lattice
from .crossed import Sublattice
from .homology import FreeChainComplex, betti_over_fractions, restrict_complex
from .linalg import sparse_rank


class QuotientTower:
    """Nested full-rank sublattices L_1 >= L_2 >= ... with growing index."""

    def __init__(self, bases):
        self.levels = [Sublattice(b) for b in bases]
        if not self.levels:
            raise ValueError("a tower needs at least one level")
        n = self.levels[0].n
        prev = None
        for j, L in enumerate(self.levels):
            if L.n != n:
                raise ValueError(f"level {j} lives in a different rank")
            if prev is not None:
                if L.index <= prev.index:
                    raise ValueError(f"index does not grow at level {j}")
                if any(not prev.quotient.contains(v) for v in L.basis):
                    raise ValueError(f"level {j} is not contained in level {j - 1}")
            prev = L
        self.n = n

    @property
    def indices(self):
        return [L.index for L in self.levels]

    @classmethod
    def diagonal(cls, ms, n):
        return cls([[[m if i == j else 0 for j in range(n)] for i in range(n)] for m in ms])

    @classmethod
    def from_json(cls, obj, n):
        if isinstance(obj, dict):
            if "diagonal" in obj:
                return cls.diagonal([int(m) for m in obj["diagonal"]], n)
            obj = obj["levels"]
        return cls(obj)

    def to_json(self):
        return {"levels": [L.basis for L in self.levels]}


class ScalarComplex:
    """A complex of finite-dimensional F-vector spaces with sparse differentials.

    ``mats[k-1]`` holds ``A_k`` as a list of row dicts ``{col: value}``.
    """

    def __init__(self, mats, ranks, field):
        self.mats = mats
        self.ranks = ranks
        self.field = field

    def dense(self, k):
        rows = self.mats[k - 1]
        w = self.ranks[k]
        return [[r.get(j, self.field.zero) for j in range(w)] for r in rows]

    def betti(self):
        F = self.field
        rk = [0] + [sparse_rank(_smaller_side(A, self.ranks[k + 1]), F)
                    for k, A in enumerate(self.mats)] + [0]
        return [self.ranks[k] - rk[k] - rk[k + 1] for k in range(len(self.ranks))]


def _smaller_side(rows, ncols):
    if len(rows) <= ncols:
        return rows
    cols = [{} for _ in range(ncols)]
    for i, r in enumerate(rows):
        for j, v in r.items():
            cols[j][i] = v
    return cols


def specialize(C: FreeChainComplex, L) -> ScalarComplex:
    """Push ``C`` to the cover with deck group Z^n / L (every element of L
    acts trivially), giving ranks ``m * n_k`` over F."""
    if not isinstance(L, Sublattice):
        L = Sublattice(L)
    F = C.field
    m = L.index
    Qd = L.quotient
    sec = L.section
    mats = []
    for k in range(1, C.length + 1):
        A = C.matrix(k)
        rows = [dict() for _ in range(m * C.n_(k - 1))]
        for i, row in enumerate(A):
            for j, x in enumerate(row):
                for e, c in x.terms.items():
                    for b, s in enumerate(sec):
                        a, _ = Qd.reduce([u + v for u, v in zip(e, s)])
                        r = rows[i * m + a]
                        col = j * m + b
                        v = F.add(r[col], c) if col in r else c
                        if v:
                            r[col] = v
                        else:
                            del r[col]
        mats.append(rows)
    return ScalarComplex(mats, [m * r for r in C.ranks], F)


def normalized_betti(C: FreeChainComplex, L, F=None):
    """``b_k(cover) / [Z^n : L]`` as exact Fractions."""
    if F is not None and F != C.field:
        C = change_field(C, F)
    S = specialize(C, L)
    m = Sublattice(L).index if not isinstance(L, Sublattice) else L.index
    return [Fraction(b, m) for b in S.betti()]


def change_field(C: FreeChainComplex, F) -> FreeChainComplex:
    """Reduce (or lift) coefficients into ``F``; rational inputs need
    denominators prime to the characteristic."""
    from .laurent import LaurentPoly

    def conv(x):
        return LaurentPoly({e: F(c) for e, c in x.terms.items()}, C.rank, F)

    mats = [[[conv(x) for x in row] for row in A] for A in C.mats]
    return FreeChainComplex(mats, C.rank, F, C.ranks)


def luck_approx_check(C: FreeChainComplex, tower: QuotientTower, F=None, tol=None):
    """Normalized Betti numbers along the tower versus the fraction-field value.

    Checks that every term is at least the fraction-field Betti number and
    that the last level is within ``tol`` (default ``1/m_last``) of it.
    """
    if F is not None and F != C.field:
        C = change_field(C, F)
    target = betti_over_fractions(C)
    m_last = tower.indices[-1]
    tol = Fraction(1, m_last) if tol is None else Fraction(tol)
    seq = [normalized_betti(C, L) for L in tower.levels]
    per_degree = []
    ok = True
    for k, b in enumerate(target):
        vals = [s[k] for s in seq]
        above = all(v >= b for v in vals)
        close = abs(vals[-1] - b) <= tol
        mono = all(x >= y for x, y in zip(vals, vals[1:]))
        ok = ok and above and close
        per_degree.append({"degree": k, "fraction_betti": b, "normalized": vals,
                           "monotone": mono, "above_limit": above, "within_tol": close})
    return {"indices": tower.indices, "tolerance": tol, "degrees": per_degree, "ok": ok}


def _envelopes(vals):
    upper = [max(vals[j:]) for j in range(len(vals))]
    lower = [min(vals[j:]) for j in range(len(vals))]
    return upper, lower


def growth_estimate(C: FreeChainComplex, tower: QuotientTower, F=None, check_multiplicativity=True,
                    max_check_index=64):
    """Tower-relative upper and lower envelopes of ``b_k / m`` per degree.

    ``upper[j]`` (``lower[j]``) is the max (min) over levels ``>= j``.
    For consecutive levels L > L' the Betti numbers of the L'-cover are
    recomputed from C restricted to F[L] and compared exactly.
    """
    if F is not None and F != C.field:
        C = change_field(C, F)
    bettis = []
    for L in tower.levels:
        bettis.append(specialize(C, L).betti())
    norm = [[Fraction(b, L.index) for b in bs] for bs, L in zip(bettis, tower.levels)]
    degrees = []
    for k in range(len(C.ranks)):
        vals = [row[k] for row in norm]
        upper, lower = _envelopes(vals)
        degrees.append({"degree": k, "normalized": vals, "upper": upper, "lower": lower,
                        "gap": upper[0] != lower[0]})
    checks = []
    if check_multiplicativity:
        for j in range(len(tower.levels) - 1):
            L, L2 = tower.levels[j], tower.levels[j + 1]
            if L2.index > max_check_index:
                continue
            R = restrict_complex(C, L)
            inner = [[int(x) for x in lattice.solve_row(L.basis, v)] for v in L2.basis]
            b2 = specialize(R, Sublattice(inner)).betti()
            checks.append({"from": L.index, "to": L2.index, "equal": b2 == bettis[j + 1]})
    return {"indices": tower.indices, "field": str(C.field), "bettis": bettis,
            "degrees": degrees, "multiplicativity": checks}


def growth_csv(report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m", "degree", "b", "b/m"])
    for j, m in enumerate(report["indices"]):
        for k, b in enumerate(report["bettis"][j]):
            w.writerow([m, k, b, str(Fraction(b, m))])
    return buf.getvalue()
