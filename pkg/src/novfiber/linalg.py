"""Exact matrix routines shared by the fraction-field and growth code.

Polynomial matrices are lists of rows of :class:`LaurentPoly`; the
fraction-free (Bareiss) recurrences only ever divide exactly.
"""

from __future__ import annotations

from .laurent import LaurentPoly


def _exact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if b.is_monomial():
        return a * b.unit_inverse()
    q = a.divide_exact(b)
    if q is None:
        raise ArithmeticError("Bareiss step did not divide exactly")
    return q


def poly_rank(M, rank, field) -> int:
    """Rank of a Laurent-polynomial matrix over the fraction field."""
    A = [list(row) for row in M]
    if not A or not A[0]:
        return 0
    nr, nc = len(A), len(A[0])
    prev = LaurentPoly.constant(1, rank, field)
    r = 0
    for c in range(nc):
        p = next((i for i in range(r, nr) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        for i in range(r + 1, nr):
            a = A[i][c]
            for j in range(c + 1, nc):
                A[i][j] = _exact(A[i][j] * piv - a * A[r][j], prev)
            A[i][c] = LaurentPoly.zero(rank, field)
        prev = piv
        r += 1
        if r == nr:
            break
    return r


def poly_det(M, rank, field) -> LaurentPoly:
    n = len(M)
    if n == 0:
        return LaurentPoly.constant(1, rank, field)
    A = [list(row) for row in M]
    prev = LaurentPoly.constant(1, rank, field)
    sign = 1
    for k in range(n - 1):
        if not A[k][k]:
            p = next((i for i in range(k + 1, n) if A[i][k]), None)
            if p is None:
                return LaurentPoly.zero(rank, field)
            A[k], A[p] = A[p], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = _exact(A[i][j] * A[k][k] - A[i][k] * A[k][j], prev)
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return d if sign == 1 else -d


def poly_adjugate(M, rank, field):
    """Adjugate, so that ``M * adj(M) = det(M) * I``."""
    n = len(M)
    if n == 1:
        return [[LaurentPoly.constant(1, rank, field)]]
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(M) if k != i]
            d = poly_det(minor, rank, field)
            adj[j][i] = d if (i + j) % 2 == 0 else -d
    return adj


def mat_mul(A, B, zero):
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    out = []
    for row in A:
        new = []
        for j in range(ncols):
            acc = zero
            for k in range(inner):
                if row[k] and B[k][j]:
                    acc = acc + row[k] * B[k][j]
            new.append(acc)
        out.append(new)
    return out


def sparse_rank(rows, F) -> int:
    """Rank over the field ``F`` of a matrix given as sparse row dicts.

    Rows are reduced one at a time against stored pivot rows keyed by
    their leading column.
    """
    pivots = {}
    rank = 0
    for src in rows:
        r = {c: v for c, v in src.items() if v}
        while r:
            c = min(r)
            prow = pivots.get(c)
            if prow is None:
                inv = F.inv(r[c])
                pivots[c] = {k: F.mul(v, inv) for k, v in r.items()}
                rank += 1
                break
            f = r[c]
            for k, v in prow.items():
                x = F.sub(r.get(k, F.zero), F.mul(f, v))
                if x:
                    r[k] = x
                else:
                    r.pop(k, None)
    return rank
