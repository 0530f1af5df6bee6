"""Integer lattice helpers: column echelon form, kernels, completions, cosets.

Matrices are lists of integer rows.  Sublattices of Z^n are given by a
basis written as row vectors.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


def _xgcd(a, b):
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def column_echelon(A, n):
    """Return ``(E, U, r)`` with ``A U = E`` and ``U`` unimodular.

    ``E`` has its nonzero columns first (``r`` of them, the rank) in
    echelon shape; the last ``n - r`` columns of ``U`` are a basis of the
    integer kernel of ``A`` acting on column vectors.
    """
    E = [list(map(int, row)) for row in A]
    U = identity(n)
    piv = 0
    for i in range(len(E)):
        if piv == n:
            break
        row = E[i]
        for c in range(piv + 1, n):
            b = row[c]
            if b == 0:
                continue
            a = row[piv]
            if a == 0:
                for M in (E, U):
                    for r in M:
                        r[piv], r[c] = r[c], r[piv]
                continue
            x, y, g = _xgcd(a, b)
            ag, bg = a // g, b // g
            # columns (piv, c) <- (x*piv + y*c, -bg*piv + ag*c)
            for M in (E, U):
                for r in M:
                    u, v = r[piv], r[c]
                    r[piv] = x * u + y * v
                    r[c] = -bg * u + ag * v
        if row[piv] != 0:
            if row[piv] < 0:
                for M in (E, U):
                    for r in M:
                        r[piv] = -r[piv]
            piv += 1
    return E, U, piv


def kernel_basis(A, n):
    """Integer basis (rows) of ``{x in Z^n : A x = 0}``; always saturated."""
    _, U, r = column_echelon(A, n)
    return [[U[i][j] for i in range(n)] for j in range(r, n)]


def rank(A, n):
    return column_echelon(A, n)[2]


def det(A):
    """Integer determinant via fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(map(int, row)) for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rational_inverse(A):
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            raise ValueError("singular matrix")
        M[c], M[p] = M[p], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def integer_inverse(A):
    inv = rational_inverse(A)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


def is_saturated(C, n):
    """True when the rows of ``C`` span a primitive sublattice of Z^n."""
    if not C:
        return True
    E, _, r = column_echelon(C, n)
    if r < len(C):
        return False
    return abs(det([row[:r] for row in E])) == 1


def unimodular_completion(C, n):
    """Rows ``E`` such that ``E`` stacked over ``C`` is unimodular.

    Raises ValueError when ``C`` does not span a saturated sublattice.
    """
    if not C:
        return identity(n)
    E, U, r = column_echelon(C, n)
    if r < len(C) or abs(det([row[:r] for row in E])) != 1:
        raise ValueError("sublattice is not saturated; no unimodular completion")
    Vinv = integer_inverse(U)
    return [Vinv[i] for i in range(r, n)]


def hermite_rows(B):
    """Upper-triangular basis with positive diagonal for a full-rank lattice."""
    n = len(B)
    if n == 0:
        return []
    if len(B) != len(B[0]):
        raise ValueError("expected a square basis")
    Bt = transpose(B)
    E, _, r = column_echelon(Bt, n)
    if r < n:
        raise ValueError("sublattice is not of full rank (infinite index)")
    H = transpose([[E[i][j] for j in range(n)] for i in range(n)])
    # E lower triangular after echelon; H = E^T is upper triangular
    for i in range(n):
        if H[i][i] < 0:
            H[i] = [-x for x in H[i]]
        for k in range(i):
            q = H[k][i] // H[i][i]
            if q:
                H[k] = [a - q * b for a, b in zip(H[k], H[i])]
    return H


def solve_row(B, v):
    """Coordinates ``c`` (Fractions) with ``c B = v`` for square invertible ``B``."""
    return [sum(Fraction(x) * y for x, y in zip(v, col)) for col in zip(*rational_inverse(B))]


class FiniteQuotient:
    """The finite group Z^n / L for a full-rank sublattice L.

    Cosets are represented by vectors in the fundamental box of the
    Hermite basis of L; they are listed in lexicographic order, so the
    zero coset comes first.
    """

    def __init__(self, basis):
        self.basis = [list(map(int, row)) for row in basis]
        self.n = len(self.basis)
        self.hnf = hermite_rows(self.basis)
        self.diag = [self.hnf[i][i] for i in range(self.n)]
        self._inv = rational_inverse(self.basis) if self.n else []
        self.reps = [tuple(v) for v in product(*(range(d) for d in self.diag))]
        self.index_of = {v: i for i, v in enumerate(self.reps)}

    @property
    def order(self):
        return len(self.reps)

    def reduce(self, v):
        """Split ``v`` as ``rep + h``; return ``(coset index, h)``."""
        w = list(v)
        for i, row in enumerate(self.hnf):
            q = w[i] // row[i]
            if q:
                w = [a - q * b for a, b in zip(w, row)]
        rep = tuple(w)
        h = tuple(a - b for a, b in zip(v, rep))
        return self.index_of[rep], h

    def coords(self, h):
        """Integer coordinates of ``h`` in L with respect to the given basis."""
        out = []
        for col in zip(*self._inv):
            c = sum(x * y for x, y in zip(h, col))
            if c.denominator != 1:
                raise ValueError(f"{h} is not in the sublattice")
            out.append(int(c))
        return tuple(out)

    def embed(self, c):
        """Ambient vector of the lattice element with coordinates ``c``."""
        return tuple(sum(ci * row[j] for ci, row in zip(c, self.basis)) for j in range(self.n))

    def add(self, i, j):
        return self.reduce([a + b for a, b in zip(self.reps[i], self.reps[j])])[0]

    def contains(self, v):
        return self.reduce(v)[0] == 0
