"""Sparse Laurent polynomials F[Z^n] with exact coefficients."""

from __future__ import annotations

import re
from fractions import Fraction

from .scalars import QQ, FieldSpec

_NAMES = ("t", "s", "u", "v", "w")
_FACTOR = re.compile(r"\*?([A-Za-z]\w*)(?:\^\(?(-?\d+)\)?)?")
_TERM = re.compile(r"([+-])?(\d+(?:/\d+)?)?((?:\*?[A-Za-z]\w*(?:\^\(?-?\d+\)?)?)*)")


class ZeroPolynomial(ValueError):
    """An operation that needs a nonzero polynomial received zero."""


class LaurentPoly:
    """An element of the group ring F[Z^n].

    ``terms`` maps exponent tuples of length ``rank`` to nonzero field
    elements.  Instances are immutable and hashable.

    >>> t, s = LaurentPoly.variables(2)
    >>> (1 + t) * (1 - t)
    1 - t^2
    """

    __slots__ = ("rank", "field", "terms", "_hash")

    def __init__(self, terms=None, rank=None, field: FieldSpec = QQ, *, _clean=False):
        if terms is None:
            terms = {}
        if rank is None:
            if not terms:
                raise ValueError("rank must be given for the zero polynomial")
            rank = len(next(iter(terms)))
        self.rank = rank
        self.field = field
        if _clean:
            self.terms = terms
        else:
            clean = {}
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != rank:
                    raise ValueError(f"exponent {e} has wrong length for rank {rank}")
                c = field(c)
                if c:
                    clean[e] = field.add(clean[e], c) if e in clean else c
            self.terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def zero(cls, rank, field=QQ):
        return cls({}, rank, field, _clean=True)

    @classmethod
    def constant(cls, c, rank, field=QQ):
        return cls({(0,) * rank: c}, rank, field)

    @classmethod
    def monomial(cls, exp, c=1, field=QQ):
        exp = tuple(exp)
        return cls({exp: c}, len(exp), field)

    @classmethod
    def variables(cls, rank, field=QQ):
        out = []
        for i in range(rank):
            e = [0] * rank
            e[i] = 1
            out.append(cls.monomial(e, 1, field))
        return out

    def _new(self, terms):
        return LaurentPoly(terms, self.rank, self.field, _clean=True)

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.rank != self.rank or other.field != self.field:
                raise ValueError(
                    f"ring mismatch: rank {self.rank} over {self.field} vs "
                    f"rank {other.rank} over {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other, self.rank, self.field)
        return NotImplemented

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                v = F.add(out[e], c)
                if v:
                    out[e] = v
                else:
                    del out[e]
            else:
                out[e] = c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return self._new({e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = F.mul(c1, c2)
                out[e] = F.add(out[e], c) if e in out else c
        return self._new({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.unit_inverse() ** (-k)
        result = LaurentPoly.constant(1, self.rank, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c):
        F = self.field
        c = F(c)
        if not c:
            return LaurentPoly.zero(self.rank, F)
        return self._new({e: F.mul(v, c) for e, v in self.terms.items()})

    def shift(self, exp):
        """Multiply by the monomial with exponent ``exp``."""
        return self._new({tuple(a + b for a, b in zip(e, exp)): c for e, c in self.terms.items()})

    def unit_inverse(self):
        """Inverse of a unit; the units of F[Z^n] are exactly the monomials."""
        if not self.is_monomial():
            raise ValueError(f"{self!r} is not a unit of the Laurent ring")
        (e, c), = self.terms.items()
        return self._new({tuple(-x for x in e): self.field.inv(c)})

    # predicates and access --------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_monomial(self):
        return len(self.terms) == 1

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and (0,) * self.rank in self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other, self.rank, self.field)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.rank == other.rank and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, self.field, frozenset(self.terms.items())))
        return self._hash

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), self.field.zero)

    def support(self):
        return sorted(self.terms)

    def items(self):
        """Terms in canonical (lexicographic exponent) order."""
        return sorted(self.terms.items())

    def degree_range(self, weights):
        vals = [sum(w * x for w, x in zip(weights, e)) for e in self.terms]
        if not vals:
            raise ZeroPolynomial("degree of the zero polynomial")
        return min(vals), max(vals)

    def map_exponents(self, M, rank=None):
        """Apply the linear map ``e -> e M`` (``M`` has ``self.rank`` rows)."""
        if rank is None:
            rank = len(M[0]) if M else 0
        out = {}
        F = self.field
        for e, c in self.terms.items():
            f = tuple(sum(e[i] * M[i][j] for i in range(self.rank)) for j in range(rank))
            out[f] = F.add(out[f], c) if f in out else c
        return LaurentPoly({f: c for f, c in out.items() if c}, rank, F, _clean=True)

    def augmentation(self):
        """Sum of the coefficients: the image under Z^n -> 1."""
        F = self.field
        total = F.zero
        for c in self.terms.values():
            total = F.add(total, c)
        return total

    def content_normalized(self):
        """Return ``(mono, scalar, g)`` with ``self = scalar * x^mono * g``.

        ``g`` has minimal exponent 0 in every coordinate and its
        lexicographically first coefficient equals one.
        """
        if not self.terms:
            raise ZeroPolynomial("normalizing zero")
        mono = tuple(min(e[i] for e in self.terms) for i in range(self.rank))
        lead = self.terms[min(self.terms)]
        inv = self.field.inv(lead)
        g = self._new({tuple(a - b for a, b in zip(e, mono)): self.field.mul(c, inv)
                       for e, c in self.terms.items()})
        return mono, lead, g

    # exact division -----------------------------------------------------
    def divide_exact(self, g: "LaurentPoly"):
        """Return ``q`` with ``q * g == self`` or ``None`` if no such ``q``.

        Cancels lexicographically largest terms; a quotient monomial that
        leaves the coordinate box forced by the supports proves failure.
        """
        g = self._coerce(g)
        if not g.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return LaurentPoly.zero(self.rank, self.field)
        n = self.rank
        lo = [min(e[i] for e in self.terms) - min(e[i] for e in g.terms) for i in range(n)]
        hi = [max(e[i] for e in self.terms) - max(e[i] for e in g.terms) for i in range(n)]
        if any(a > b for a, b in zip(lo, hi)):
            return None
        F = self.field
        lg = max(g.terms)
        inv_lc = F.inv(g.terms[lg])
        rem = dict(self.terms)
        quot = {}
        while rem:
            le = max(rem)
            m = tuple(a - b for a, b in zip(le, lg))
            if any(x < a or x > b for x, a, b in zip(m, lo, hi)):
                return None
            c = F.mul(rem[le], inv_lc)
            quot[m] = c
            for e, gc in g.terms.items():
                f = tuple(a + b for a, b in zip(e, m))
                v = F.sub(rem.get(f, F.zero), F.mul(c, gc))
                if v:
                    rem[f] = v
                else:
                    rem.pop(f, None)
        return self._new(quot)

    def gcd1(self, other: "LaurentPoly") -> "LaurentPoly":
        """Monic polynomial gcd in F[t^{+-1}] (rank 1 only), up to units."""
        if self.rank != 1:
            raise ValueError("gcd1 needs rank 1")
        a = _to_dense(self)
        b = _to_dense(other)
        F = self.field
        while b:
            a, b = b, _dense_mod(a, b, F)
        if not a:
            return LaurentPoly.zero(1, F)
        inv = F.inv(a[-1])
        return LaurentPoly({(i,): F.mul(c, inv) for i, c in enumerate(a)}, 1, F)

    # display and serialization -----------------------------------------
    def _var_names(self):
        if self.rank <= len(_NAMES):
            return _NAMES[:self.rank]
        return tuple(f"x{i}" for i in range(self.rank))

    def __repr__(self):
        if not self.terms:
            return "0"
        names = self._var_names()
        pieces = []
        for e, c in self.items():
            mono = "*".join(
                n if x == 1 else f"{n}^{x}" for n, x in zip(names, e) if x != 0)
            if self.field.p is not None:
                coeff = str(c)
                neg = False
            else:
                neg = c < 0
                coeff = str(abs(c))
            if mono:
                body = mono if coeff == "1" else f"{coeff}*{mono}"
            else:
                body = coeff
            pieces.append(("-" if neg else "+", body))
        sign, body = pieces[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> dict:
        F = self.field
        return {
            "rank": self.rank,
            "field": str(F),
            "terms": [dict(exp=list(e), **F.to_json(c)) for e, c in self.items()],
        }

    @classmethod
    def parse(cls, text: str, rank: int, field: FieldSpec = QQ):
        """Parse text such as ``"t - 1 - s"`` or ``"1/2*t^-2*s + 3"``.

        Variables are named t, s, u, v, w (or x0, x1, ... beyond rank 5).
        """
        names = _NAMES[:rank] if rank <= len(_NAMES) else tuple(f"x{i}" for i in range(rank))
        index = {n: i for i, n in enumerate(names)}
        src = text.replace(" ", "")
        if not src:
            raise ValueError("empty polynomial text")
        out = {}
        pos = 0
        while pos < len(src):
            m = _TERM.match(src, pos)
            if not m or m.end() == pos or (pos > 0 and not m.group(1)):
                raise ValueError(f"cannot parse polynomial at column {pos + 1}: {text!r}")
            sign, coeff, mono = m.group(1), m.group(2), m.group(3)
            if not coeff and not mono:
                raise ValueError(f"empty term at column {pos + 1}: {text!r}")
            c = field(Fraction(coeff) if coeff else 1)
            if sign == "-":
                c = field.neg(c)
            e = [0] * rank
            for fm in _FACTOR.finditer(mono or ""):
                name, power = fm.group(1), fm.group(2)
                if name not in index:
                    raise ValueError(f"unknown variable {name!r} in {text!r}")
                e[index[name]] += int(power) if power else 1
            e = tuple(e)
            out[e] = field.add(out[e], c) if e in out else c
            pos = m.end()
        return cls(out, rank, field)

    @classmethod
    def from_json(cls, obj, rank=None, field=None):
        """Parse ``{"rank", "field", "terms"}``, a bare term list, or text."""
        if isinstance(obj, str):
            if rank is None:
                raise ValueError("rank needed to parse polynomial text")
            return cls.parse(obj, rank, field or QQ)
        if isinstance(obj, list):
            terms = obj
        else:
            terms = obj["terms"]
            rank = obj.get("rank", rank)
            if "field" in obj and field is None:
                field = FieldSpec.parse(obj["field"])
        field = field or QQ
        if rank is None:
            if not terms:
                raise ValueError("rank missing for empty term list")
            rank = len(terms[0]["exp"])
        out = {}
        for t in terms:
            e = tuple(int(x) for x in t["exp"])
            if len(e) != rank:
                raise ValueError(f"exponent {list(e)} does not have length {rank}")
            c = field.from_json(t)
            out[e] = field.add(out[e], c) if e in out else c
        return cls(out, rank, field)


def _to_dense(f):
    if not f.terms:
        return []
    lo = min(e[0] for e in f.terms)
    hi = max(e[0] for e in f.terms)
    out = [f.field.zero] * (hi - lo + 1)
    for (e,), c in f.terms.items():
        out[e - lo] = c
    return out


def _dense_mod(a, b, F):
    a = list(a)
    inv = F.inv(b[-1])
    while len(a) >= len(b):
        c = F.mul(a[-1], inv)
        off = len(a) - len(b)
        if c:
            for i, bc in enumerate(b):
                a[off + i] = F.sub(a[off + i], F.mul(c, bc))
        a.pop()
        while a and not a[-1]:
            a.pop()
    while a and not a[-1]:
        a.pop()
    return a


# Newton polytopes ------------------------------------------------------

def _in_convex_hull(p, pts):
    """Exact test whether ``p`` is a convex combination of ``pts``.

    Phase-one simplex with Bland's rule over Fractions.
    """
    if not pts:
        return False
    n = len(p)
    k = len(pts)
    rows = []
    for i in range(n):
        rows.append([Fraction(q[i]) for q in pts] + [Fraction(p[i])])
    rows.append([Fraction(1)] * k + [Fraction(1)])
    for r in rows:
        if r[-1] < 0:
            for j in range(len(r)):
                r[j] = -r[j]
    m = len(rows)
    # tableau columns: k structural, m artificial, rhs
    T = [r[:k] + [Fraction(int(i == j)) for j in range(m)] + [r[-1]] for i, r in enumerate(rows)]
    basis = [k + i for i in range(m)]
    ncol = k + m
    # objective: minimize sum of artificials -> reduced costs
    obj = [Fraction(0)] * (ncol + 1)
    for r in T:
        for j in range(ncol + 1):
            obj[j] -= r[j]
    for j in range(k, ncol):
        obj[j] = Fraction(0)
    while True:
        enter = next((j for j in range(ncol) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            break
        i = best[1]
        piv = T[i][enter]
        T[i] = [x / piv for x in T[i]]
        for r in range(m):
            if r != i and T[r][enter] != 0:
                f = T[r][enter]
                T[r] = [x - f * y for x, y in zip(T[r], T[i])]
        f = obj[enter]
        obj = [x - f * y for x, y in zip(obj, T[i])]
        basis[i] = enter
    return obj[-1] == 0


def hull_vertices(points):
    """Vertices of the convex hull of a finite set of integer points."""
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 2:
        return set(pts)
    out = set()
    for i, p in enumerate(pts):
        others = pts[:i] + pts[i + 1:]
        if not _in_convex_hull(p, others):
            out.add(p)
    return out


def newton_vertices(f: LaurentPoly):
    """Vertex set of the Newton polytope of a nonzero Laurent polynomial."""
    if not f.terms:
        raise ZeroPolynomial("the zero polynomial has no Newton polytope")
    return hull_vertices(f.terms)
