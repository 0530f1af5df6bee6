"""Truncated elements of the Novikov ring F[Z^n]^phi.

A :class:`NovikovSeries` stores every term of some (possibly infinite)
series whose phi-degree is at most ``complete_to``.  ``complete_to`` may
be ``math.inf`` for series known exactly (finite Laurent polynomials).
All window bookkeeping is derived from the operands, never assumed.
"""

from __future__ import annotations

import math

from .laurent import LaurentPoly
from .orders import Character, MatrixOrder, separating_character


class CharacterMismatch(ValueError):
    pass


class ZeroInput(ValueError):
    pass


class NonUnitLeading(ArithmeticError):
    """The leading slab is not a monomial, so the series is not invertible."""

    def __init__(self, slab):
        super().__init__(f"leading slab {slab!r} is not a unit")
        self.slab = slab


def _deg(w, e):
    return sum(a * b for a, b in zip(w, e))


def _window_json(x):
    return "inf" if x == math.inf else int(x)


def _window_parse(x):
    return math.inf if x in ("inf", None) else int(x)


class NovikovSeries:
    __slots__ = ("rank", "field", "character", "min_degree", "complete_to", "terms")

    def __init__(self, terms, rank, field, character, min_degree, complete_to):
        if not isinstance(character, Character):
            character = Character(character)
        if character.rank != rank:
            raise ValueError("character rank does not match series rank")
        if min_degree > complete_to:
            raise ValueError("window has min_degree above complete_to")
        w = character.weights
        for e in terms:
            d = _deg(w, e)
            if d < min_degree or d > complete_to:
                raise ValueError(f"term {e} of degree {d} lies outside the window")
        self.rank = rank
        self.field = field
        self.character = character
        self.min_degree = min_degree
        self.complete_to = complete_to
        self.terms = terms

    @classmethod
    def from_poly(cls, f: LaurentPoly, character, complete_to=math.inf):
        """View a Laurent polynomial as a series, truncated above ``complete_to``."""
        if not isinstance(character, Character):
            character = Character(character)
        w = character.weights
        terms = {e: c for e, c in f.terms.items() if _deg(w, e) <= complete_to}
        if f.terms:
            lo = min(_deg(w, e) for e in f.terms)
            lo = min(lo, complete_to)
        else:
            lo = 0 if complete_to == math.inf else min(0, complete_to)
        return cls(terms, f.rank, f.field, character, lo, complete_to)

    @classmethod
    def one(cls, rank, field, character):
        return cls.from_poly(LaurentPoly.constant(1, rank, field), character)

    # inspection ----------------------------------------------------------
    def degree(self, e):
        return _deg(self.character.weights, e)

    def is_exact(self):
        return self.complete_to == math.inf

    def window_zero(self):
        """True when no term is visible inside the window."""
        return not self.terms

    def valuation_bound(self):
        """Exact valuation if a term is visible, else a valid lower bound."""
        if self.terms:
            return min(self.degree(e) for e in self.terms)
        return self.complete_to + 1 if self.complete_to != math.inf else math.inf

    def slab(self, d) -> LaurentPoly:
        return LaurentPoly({e: c for e, c in self.terms.items() if self.degree(e) == d},
                           self.rank, self.field, _clean=True)

    def to_poly(self) -> LaurentPoly:
        return LaurentPoly(dict(self.terms), self.rank, self.field, _clean=True)

    def truncate(self, T):
        T = min(T, self.complete_to)
        terms = {e: c for e, c in self.terms.items() if self.degree(e) <= T}
        return NovikovSeries(terms, self.rank, self.field, self.character,
                             min(self.min_degree, T), T)

    def agrees_with(self, other, upto=None):
        """Equality of all terms of degree <= ``upto`` (default: common window)."""
        if upto is None:
            upto = min(self.complete_to, other.complete_to)
        if upto > self.complete_to or upto > other.complete_to:
            raise ValueError("comparison window exceeds what is known")
        a = {e: c for e, c in self.terms.items() if self.degree(e) <= upto}
        b = {e: c for e, c in other.terms.items() if other.degree(e) <= upto}
        return a == b

    def __repr__(self):
        T = "inf" if self.complete_to == math.inf else self.complete_to
        return f"NovikovSeries({self.to_poly()!r}, phi={list(self.character.weights)}, window=[{self.min_degree}, {T}])"

    def __add__(self, other):
        return nov_add(self, other)

    def __neg__(self):
        F = self.field
        return NovikovSeries({e: F.neg(c) for e, c in self.terms.items()}, self.rank, F,
                             self.character, self.min_degree, self.complete_to)

    def __sub__(self, other):
        return nov_add(self, -other)

    def __mul__(self, other):
        return nov_mul(self, other)

    # serialization --------------------------------------------------------
    def to_json(self):
        F = self.field
        return {
            "rank": self.rank,
            "field": str(F),
            "character": list(self.character.weights),
            "window": {"min_degree": _window_json(self.min_degree),
                       "complete_to": _window_json(self.complete_to)},
            "terms": [dict(exp=list(e), **F.to_json(c)) for e, c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, obj):
        f = LaurentPoly.from_json(obj)
        win = obj["window"]
        return cls(dict(f.terms), f.rank, f.field, Character(obj["character"]),
                   _window_parse(win["min_degree"]), _window_parse(win["complete_to"]))


def _check_pair(a, b):
    if a.character != b.character:
        raise CharacterMismatch(f"{a.character.weights} vs {b.character.weights}")
    if a.rank != b.rank or a.field != b.field:
        raise ValueError("series live in different rings")


def nov_add(a: NovikovSeries, b: NovikovSeries) -> NovikovSeries:
    _check_pair(a, b)
    T = min(a.complete_to, b.complete_to)
    F = a.field
    out = {e: c for e, c in a.terms.items() if a.degree(e) <= T}
    for e, c in b.terms.items():
        if b.degree(e) > T:
            continue
        if e in out:
            v = F.add(out[e], c)
            if v:
                out[e] = v
            else:
                del out[e]
        else:
            out[e] = c
    return NovikovSeries(out, a.rank, F, a.character, min(a.min_degree, b.min_degree), T)


def _sorted_terms(s):
    return sorted(((s.degree(e), e, c) for e, c in s.terms.items()), key=lambda t: t[0])


def _convolve(ta, tb, cutoff, F):
    """Product of degree-sorted term lists, keeping degrees <= cutoff."""
    out = {}
    for da, ea, ca in ta:
        if da + (tb[0][0] if tb else 0) > cutoff:
            break
        for db, eb, cb in tb:
            if da + db > cutoff:
                break
            e = tuple(x + y for x, y in zip(ea, eb))
            c = F.mul(ca, cb)
            if e in out:
                out[e] = F.add(out[e], c)
            else:
                out[e] = c
    return {e: c for e, c in out.items() if c}


def nov_mul(a: NovikovSeries, b: NovikovSeries) -> NovikovSeries:
    _check_pair(a, b)
    va, vb = a.valuation_bound(), b.valuation_bound()
    T = min(a.complete_to + vb, b.complete_to + va)
    lo = a.min_degree + b.min_degree
    if T == math.inf and (va == math.inf or vb == math.inf):
        return NovikovSeries({}, a.rank, a.field, a.character, lo, math.inf)
    terms = _convolve(_sorted_terms(a), _sorted_terms(b), T, a.field)
    return NovikovSeries(terms, a.rank, a.field, a.character, min(lo, T), T)


def leading_slab(f, phi=None) -> LaurentPoly:
    """Terms of minimal phi-degree, in ambient coordinates."""
    if isinstance(f, NovikovSeries):
        if phi is not None and Character(getattr(phi, "weights", phi)) != f.character:
            raise CharacterMismatch("character differs from the series character")
        if not f.terms:
            raise ZeroInput("series has no terms inside its window")
        d = f.valuation_bound()
        return f.slab(d)
    if not isinstance(phi, Character):
        phi = Character(phi)
    if not f.terms:
        raise ZeroInput("leading slab of zero")
    w = phi.weights
    d = min(_deg(w, e) for e in f.terms)
    return LaurentPoly({e: c for e, c in f.terms.items() if _deg(w, e) == d},
                       f.rank, f.field, _clean=True)


def nov_invert(f: NovikovSeries, T) -> NovikovSeries:
    """Inverse of ``f`` such that ``f * result`` equals 1 in every degree <= T.

    The leading monomial is factored out, leaving ``1 - P`` with P of
    positive degree; its inverse is the geometric series in P, of which
    only finitely many powers reach any given degree.
    """
    if isinstance(f, LaurentPoly):
        raise TypeError("wrap Laurent polynomials with NovikovSeries.from_poly")
    slab = leading_slab(f)
    if not slab.is_monomial():
        raise NonUnitLeading(slab)
    F = f.field
    (m, c), = slab.terms.items()
    d0 = f.degree(m)
    cinv = F.inv(c)
    result_T = min(T - d0, f.complete_to - 2 * d0)
    rel_cut = result_T + d0
    w = f.character.weights
    # P = 1 - c^{-1} x^{-m} f, as relative-degree terms
    P = []
    for e, a in f.terms.items():
        if e == m:
            continue
        e2 = tuple(x - y for x, y in zip(e, m))
        d = _deg(w, e2)
        if d <= rel_cut:
            P.append((d, e2, F.neg(F.mul(a, cinv))))
    P.sort(key=lambda t: t[0])
    zero = (0,) * f.rank
    total = {zero: F.one}
    power = [(0, zero, F.one)]
    while power and P:
        nxt = _convolve(power, P, rel_cut, F)
        if not nxt:
            break
        for e, a in nxt.items():
            v = F.add(total[e], a) if e in total else a
            if v:
                total[e] = v
            else:
                total.pop(e, None)
        power = sorted(((_deg(w, e), e, a) for e, a in nxt.items()), key=lambda t: t[0])
    neg_m = tuple(-x for x in m)
    terms = {}
    for e, a in total.items():
        if _deg(w, e) <= rel_cut:
            terms[tuple(x + y for x, y in zip(e, neg_m))] = F.mul(a, cinv)
    lo = min(-d0, result_T)
    return NovikovSeries(terms, f.rank, F, f.character, lo, result_T)


def expand_fraction(x: LaurentPoly, y: LaurentPoly, o: MatrixOrder, T) -> NovikovSeries:
    """Novikov expansion of ``x / y`` along a character adapted to ``o``.

    The character strictly preserves ``o`` on the support of ``y``, so the
    o-leading term of ``y`` is its unique lowest-degree term.  The result
    is complete up to degree ``T``.
    """
    if not y.terms:
        raise ZeroDivisionError("zero denominator")
    pts = sorted(y.terms, key=o.key)
    phi = separating_character(o, pts)
    if phi.is_zero():
        phi = Character(o.rows[0])
    ys = NovikovSeries.from_poly(y, phi)
    if not x.terms:
        return NovikovSeries.from_poly(x, phi)
    vx = min(phi(e) for e in x.terms)
    d0 = min(phi(e) for e in y.terms)
    inv = nov_invert(ys, T - vx + d0)
    return nov_mul(NovikovSeries.from_poly(x, phi), inv).truncate(T)
