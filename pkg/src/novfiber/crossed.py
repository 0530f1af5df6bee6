"""Crossed products R*Q over finite groups Q, and the regrouping of
Z^n-graded data along a finite-index sublattice H (so that
F[Z^n] = F[H] * (Z^n/H))."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .laurent import LaurentPoly
from .lattice import FiniteQuotient
from .orders import Character
from .series import NovikovSeries


class CrossedStructure:
    """Structure functions (tau, mu) of a crossed product R*Q, Q finite.

    ``mult`` is the multiplication table of Q on indices ``0..|Q|-1``;
    ``tau[q]`` is a callable automorphism of R and ``mu[q][q2]`` a unit of
    R.  ``probes`` are ring elements (generators of R) on which equality
    of automorphisms is tested.  ``inverse`` inverts units of R.
    """

    def __init__(self, mult, tau, mu, one, probes, inverse=None, labels=None):
        self.mult = [list(r) for r in mult]
        self.order = len(self.mult)
        self.tau = list(tau)
        self.mu = [list(r) for r in mu]
        self.one = one
        self.zero = one - one
        self.probes = list(probes)
        self.inverse = inverse or (lambda u: u.unit_inverse())
        self.labels = labels or [str(q) for q in range(self.order)]
        ids = [e for e in range(self.order) if all(self.mult[e][q] == q for q in range(self.order))]
        if len(ids) != 1:
            raise ValueError("multiplication table has no unique identity")
        self.identity = ids[0]

    def conj(self, u, r):
        return u * r * self.inverse(u)

    def element(self, data):
        return CrossedElement({q: r for q, r in data.items() if r}, self)


@dataclass
class CrossedElement:
    """A finitely supported function Q -> R, read as sum of r_q * q."""

    coeffs: dict
    structure: CrossedStructure = dc_field(repr=False, compare=False)

    def __add__(self, other):
        out = dict(self.coeffs)
        for q, r in other.coeffs.items():
            v = out[q] + r if q in out else r
            if v:
                out[q] = v
            else:
                out.pop(q, None)
        return CrossedElement(out, self.structure)

    def __mul__(self, other):
        return cp_mul(self, other, self.structure)

    def __eq__(self, other):
        return isinstance(other, CrossedElement) and self.coeffs == other.coeffs


def cp_mul(a: CrossedElement, b: CrossedElement, S: CrossedStructure) -> CrossedElement:
    """Bilinear extension of ``(r q)(r' q') = r tau(q)(r') mu(q, q') qq'``."""
    if a.structure is not S or b.structure is not S:
        raise ValueError("elements belong to a different crossed structure")
    out = {}
    for q, r in a.coeffs.items():
        for q2, r2 in b.coeffs.items():
            qq = S.mult[q][q2]
            v = r * S.tau[q](r2) * S.mu[q][q2]
            out[qq] = out[qq] + v if qq in out else v
    return CrossedElement({q: r for q, r in out.items() if r}, S)


def crossed_identity(S: CrossedStructure) -> CrossedElement:
    e = S.identity
    return CrossedElement({e: S.inverse(S.mu[e][e])}, S)


@dataclass
class StructureReport:
    ok: bool
    identity: str | None = None
    witness: tuple | None = None

    def to_json(self):
        return {"ok": self.ok, "identity": self.identity,
                "witness": list(self.witness) if self.witness else None}


def validate_structure(S: CrossedStructure) -> StructureReport:
    """Check the cocycle identities on every pair and triple of Q.

    Identities are tested in order: e:tau, e:mu, mu(1,1) = mu(1,q),
    tau(1) = c(mu(1,1)), and finally the section normalization
    mu(1,1) = 1.  The first failure is returned with its witness.
    """
    Q = range(S.order)
    m = S.mult
    for q in Q:
        for q2 in Q:
            u = S.mu[q][q2]
            for r in S.probes:
                lhs = S.tau[q](S.tau[q2](r))
                rhs = S.conj(u, S.tau[m[q][q2]](r))
                if lhs != rhs:
                    return StructureReport(False, "e:tau", (S.labels[q], S.labels[q2]))
    for q in Q:
        for q2 in Q:
            for q3 in Q:
                lhs = S.mu[q][q2] * S.mu[m[q][q2]][q3]
                rhs = S.tau[q](S.mu[q2][q3]) * S.mu[q][m[q2][q3]]
                if lhs != rhs:
                    return StructureReport(False, "e:mu", (S.labels[q], S.labels[q2], S.labels[q3]))
    e = S.identity
    for q in Q:
        if S.mu[e][e] != S.mu[e][q]:
            return StructureReport(False, "mu(1,1)=mu(1,q)", (S.labels[q],))
    for r in S.probes:
        if S.tau[e](r) != S.conj(S.mu[e][e], r):
            return StructureReport(False, "tau(1)=c(mu(1,1))", (S.labels[e],))
    if S.mu[e][e] != S.one:
        return StructureReport(False, "mu(1,1)=1", (S.labels[e], S.labels[e]))
    return StructureReport(True)


class Sublattice:
    """A finite-index sublattice H of Z^n with a section of Z^n -> Z^n/H.

    Elements of H are written in coordinates for ``basis``.  The default
    section uses the fundamental box of the Hermite basis; a custom one
    lists one representative per coset (in the order of the box reps),
    with the zero coset represented by 0.
    """

    def __init__(self, basis, section=None):
        self.quotient = FiniteQuotient(basis)
        self.basis = self.quotient.basis
        self.n = self.quotient.n
        if section is None:
            self.section = list(self.quotient.reps)
        else:
            section = [tuple(map(int, s)) for s in section]
            if len(section) != self.quotient.order:
                raise ValueError("section needs one representative per coset")
            reorder = [None] * len(section)
            for s in section:
                i, _ = self.quotient.reduce(s)
                if reorder[i] is not None:
                    raise ValueError("two section representatives share a coset")
                reorder[i] = s
            self.section = reorder
        if any(self.section[0]):
            raise ValueError("the zero coset must be represented by 0")

    @property
    def index(self):
        return self.quotient.order

    def split(self, v):
        """Write ``v = section[q] + h``; return ``(q, coords of h)``."""
        q, _ = self.quotient.reduce(v)
        h = tuple(a - b for a, b in zip(v, self.section[q]))
        return q, self.quotient.coords(h)

    def embed(self, c):
        return self.quotient.embed(c)

    def restrict_character(self, phi: Character) -> Character:
        return Character(phi(row) for row in self.basis)

    def to_json(self):
        return {"basis": [list(r) for r in self.basis],
                "section": [list(s) for s in self.section]}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, list):
            return cls(obj)
        return cls(obj["basis"], obj.get("section"))


def lattice_structure(H: Sublattice, field) -> CrossedStructure:
    """Structure functions of F[Z^n] = F[H] * Z^n/H for the chosen section.

    tau is trivial (abelian group) and mu(q, q') is the monomial
    s_q + s_q' - s_{qq'} of H.
    """
    Qd = H.quotient
    n = H.n
    mult = [[Qd.add(i, j) for j in range(Qd.order)] for i in range(Qd.order)]
    mu = []
    for i in range(Qd.order):
        row = []
        for j in range(Qd.order):
            k = mult[i][j]
            v = tuple(a + b - c for a, b, c in zip(H.section[i], H.section[j], H.section[k]))
            row.append(LaurentPoly.monomial(Qd.coords(v), 1, field))
        mu.append(row)
    ident = lambda r: r
    probes = LaurentPoly.variables(n, field) or [LaurentPoly.constant(1, 0, field)]
    return CrossedStructure(mult, [ident] * Qd.order, mu, LaurentPoly.constant(1, n, field),
                            probes, labels=[str(list(s)) for s in H.section])


def regroup(f, H: Sublattice, S: CrossedStructure | None = None):
    """Split ``f`` into H-supported components indexed by Z^n/H.

    A Laurent polynomial gives a :class:`CrossedElement` over
    ``lattice_structure(H)``; a Novikov series gives a dict of component
    series (character restricted to H, windows shifted by the section).
    """
    if isinstance(f, NovikovSeries):
        return _regroup_series(f, H)
    if S is None:
        S = lattice_structure(H, f.field)
    comps = {}
    for e, c in f.terms.items():
        q, h = H.split(e)
        comps.setdefault(q, {})[h] = c
    return CrossedElement({q: LaurentPoly(t, H.n, f.field, _clean=True)
                           for q, t in comps.items()}, S)


def _regroup_series(f: NovikovSeries, H: Sublattice):
    psi = H.restrict_character(f.character)
    out = {}
    for q, s in enumerate(H.section):
        shift = f.character(s)
        out[q] = ({}, shift)
    for e, c in f.terms.items():
        q, h = H.split(e)
        out[q][0][h] = c
    result = {}
    for q, (terms, shift) in out.items():
        result[q] = NovikovSeries(terms, H.n, f.field, psi,
                                  f.min_degree - shift, f.complete_to - shift)
    return result


def unregroup(x, H: Sublattice):
    """Inverse of :func:`regroup` for Laurent data."""
    if isinstance(x, CrossedElement):
        comps = x.coeffs
    else:
        comps = x
    out = {}
    field = None
    for q, r in comps.items():
        field = r.field
        s = H.section[q]
        for h, c in r.terms.items():
            e = tuple(a + b for a, b in zip(H.embed(h), s))
            out[e] = c
    if field is None:
        raise ValueError("cannot infer the ring of an empty element")
    return LaurentPoly(out, H.n, field, _clean=True)


def regular_matrix(f, H: Sublattice):
    """Matrix of multiplication by ``f`` on the free F[H]-module with basis
    the section representatives.  Column j holds ``s_j * f`` expanded in
    that basis, so ``M(t) = [[0, t^2], [1, 0]]`` for H = 2Z.

    Fractions are handled by :func:`novfiber.skewfield.transport_finite_index`.
    """
    from .skewfield import Fraction as Frac, transport_finite_index

    if isinstance(f, Frac):
        return transport_finite_index(f, H)
    m = H.index
    F = f.field
    cells = [[{} for _ in range(m)] for _ in range(m)]
    for j, s in enumerate(H.section):
        for e, c in f.terms.items():
            v = tuple(a + b for a, b in zip(e, s))
            i, h = H.split(v)
            cell = cells[i][j]
            cell[h] = F.add(cell[h], c) if h in cell else c
    return [[LaurentPoly({h: c for h, c in cell.items() if c}, H.n, F, _clean=True)
             for cell in row] for row in cells]


def dihedral_structure(field, corrupt=False) -> CrossedStructure:
    """Infinite dihedral group as F[t^{+-1}] * Z/2 with tau(sigma)(t) = t^{-1}.

    With ``corrupt`` the cocycle value mu(sigma, sigma) is replaced by t,
    which breaks the associativity identity.
    """
    t, = LaurentPoly.variables(1, field)
    one = LaurentPoly.constant(1, 1, field)
    flip = lambda r: r.map_exponents([[-1]], 1)
    mu = [[one, one], [one, t if corrupt else one]]
    return CrossedStructure([[0, 1], [1, 0]], [lambda r: r, flip], mu, one, [t],
                            labels=["1", "sigma"])
