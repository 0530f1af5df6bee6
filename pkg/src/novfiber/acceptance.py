"""Acceptance criteria as runnable checks.

Each ``criterion_*`` function returns a :class:`Result`.  Random inputs
come from ``random.Random`` with fixed seeds, so every run sees the same
instances.  ``quick`` shrinks sample sizes for smoke runs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction as Q

from . import lattice
from .crossed import (CrossedStructure, Sublattice, dihedral_structure, lattice_structure,
                      validate_structure)
from .fox import Presentation, fox_complex
from .growth import QuotientTower, growth_estimate, luck_approx_check, normalized_betti
from .homology import (FreeChainComplex, betti_over_fractions, bns_cone_sample, fibering_check,
                       novikov_homology, vc_rank_check)
from .laurent import LaurentPoly
from .orders import Character, MatrixOrder, random_order, separating_character
from .scalars import GF, QQ
from .series import NovikovSeries, expand_fraction, nov_invert, nov_mul
from .skewfield import (Fraction, LatticeChain, frac_det, invariant_unit_certify,
                        leading_coefficients, transport_finite_index)


@dataclass
class Result:
    number: int
    title: str
    ok: bool
    detail: str


def _poly(rng, rank, field, nterms, lo=-2, hi=2):
    terms = {}
    for _ in range(nterms):
        e = tuple(rng.randint(lo, hi) for _ in range(rank))
        c = rng.randint(-3, 3) if field.p is None else rng.randrange(field.p)
        if c:
            terms[e] = c
    return LaurentPoly(terms, rank, field)


def _nonzero_poly(rng, rank, field, nterms, lo=-2, hi=2):
    while True:
        f = _poly(rng, rank, field, nterms, lo, hi)
        if f:
            return f


# 1 -------------------------------------------------------------------------

def _sublattices_small_index():
    out = []
    for m in range(1, 9):
        out.append([[m]])
    for a in range(1, 5):
        for d in range(1, 5):
            if a * d <= 8:
                for b in range(a):
                    out.append([[a, b], [0, d]])
    out.append([[2, 0, 0], [0, 2, 0], [0, 0, 2]])
    out.append([[2, 1, 0], [0, 2, 0], [0, 0, 2]])
    out.append([[1, 0, 0], [0, 2, 1], [0, 0, 3]])
    return out


def _corrupt(S: CrossedStructure, q, q2, extra):
    mu = [list(r) for r in S.mu]
    mu[q][q2] = mu[q][q2] * extra
    return CrossedStructure(S.mult, S.tau, mu, S.one, S.probes, labels=S.labels)


def criterion_1(quick=False) -> Result:
    fails = []
    checked = 0
    for basis in _sublattices_small_index():
        H = Sublattice(basis)
        for field in (QQ, GF(2)):
            S = lattice_structure(H, field)
            checked += 1
            if not validate_structure(S).ok:
                fails.append(("valid", basis))
            if S.order > 1:
                n = H.n
                t = LaurentPoly.monomial((1,) + (0,) * (n - 1), 1, field)
                # an identity-row entry must equal mu(1,1); scaling it breaks e:mu
                bad = _corrupt(S, S.identity, S.order - 1, t)
                rep = validate_structure(bad)
                if rep.ok or rep.identity != "e:mu" or len(rep.witness) != 3:
                    fails.append(("corrupt", basis))
    D = dihedral_structure(QQ)
    if not validate_structure(D).ok:
        fails.append(("dihedral", None))
    rep = validate_structure(dihedral_structure(QQ, corrupt=True))
    if rep.ok or rep.identity != "e:mu" or not rep.witness:
        fails.append(("dihedral corrupt", None))
    ok = not fails
    detail = (f"{checked} lattice structures and the dihedral fixture valid, corruptions caught "
              f"(dihedral witness {rep.witness})" if ok else f"failures: {fails[:3]}")
    return Result(1, "crossed-product identities", ok, detail)


# 2 -------------------------------------------------------------------------

def _unit_leading(rng, rank, field):
    while True:
        w = [rng.randint(-3, 3) for _ in range(rank)]
        if any(w):
            break
    phi = Character(w)
    m = tuple(rng.randint(-2, 2) for _ in range(rank))
    c = rng.randint(1, 5) if field.p is None else rng.randrange(1, field.p)
    terms = {m: c}
    d0 = phi(m)
    for _ in range(rng.randint(0, 5)):
        e = tuple(rng.randint(-3, 3) for _ in range(rank))
        if phi(e) > d0:
            cc = rng.randint(-4, 4) if field.p is None else rng.randrange(field.p)
            if cc:
                terms[e] = cc
    return NovikovSeries.from_poly(LaurentPoly(terms, rank, field), phi)


def criterion_2(quick=False) -> Result:
    rng = random.Random(2)
    count = 50 if quick else 200
    bad = 0
    total = 0
    for field in (QQ, GF(2), GF(5)):
        for rank in (1, 2):
            for _ in range(count):
                f = _unit_leading(rng, rank, field)
                for T in (3, 8):
                    g = nov_invert(f, T)
                    prod = nov_mul(f, g)
                    one = NovikovSeries.one(rank, field, f.character)
                    total += 1
                    if prod.complete_to < T or not prod.agrees_with(one, T):
                        bad += 1
    return Result(2, "Novikov inversion", bad == 0,
                  f"{total - bad}/{total} products equal 1 through the window")


# 3 -------------------------------------------------------------------------

def criterion_3(quick=False) -> Result:
    rng = random.Random(3)
    count = 100 if quick else 500
    bad = 0
    for _ in range(count):
        n = rng.randint(1, 4)
        o = random_order(rng, n, bound=rng.choice((1, 3, 10, 100)), extra_rows=rng.randint(0, 1))
        pts = {tuple(rng.randint(-6, 6) for _ in range(n)) for _ in range(rng.randint(1, 20))}
        pts = sorted(pts, key=o.key)
        phi = separating_character(o, pts)
        vals = [phi(p) for p in pts]
        if any(a >= b for a, b in zip(vals, vals[1:])):
            bad += 1
    return Result(3, "separating characters", bad == 0,
                  f"{count - bad}/{count} characters strictly order-preserving")


# 4 -------------------------------------------------------------------------

def random_unimodular(rng, n, steps=12):
    U = lattice.identity(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        k = rng.randint(-2, 2)
        U[i] = [a + k * b for a, b in zip(U[i], U[j])]
    return U


def random_chain(rng, n):
    """A random chain Z^n > K_1 > ... > 0 of depth 2 or 3."""
    U = random_unimodular(rng, n)
    depth = min(n, rng.choice((2, 3)))
    cuts = sorted(rng.sample(range(1, n), depth - 1)) if depth > 1 else []
    levels = [lattice.identity(n)] + [U[c:] for c in cuts] + [[]]
    return LatticeChain(levels)


def _shape(p: LaurentPoly):
    """``p`` shifted so that its lexicographically least exponent is 0."""
    m = min(p.terms)
    return p.shift(tuple(-x for x in m))


def leading_oracle(f, chain, level, orders):
    """Leading slabs of ``f`` (K_i-coordinates) over orders on K_i/K_{i+1},
    returned as shapes in K_i-coordinates."""
    k = len(chain.levels[level])
    C = chain.rel[level]
    P = lattice.kernel_basis(C, k) if C else lattice.identity(k)
    out = set()
    for o in orders:
        proj = {x: tuple(sum(a * b for a, b in zip(x, row)) for row in P) for x in f.terms}
        best = min(proj.values(), key=o.key)
        slab = LaurentPoly({x: c for x, c in f.terms.items() if proj[x] == best}, k, f.field)
        out.add(_shape(slab))
    return out


def leading_shapes(f, chain, level):
    C = chain.rel[level]
    k = len(chain.levels[level])
    out = set()
    for g in leading_coefficients(f, chain, level):
        amb = g.map_exponents(C, k) if C else LaurentPoly(
            {(0,) * k: next(iter(g.terms.values()))}, k, g.field)
        out.add(amb)
    return {_shape(p) for p in out}


def criterion_4(quick=False) -> Result:
    rng = random.Random(4)
    count = 60 if quick else 300
    norders = 200 if quick else 500
    bad = []
    for idx in range(count):
        n = rng.choice((2, 3))
        chain = random_chain(rng, n)
        level = rng.randrange(chain.depth)
        k = len(chain.levels[level])
        q = k - len(chain.rel[level])
        field = rng.choice((QQ, GF(2), GF(3)))
        f = _nonzero_poly(rng, k, field, rng.randint(1, 7), -2, 2)
        orders = [random_order(rng, q, bound=100) for _ in range(norders)]
        if leading_shapes(f, chain, level) != leading_oracle(f, chain, level, orders):
            bad.append(idx)
    return Result(4, "leading-coefficient operator", not bad,
                  f"{count - len(bad)}/{count} sets equal to {norders}-order oracle"
                  + (f"; mismatches {bad[:5]}" if bad else ""))


# 5 -------------------------------------------------------------------------

def criterion_5(quick=False) -> Result:
    rng = random.Random(5)
    count = 60 if quick else 200
    bad = 0
    for _ in range(count):
        n = rng.choice((1, 2, 3))
        if n == 1:
            chain = LatticeChain([[[1]], []])
        else:
            chain = random_chain(rng, n)
        field = rng.choice((QQ, GF(2), GF(5)))
        f = _nonzero_poly(rng, n, field, rng.randint(1, 6))
        try:
            invariant_unit_certify(f, chain)
        except ArithmeticError:
            bad += 1
            continue
        o = random_order(rng, n, bound=20)
        # the expansion's character is adapted to o; its inverse must verify on [.., 10]
        e = expand_fraction(LaurentPoly.constant(1, n, field), f, o, 10)
        fs = NovikovSeries.from_poly(f, e.character)
        g = nov_invert(fs, 10)
        prod = nov_mul(fs, g)
        if prod.complete_to < 10 or not prod.agrees_with(NovikovSeries.one(n, field, e.character), 10):
            bad += 1
        elif not g.agrees_with(e):
            bad += 1
    return Result(5, "finite-depth unit certification", bad == 0,
                  f"{count - bad}/{count} certified with windowed inverse verified at T=10")


# 6 -------------------------------------------------------------------------

def _eq_mat(A, B):
    return all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def _mat_mul(A, B):
    n = len(A)
    return [[sum((A[i][k] * B[k][j] for k in range(n)), Fraction(A[0][0].num * 0))
             for j in range(n)] for i in range(n)]


def criterion_6(quick=False) -> Result:
    rng = random.Random(6)
    count = 25 if quick else 100
    lattices = {1: {2: [[2]], 3: [[3]], 4: [[4]]},
                2: {2: [[2, 0], [0, 1]], 3: [[1, 1], [0, 3]], 4: [[2, 1], [0, 2]]}}
    bad = 0
    for idx in range(count):
        rank = 1 if idx % 3 else 2
        m = (2, 3, 4)[idx % 3]
        H = Sublattice(lattices[rank][m])
        field = rng.choice((QQ, GF(3)))
        nt = 3 if rank == 1 else 2

        def frac():
            return Fraction(_nonzero_poly(rng, rank, field, nt, -1, 2),
                            _nonzero_poly(rng, rank, field, nt, -1, 2))

        a, b = frac(), frac()
        Ma, Mb = transport_finite_index(a, H), transport_finite_index(b, H)
        ok = _eq_mat(transport_finite_index(a + b, H),
                     [[x + y for x, y in zip(r, s)] for r, s in zip(Ma, Mb)])
        ok = ok and _eq_mat(transport_finite_index(a * b, H), _mat_mul(Ma, Mb))
        one = transport_finite_index(Fraction(LaurentPoly.constant(1, rank, field)), H)
        ok = ok and all((one[i][j] == (1 if i == j else 0)) for i in range(m) for j in range(m))
        ok = ok and bool(frac_det(Ma)) and bool(frac_det(Mb))
        bad += not ok
    return Result(6, "finite-index transport", bad == 0,
                  f"{count - bad}/{count} pairs additive, multiplicative, unital, invertible")


# 7 -------------------------------------------------------------------------

FIGURE_EIGHT = "<a, b | a b A B a B A b a B>"
TREFOIL = "<a, b | a b a B A B>"


def circle_complex(field=QQ):
    t, = LaurentPoly.variables(1, field)
    return FreeChainComplex([[[t - 1]]], 1, field)


def koszul_complex(field=QQ):
    t, s = LaurentPoly.variables(2, field)
    return FreeChainComplex([[[t - 1, s - 1]], [[s - 1], [-(t - 1)]]], 2, field)


def zero_complex(rank=1, field=QQ):
    return FreeChainComplex([[[LaurentPoly.zero(rank, field)]]], rank, field)


def criterion_7(quick=False) -> Result:
    notes = []
    ok = True
    C = circle_complex()
    for sign in (1, -1):
        if not novikov_homology(C, [sign], 1).vanishes:
            ok = False
            notes.append("circle")
    res = bns_cone_sample(koszul_complex(), 1, max_coeff=3)
    if not all(v.vanishes for v in res.values()):
        ok = False
        notes.append("koszul")
    t, s = LaurentPoly.variables(2)
    res = bns_cone_sample(FreeChainComplex([[[t - 1 - s]]], 2), 1, max_coeff=3)
    nonvan = sorted(r for r, v in res.items() if not v.vanishes)
    if nonvan != [(-1, -1), (0, 1), (1, 0)] or any(
            v.statuses[0].kind != "Nonvanishing" for r, v in res.items() if r in nonvan):
        ok = False
        notes.append(f"t-1-s rays {nonvan}")
    for name, text in (("figure-eight", FIGURE_EIGHT), ("trefoil", TREFOIL)):
        for field in (QQ, GF(2)):
            rep = fibering_check(fox_complex(Presentation.parse(text), field), [1], 1)
            if rep.verdict != "fibered":
                ok = False
                notes.append(f"{name} over {field}")
    free = fox_complex(Presentation(["a", "b"], [], [(1,), (0,)]))
    rep = fibering_check(free, [1], 1)
    st = rep.plus.statuses[1]
    if not (st.kind == "FreeOfRank" and st.rank == 1 and rep.verdict == "not_fibered"):
        ok = False
        notes.append("free group")
    detail = ("circle, Koszul, [t-1-s] rays (1,0),(0,1),(-1,-1), knots fibered, free group FreeOfRank(1)"
              if ok else f"failed: {notes}")
    return Result(7, "fibering verdicts", ok, detail)


# 8 -------------------------------------------------------------------------

def criterion_8(quick=False) -> Result:
    Z, C = zero_complex(), circle_complex()
    family = [("zero", Z), ("circle", C), ("zero+circle", Z.direct_sum(C)),
              ("circle+circle", C.direct_sum(C)), ("zero+zero", Z.direct_sum(Z))]
    bad = []
    for m in (2, 3):
        H = Sublattice([[m]])
        for name, X in family:
            rep = vc_rank_check(X, H, [1], T=12)
            if not rep["equal"]:
                bad.append((name, m, rep["plus"], rep["expected"]))
    return Result(8, "finite-index rank formula", not bad,
                  "all fixtures match [G:H] b_i at T=12" if not bad else f"mismatch {bad}")


# 9 -------------------------------------------------------------------------

def criterion_9(quick=False) -> Result:
    tol = Q(1, 16)
    ok = True
    notes = []
    tower = QuotientTower.diagonal([2, 4, 8, 16], 1)
    rep = luck_approx_check(circle_complex(), tower, tol=tol)
    b0 = rep["degrees"][0]["normalized"]
    if b0 != [Q(1, m) for m in (2, 4, 8, 16)] or not rep["ok"]:
        ok = False
        notes.append(f"circle {b0}")
    rep = luck_approx_check(zero_complex(), tower, tol=tol)
    if any(v != 1 for d in rep["degrees"] for v in d["normalized"]) or not rep["ok"]:
        ok = False
        notes.append("zero differential")
    ms = (2, 4, 8) if quick else (2, 4, 8, 16)
    rep = luck_approx_check(koszul_complex(), QuotientTower.diagonal(ms, 2), tol=tol)
    want = [[Q(c, m * m) for m in ms] for c in (1, 2, 1)]
    got = [d["normalized"] for d in rep["degrees"]]
    if got != want or not rep["ok"]:
        ok = False
        notes.append(f"koszul {got}")
    detail = ("circle 1/m, zero differential 1, Koszul (1,2,1)/m^2; limits within 1/16"
              if ok else f"failed: {notes}")
    return Result(9, "approximation along towers", ok, detail)


# 10 ------------------------------------------------------------------------

def criterion_10(quick=False) -> Result:
    ms = (2, 4, 8) if quick else (2, 4, 8, 16)
    rep = growth_estimate(koszul_complex(GF(2)), QuotientTower.diagonal(ms, 2))
    ok = True
    for d in rep["degrees"]:
        for j, m in enumerate(ms):
            up, lo = d["upper"][j], d["lower"][j]
            if not (lo <= up <= Q(4, m * m) and lo >= 0):
                ok = False
    ok = ok and all(c["equal"] for c in rep["multiplicativity"])
    last = [(d["upper"][-1], d["lower"][-1]) for d in rep["degrees"]]
    return Result(10, "F_2 growth envelopes", ok,
                  f"envelopes at m={ms[-1]}: {[(str(u), str(l)) for u, l in last]}, bounded by 4/m^2")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def run_all(quick=False):
    return [c(quick) for c in CRITERIA]
