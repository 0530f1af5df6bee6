"""Group presentations and the chain complex of the presentation 2-complex,
obtained by Fox calculus and pushed through a map to Z^n."""

from __future__ import annotations

import re

from . import lattice
from .homology import FreeChainComplex
from .laurent import LaurentPoly
from .scalars import QQ


class InconsistentAbelianization(ValueError):
    pass


class PresentationError(ValueError):
    pass


class Presentation:
    """Generators, relator words and a map ``alpha`` from generators to Z^n.

    Words are lists of ``(generator index, +1 | -1)``.  Without an explicit
    ``alpha`` the free part of the abelianization is used.
    """

    def __init__(self, generators, relators, alpha=None):
        self.generators = list(generators)
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("repeated generator name")
        self.relators = [list(w) for w in relators]
        if alpha is None:
            alpha = self.free_abelianization()
        self.alpha = [tuple(int(x) for x in a) for a in alpha]
        if len(self.alpha) != len(self.generators):
            raise PresentationError("alpha needs one image per generator")
        self.n = len(self.alpha[0]) if self.alpha else 0
        for j, w in enumerate(self.relators):
            img = [0] * self.n
            for g, s in w:
                img = [a + s * b for a, b in zip(img, self.alpha[g])]
            if any(img):
                raise InconsistentAbelianization(
                    f"relator {j + 1} maps to {img}, not 0")

    def exponent_sums(self):
        out = []
        for w in self.relators:
            row = [0] * len(self.generators)
            for g, s in w:
                row[g] += s
            out.append(row)
        return out

    def free_abelianization(self):
        g = len(self.generators)
        R = self.exponent_sums()
        K = lattice.kernel_basis(R, g) if R else lattice.identity(g)
        # alpha(x_i) is the i-th coordinate of every kernel vector
        return [tuple(v[i] for v in K) for i in range(g)]

    def word_text(self, w):
        return " ".join(self.generators[g] if s > 0 else _inverse_name(self.generators[g]) for g, s in w)

    def to_text(self):
        rels = ", ".join(self.word_text(w) for w in self.relators)
        lines = [f"<{', '.join(self.generators)} | {rels}>"]
        for name, a in zip(self.generators, self.alpha):
            lines.append(f"{name} -> {','.join(str(x) for x in a)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "Presentation":
        """Parse ``<a, b | a b A B, ...>`` with optional ``a -> 1,0`` lines.

        Uppercase letters denote inverses.  When every generator is a
        single letter, words may also be written without spaces.
        """
        lines = text.splitlines()
        start = next((i for i, l in enumerate(lines) if l.strip() and not l.strip().startswith("#")), None)
        if start is None:
            raise PresentationError("line 1: empty presentation")
        body = []
        end_line = None
        for i in range(start, len(lines)):
            body.append(lines[i])
            if ">" in lines[i].split("#")[0]:
                end_line = i
                break
        if end_line is None:
            raise PresentationError(f"line {start + 1}: missing closing '>'")
        src = " ".join(l.split("#")[0] for l in body).strip()
        m = re.fullmatch(r"<([^|>]*)(?:\|([^>]*))?>", src)
        if not m:
            raise PresentationError(f"line {start + 1}: expected '<generators | relators>'")
        gens = [g.strip() for g in m.group(1).split(",") if g.strip()]
        for g in gens:
            if not re.fullmatch(r"[a-z]\w*", g):
                raise PresentationError(f"line {start + 1}: bad generator name {g!r}")
        index = {g: i for i, g in enumerate(gens)}
        inv_index = {_inverse_name(g): i for i, g in enumerate(gens)}
        single = all(len(g) == 1 for g in gens)
        relators = []
        rel_src = (m.group(2) or "").strip()
        for part in (p.strip() for p in rel_src.split(",")) if rel_src else []:
            if not part:
                continue
            word = []
            for tok in part.split():
                pieces = list(tok) if single and tok not in index and tok not in inv_index else [tok]
                for p in pieces:
                    if p in index:
                        word.append((index[p], 1))
                    elif p in inv_index:
                        word.append((inv_index[p], -1))
                    elif p == "1":
                        continue
                    else:
                        raise PresentationError(f"line {start + 1}: unknown letter {p!r} in relator {part!r}")
            relators.append(word)
        alpha = {}
        for i in range(end_line + 1, len(lines)):
            line = lines[i].split("#")[0].strip()
            if not line:
                continue
            am = re.fullmatch(r"(\w+)\s*->\s*(-?\d+(?:\s*,\s*-?\d+)*)", line)
            if not am:
                raise PresentationError(f"line {i + 1}: expected 'gen -> a,b,...'")
            name = am.group(1)
            if name not in index:
                raise PresentationError(f"line {i + 1}: unknown generator {name!r}")
            alpha[name] = tuple(int(x) for x in am.group(2).split(","))
        if alpha:
            if set(alpha) != set(gens):
                raise PresentationError("alpha must be given for every generator or none")
            dims = {len(v) for v in alpha.values()}
            if len(dims) != 1:
                raise PresentationError("alpha images have different lengths")
            return cls(gens, relators, [alpha[g] for g in gens])
        return cls(gens, relators)


def _inverse_name(g):
    return g[0].upper() + g[1:]


def fox_derivatives(word, alpha, n, field=QQ):
    """``alpha(d word / d x_i)`` for every generator ``i``."""
    g = len(alpha)
    acc = [dict() for _ in range(g)]
    prefix = (0,) * n
    for i, s in word:
        if s > 0:
            d = acc[i]
            d[prefix] = d.get(prefix, 0) + 1
            prefix = tuple(a + b for a, b in zip(prefix, alpha[i]))
        else:
            prefix = tuple(a - b for a, b in zip(prefix, alpha[i]))
            d = acc[i]
            d[prefix] = d.get(prefix, 0) - 1
    return [LaurentPoly(d, n, field) for d in acc]


def fox_complex(P: Presentation, field=QQ) -> FreeChainComplex:
    """``C_2 -> C_1 -> C_0`` with ``A_1 = [alpha(x_i) - 1]`` (a row) and
    ``A_2[i][j] = alpha(d r_j / d x_i)``."""
    n = P.n
    g = len(P.generators)
    one = LaurentPoly.constant(1, n, field)
    A1 = [[LaurentPoly.monomial(a, 1, field) - one if n else LaurentPoly.zero(0, field)
           for a in P.alpha]]
    mats = [A1]
    ranks = [1, g]
    if P.relators:
        cols = [fox_derivatives(w, P.alpha, n, field) for w in P.relators]
        mats.append([[cols[j][i] for j in range(len(cols))] for i in range(g)])
        ranks.append(len(P.relators))
    return FreeChainComplex(mats, n, field, ranks)
