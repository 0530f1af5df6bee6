"""Exact Novikov-ring and skew-field homology toolkit for lattice groups.

The building blocks are Laurent polynomials over Q or F_p, weight-matrix
orders on Z^n, truncated Novikov series, crossed products over finite
lattice quotients and fraction fields of Laurent rings.  On top of these
sit chain-complex computations: Betti numbers over the fraction field,
Novikov homology, fibering verdicts and homology growth in lattice towers.
"""

from .scalars import FieldSpec, QQ, GF
from .laurent import LaurentPoly, ZeroPolynomial, newton_vertices
from .orders import (
    Character,
    MatrixOrder,
    NotSorted,
    compare,
    convex_flag,
    dictionary_order,
    extend_order,
    leading_term,
    restrict_order,
    separating_character,
)
from .series import (
    CharacterMismatch,
    NonUnitLeading,
    NovikovSeries,
    ZeroInput,
    expand_fraction,
    leading_slab,
    nov_add,
    nov_invert,
    nov_mul,
)
from .crossed import (
    CrossedElement,
    CrossedStructure,
    Sublattice,
    cp_mul,
    lattice_structure,
    regroup,
    regular_matrix,
    unregroup,
    validate_structure,
)
from .skewfield import (
    Fraction,
    LatticeChain,
    invariant_unit_certify,
    leading_coefficients,
    transport_finite_index,
)
from .homology import (
    FiberVerdict,
    FreeChainComplex,
    betti_over_fractions,
    bns_cone_sample,
    fibering_check,
    novikov_homology,
    smith_normal_form,
    vc_rank_check,
)
from .growth import (
    QuotientTower,
    growth_estimate,
    luck_approx_check,
    normalized_betti,
    specialize,
)
from .fox import Presentation, fox_complex

__version__ = "0.1.0"
