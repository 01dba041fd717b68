"""Exact von Neumann dimensions, L2-Betti numbers and localization tools
for group rings of concrete groups."""

from l2betti.errors import (
    InvalidComplex,
    InvalidResolution,
    NonRealTrace,
    NonSquare,
    NotIdempotent,
    ParseError,
    UnsupportedGroup,
    UnsupportedOracle,
)
from l2betti.scalars import (
    GaussianRational,
    LaurentPoly,
    Rational,
    RationalFunction,
    kernel_basis,
    poly_is_zero,
    rank_exact,
)
from l2betti.values import DimensionValue
from l2betti.groups import (
    CrossedProductData,
    FiniteGroup,
    FreeAbelianGroup,
    FreeGroup,
    ball,
    finite_subgroup_orders,
    parse_group,
)
from l2betti.group_ring import (
    CrossedProductElement,
    GroupRingElement,
    GroupRingMatrix,
    dim_from_idempotent,
    regular_representation,
    trace,
    trace_property_check,
)
from l2betti.dimension import (
    FreeGroupOracle,
    PresentedModule,
    additivity_check,
    dim_fp,
    rank_gamma,
)
from l2betti.homology import (
    BettiReport,
    FreeChainComplex,
    euler,
    l2_betti,
    tor_dims,
    uct_check,
)
from l2betti.localization import (
    CramerWitness,
    OreFraction,
    OreSet,
    cramer_factorize,
    ore_add,
    ore_eq,
    ore_failure_certificate,
    ore_mul,
    rational_closure_linearize,
    sigma_member,
)
from l2betti.atiyah import IntegralityVerdict, atiyah_check, rank_function_report

__version__ = "0.1.0"
