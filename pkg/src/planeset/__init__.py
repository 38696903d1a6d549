"""Exact-arithmetic search engine for plane integral point sets."""

from .arith import (
    FactorTable,
    Factorization,
    divisor_pairs,
    divisors,
    factorize,
    is_perfect_square,
    isqrt,
    squarefree_part,
    tau,
)
from .geometry import (
    ARBITRARY,
    GENERAL,
    SEMI_GENERAL,
    DistanceMatrix,
    GeometryError,
    PointSet,
    SurdPoint,
    Triangle,
    characteristic,
    characteristic_of_set,
    circumradius_class,
    distinct_triangle_count,
    embed,
    heron_product,
    integral_distance,
    is_concyclic_quad,
    is_degenerate_triple,
    position_class,
)
from .canonical import (
    CANONICAL,
    NONE,
    SEMI_CANONICAL,
    canonical_form,
    classify,
    classify4_fast,
    compare,
    restrict,
)

__version__ = "0.1.0"
