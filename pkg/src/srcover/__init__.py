"""Covering codes in the sum-rank metric: exact volumes, bounds, and searches.

The metric lives on block vectors over an extension field; each block is an
m-by-eta matrix over the base field and the weight of a vector is the sum of
its block ranks.  One block recovers the rank metric, all-scalar blocks the
Hamming metric, and everything in between interpolates the two.

The package answers one question at several levels of effort: how small can a
code be whose radius-rho balls cover the whole space?  geometry gives exact
sphere, ball, and intersection volumes; bounds turns those into certified
lower and upper estimates; oracle settles tiny instances outright by
branch-and-bound search; cli wraps the lot in reproducible tables.
"""

from .bounds import (
    BoundReport,
    BoundValue,
    compile_report,
    iterative_bound_at,
    iterative_lower,
    minimum_three_lower,
    msrd_extension_upper,
    product_partition_upper,
    relation_bounds,
    simplified_sphere_covering_lower,
    singleton_max_distance,
    sphere_covering_lower,
    systematic_upper,
)
from .errors import BudgetExceededError, PrecisionError
from .geometry import (
    Composition,
    WeightDistribution,
    ball_volume,
    canonical_center,
    count_bounded_compositions,
    enumerate_bounded_compositions,
    intersection_volume,
    sphere_volume,
)
from .gf import ExtensionField, FiniteField, build_field, get_field
from .kernels import backend_name
from .oracle import (
    BlockVector,
    ExplicitCode,
    SearchBudget,
    brute_ball_volume,
    brute_intersection_volume,
    brute_sphere_volume,
    covering_exists,
    covering_radius,
    distance,
    dump_code,
    exhaustive_min_covering,
    greedy_min_covering,
    is_msrd,
    linear_min_covering,
    load_code,
    min_distance,
    rank_over_base,
    sum_rank_weight,
)
from .params import CodeParams
from .qanalog import (
    RealInterval,
    gamma_q_interval,
    gaussian_binomial,
    num_matrices_of_rank,
    pow_fraction_interval,
)
from .space import DEFAULT_ENUM_CAP

__version__ = "0.1.0"

__all__ = [
    "BlockVector",
    "BoundReport",
    "BoundValue",
    "BudgetExceededError",
    "CodeParams",
    "Composition",
    "DEFAULT_ENUM_CAP",
    "ExplicitCode",
    "ExtensionField",
    "FiniteField",
    "PrecisionError",
    "RealInterval",
    "SearchBudget",
    "WeightDistribution",
    "backend_name",
    "ball_volume",
    "brute_ball_volume",
    "brute_intersection_volume",
    "brute_sphere_volume",
    "build_field",
    "canonical_center",
    "compile_report",
    "count_bounded_compositions",
    "covering_exists",
    "covering_radius",
    "distance",
    "dump_code",
    "enumerate_bounded_compositions",
    "exhaustive_min_covering",
    "gamma_q_interval",
    "gaussian_binomial",
    "get_field",
    "greedy_min_covering",
    "intersection_volume",
    "is_msrd",
    "iterative_bound_at",
    "iterative_lower",
    "linear_min_covering",
    "load_code",
    "min_distance",
    "minimum_three_lower",
    "msrd_extension_upper",
    "num_matrices_of_rank",
    "pow_fraction_interval",
    "product_partition_upper",
    "rank_over_base",
    "relation_bounds",
    "simplified_sphere_covering_lower",
    "singleton_max_distance",
    "sphere_covering_lower",
    "sphere_volume",
    "sum_rank_weight",
    "systematic_upper",
]
