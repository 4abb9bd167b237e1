"""Grid-to-triangular-domain mapping strategies: packed indexing, the
g(lambda) block mapping with fast reciprocal-square-root evaluation, and a
CPU dispatch engine with an Euclidean-distance-matrix workload."""

from ._trigrid import (
    __version__,
    bb_map,
    count_wasted,
    coverage_ok,
    edm_reference,
    edm_strategy,
    enumerate_lower,
    fast_inv_sqrt,
    gen_points,
    grid_side_balanced,
    improvement_model,
    isqrt,
    ltm_map,
    rb_map,
    rb_rect,
    rec_decompose,
    rsqrt_single,
    sqrt_via,
    tri_count,
    tri_linear_index,
    utm_map,
)

__all__ = [
    "__version__",
    "bb_map",
    "count_wasted",
    "coverage_ok",
    "edm_reference",
    "edm_strategy",
    "enumerate_lower",
    "fast_inv_sqrt",
    "gen_points",
    "grid_side_balanced",
    "improvement_model",
    "isqrt",
    "ltm_map",
    "rb_map",
    "rb_rect",
    "rec_decompose",
    "rsqrt_single",
    "sqrt_via",
    "tri_count",
    "tri_linear_index",
    "utm_map",
]
