"""Preferential-attachment growth with incremental strong-tie tracking.

Grows a scale-free graph one node at a time, maintains the subgraph of
edges whose neighbourhood overlap exceeds a threshold, and records how the
number of well-connected nodes and the largest strong component evolve.
"""

__version__ = "0.1.0"

from .errors import (
    ConfigError,
    InvariantError,
    NodeNotFoundError,
    NotAnEdgeError,
    OracleMismatchError,
)
from .graph_core import EvolvingGraph, make_rng
from .metrics import (
    SeriesSummary,
    SnapshotRecord,
    ccdf_loglog_slope,
    count_at_least_k,
    largest_component,
    moving_average,
    summarize_series,
)
from .sim_runner import (
    RunConfig,
    RunResult,
    default_k_for_epsilon,
    derive_trial_seed,
    mean_series,
    run_single,
    run_sweep,
)
from .svg_chart import emit_svg
from .tie_strength import (
    DEFAULT_POLICY,
    OverlapPolicy,
    StrongGraph,
    common_neighbor_count,
    overlap,
    rebuild_strong,
)

__all__ = [
    "ConfigError",
    "DEFAULT_POLICY",
    "EvolvingGraph",
    "InvariantError",
    "NodeNotFoundError",
    "NotAnEdgeError",
    "OracleMismatchError",
    "OverlapPolicy",
    "RunConfig",
    "RunResult",
    "SeriesSummary",
    "SnapshotRecord",
    "StrongGraph",
    "ccdf_loglog_slope",
    "common_neighbor_count",
    "count_at_least_k",
    "default_k_for_epsilon",
    "derive_trial_seed",
    "emit_svg",
    "largest_component",
    "make_rng",
    "mean_series",
    "moving_average",
    "overlap",
    "rebuild_strong",
    "run_single",
    "run_sweep",
    "summarize_series",
    "__version__",
]
