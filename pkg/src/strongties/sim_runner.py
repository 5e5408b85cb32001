"""Run orchestration: single runs, multi-trial sweeps, seed derivation.

A run seeds a complete graph on m nodes, grows it one preferential arrival
at a time to ``max_nodes`` while keeping the strong-tie subgraph current,
and snapshots both metrics at t=0, every ``snapshot_every`` steps, and the
final step.  Trials are fully independent: each gets its own generator
seeded from (master seed, trial index), so a sweep's output is the same
whether trials run serially or in parallel.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConfigError, OracleMismatchError
from .graph_core import EvolvingGraph, make_rng
from .metrics import (
    SeriesSummary,
    SnapshotRecord,
    count_at_least_k,
    largest_component,
    summarize_series,
)
from .tie_strength import DEFAULT_POLICY, OverlapPolicy, StrongGraph, rebuild_strong

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

# k defaults paired with the epsilon values the reference experiments use.
DEFAULT_K_BY_EPSILON = {0.01: 25, 0.05: 25, 0.1: 10}
FALLBACK_K = 25


def default_k_for_epsilon(epsilon: float) -> int:
    return DEFAULT_K_BY_EPSILON.get(epsilon, FALLBACK_K)


def default_snapshot_every(max_nodes: int) -> int:
    """Cadence giving ~500 points per curve."""
    return max(1, max_nodes // 500)


def derive_trial_seed(master_seed: int, trial_index: int) -> int:
    """Trial seed = splitmix64 output number ``trial_index + 1`` for the master.

    splitmix64 walks its state by the 64-bit golden ratio and scrambles with
    two xor-multiply rounds; distinct indices collide only with probability
    ~2^-64.  Fixed algorithm: these values are stable forever.
    """
    if trial_index < 0:
        raise ConfigError(f"trial_index must be non-negative, got {trial_index}")
    z = (master_seed + (trial_index + 1) * _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class RunConfig:
    """Full parameterization of one experiment.

    ``k`` and ``snapshot_every`` may be left None to take their defaults
    (k paired to epsilon; cadence of ~500 snapshots).
    """

    m: int
    epsilon: float
    max_nodes: int
    k: int | None = None
    seed: int = 42
    snapshot_every: int | None = None
    trials: int = 1
    oracle_check: bool = False
    policy: OverlapPolicy = DEFAULT_POLICY
    smoothing_window: int = 9

    def __post_init__(self) -> None:
        if self.k is None:
            object.__setattr__(self, "k", default_k_for_epsilon(self.epsilon))
        if self.snapshot_every is None:
            object.__setattr__(self, "snapshot_every", default_snapshot_every(self.max_nodes))
        if self.m < 2:
            raise ConfigError(f"m must be >= 2, got {self.m}")
        if not 0.0 <= self.epsilon < 1.0:
            raise ConfigError(f"epsilon must be in [0,1), got {self.epsilon}")
        if self.k < 1:
            raise ConfigError(f"k must be positive, got {self.k}")
        if self.max_nodes <= self.m:
            raise ConfigError(f"max_nodes must exceed m, got {self.max_nodes} <= {self.m}")
        if self.snapshot_every < 1:
            raise ConfigError(f"snapshot_every must be >= 1, got {self.snapshot_every}")
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.smoothing_window < 1 or self.smoothing_window % 2 == 0:
            raise ConfigError(
                f"smoothing_window must be a positive odd integer, got {self.smoothing_window}"
            )


@dataclass(frozen=True)
class RunResult:
    """Everything one trial produced, ordered by snapshot time."""

    config: RunConfig
    trial_index: int
    snapshots: tuple[SnapshotRecord, ...]
    summary_count: SeriesSummary
    summary_lcc: SeriesSummary


def run_single(config: RunConfig, trial_index: int = 0) -> RunResult:
    """Grow one trial to ``max_nodes`` and summarize both metric series.

    With ``oracle_check`` set, every snapshot additionally verifies the
    structural invariants and compares the incremental strong state against
    a from-scratch rebuild, aborting on the first divergence.
    """
    rng = make_rng(derive_trial_seed(config.seed, trial_index))
    g = EvolvingGraph.complete(config.m, reserve_nodes=config.max_nodes)
    s = StrongGraph.from_graph(g, config.epsilon, config.policy)
    snapshots: list[SnapshotRecord] = []

    def snapshot(t: int) -> None:
        if config.oracle_check:
            _verify_state(g, s)
        snapshots.append(SnapshotRecord(
            t=t,
            n_nodes=g.node_count,
            n_edges_base=g.edge_count,
            n_edges_strong=s.strong_edge_count,
            count_ge_k=count_at_least_k(s, config.k),
            lcc_size=largest_component(s),
        ))

    snapshot(0)
    steps = config.max_nodes - config.m
    for t in range(1, steps + 1):
        new_node, targets = g.add_node_preferential(config.m, rng)
        s.apply_arrival(g, new_node, targets)
        if t % config.snapshot_every == 0 or t == steps:
            snapshot(t)

    window = _effective_window(config.smoothing_window, len(snapshots))
    return RunResult(
        config=config,
        trial_index=trial_index,
        snapshots=tuple(snapshots),
        summary_count=summarize_series([r.count_ge_k for r in snapshots], window),
        summary_lcc=summarize_series([r.lcc_size for r in snapshots], window),
    )


def run_sweep(configs: Sequence[RunConfig], max_workers: int | None = None) -> list[RunResult]:
    """Run every (config, trial) pair; results ordered by (config, trial).

    ``max_workers`` > 1 runs trials in separate processes; the output
    sequence is identical either way.
    """
    jobs = [(ci, ti) for ci, cfg in enumerate(configs) for ti in range(cfg.trials)]
    results: dict[tuple[int, int], RunResult] = {}
    if max_workers is None or max_workers <= 1:
        for ci, ti in jobs:
            results[(ci, ti)] = run_single(configs[ci], ti)
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=max_workers) as pool:
            futures = {pool.submit(run_single, configs[ci], ti): (ci, ti) for ci, ti in jobs}
            for fut in concurrent.futures.as_completed(futures):
                results[futures[fut]] = fut.result()
    return [results[job] for job in jobs]


def mean_series(results: Sequence[RunResult]) -> dict[str, np.ndarray]:
    """Per-snapshot mean across trials of the same config.

    Returns arrays keyed by the snapshot fields; ``t`` and ``n_nodes`` stay
    integral, metric columns become float means.
    """
    if not results:
        raise ValueError("mean_series needs at least one result")
    t0 = [r.t for r in results[0].snapshots]
    for res in results[1:]:
        if [r.t for r in res.snapshots] != t0:
            raise ValueError("results have misaligned snapshot times")
    out: dict[str, np.ndarray] = {
        "t": np.asarray(t0, np.int64),
        "n_nodes": np.asarray([r.n_nodes for r in results[0].snapshots], np.int64),
    }
    for name in ("n_edges_base", "n_edges_strong", "count_ge_k", "lcc_size"):
        stack = np.asarray(
            [[getattr(r, name) for r in res.snapshots] for res in results], np.float64
        )
        out[name] = stack.mean(axis=0)
    return out


def _effective_window(window: int, n_snapshots: int) -> int:
    """Largest odd window <= the configured one that fits the series."""
    if n_snapshots >= window:
        return window
    w = max(n_snapshots, 1)
    return w if w % 2 == 1 else w - 1


def _verify_state(g: EvolvingGraph, s: StrongGraph) -> None:
    g.check_invariants()
    s.check_invariants()
    oracle = rebuild_strong(g, s.epsilon, s.policy)
    divergence = s.first_divergence(oracle)
    if divergence is not None:
        raise OracleMismatchError(divergence)
