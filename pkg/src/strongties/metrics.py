"""Snapshot metrics and series summaries.

Two quantities are tracked over a run: how many nodes currently have at
least k strong ties, and the size of the largest connected component of the
strong-tie subgraph.  Components are recomputed by full traversal at
snapshot time; the strong subgraph sees both insertions and deletions, so
snapshot-time traversal is far cheaper than fully dynamic connectivity and
just as correct for sampled curves.

``summarize_series`` condenses a finished series into a peak location plus
rank-correlation trends on each side of the peak, which is how the
rise-then-fall shape is detected and quantified.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components
from scipy.stats import spearmanr

from .tie_strength import StrongGraph


@dataclass(frozen=True)
class SnapshotRecord:
    """One sampled row of the time series."""

    t: int
    n_nodes: int
    n_edges_base: int
    n_edges_strong: int
    count_ge_k: int
    lcc_size: int


@dataclass(frozen=True)
class SeriesSummary:
    """Peak location and side trends of one (smoothed) metric series.

    ``peak_value`` is the maximum of the smoothed series (fractional unless
    the window is 1) and ``peak_index`` the first index attaining it.
    Trends are Spearman rank correlations of the smoothed values against
    time on [0, peak] and [peak, end]; degenerate segments score 0.
    """

    peak_index: int
    peak_value: float
    pre_trend: float
    post_trend: float
    smoothing_window: int


def count_at_least_k(s: StrongGraph, k: int) -> int:
    """Number of nodes with strong degree >= k."""
    n = s.graph.node_count
    return int(np.count_nonzero(s._strong_deg[:n] >= k))


def largest_component(s: StrongGraph) -> int:
    """Node count of the largest connected component of the strong subgraph.

    Isolated nodes are components of size 1.
    """
    g = s.graph
    n = g.node_count
    if n == 0:
        return 0
    eids = np.flatnonzero(s._strong[: g.edge_count])
    if eids.size == 0:
        return 1
    adj = sp.coo_matrix(
        (np.ones(eids.size, np.int8), (g._edge_u[eids], g._edge_v[eids])),
        shape=(n, n),
    )
    _, labels = connected_components(adj, directed=False)
    return int(np.bincount(labels).max())


def moving_average(values: Sequence[float], window: int) -> np.ndarray:
    """Centered moving average, truncated (not padded) at the boundaries."""
    if window < 1 or window % 2 == 0:
        raise ValueError(f"window must be a positive odd integer, got {window}")
    arr = np.asarray(values, np.float64)
    n = arr.size
    half = window // 2
    csum = np.concatenate(([0.0], np.cumsum(arr)))
    idx = np.arange(n)
    lo = np.maximum(idx - half, 0)
    hi = np.minimum(idx + half + 1, n)
    return (csum[hi] - csum[lo]) / (hi - lo)


def summarize_series(values: Sequence[float], window: int) -> SeriesSummary:
    """Smooth, locate the first global maximum, and score both side trends."""
    n = len(values)
    if n == 0:
        raise ValueError("cannot summarize an empty series")
    if n < window:
        raise ValueError(f"series of length {n} is shorter than window {window}")
    smoothed = moving_average(values, window)
    peak = int(np.argmax(smoothed))
    return SeriesSummary(
        peak_index=peak,
        peak_value=float(smoothed[peak]),
        pre_trend=_rank_trend(smoothed[: peak + 1]),
        post_trend=_rank_trend(smoothed[peak:]),
        smoothing_window=window,
    )


def _rank_trend(segment: np.ndarray) -> float:
    """Spearman correlation of a segment against time; 0 when degenerate."""
    if segment.size < 2:
        return 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rho = spearmanr(np.arange(segment.size), segment).statistic
    return 0.0 if np.isnan(rho) else float(rho)


def ccdf_loglog_slope(degrees: Sequence[int], min_degree: int = 10) -> float:
    """Log-log slope of the degree CCDF tail (one point per distinct degree).

    For a density exponent near 3 the CCDF slope sits near -2.
    """
    arr = np.asarray(degrees, np.int64)
    uniq, counts = np.unique(arr, return_counts=True)
    below = np.concatenate(([0], np.cumsum(counts)[:-1]))
    ccdf = 1.0 - below / arr.size
    mask = uniq >= min_degree
    if int(mask.sum()) < 2:
        raise ValueError(f"need at least 2 distinct degrees >= {min_degree} to fit a slope")
    slope, _ = np.polyfit(np.log(uniq[mask].astype(np.float64)), np.log(ccdf[mask]), 1)
    return float(slope)
