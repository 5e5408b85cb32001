"""Neighbourhood overlap and the derived strong-tie subgraph.

The overlap of an edge (u, v) is the number of common neighbours of u and v
divided by the number of nodes adjacent to at least one of them.  Under the
default policy the endpoints themselves are left out of the denominator,
and an isolated edge, whose denominator would be empty, gets overlap 0.

An edge of the base graph is *strong* when its overlap strictly exceeds the
threshold ``epsilon``.  ``StrongGraph`` keeps per-edge common-neighbour
counts and strong flags incrementally: when a node arrives, the only edges
whose count can change are its own new edges and edges joining two of its
targets, while every other edge incident to a target merely sees a degree
bump.  That makes each arrival O(sum of target degrees) instead of a full
recomputation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from . import _kernels
from .errors import ConfigError, InvariantError, NodeNotFoundError, NotAnEdgeError
from .graph_core import EvolvingGraph


@dataclass(frozen=True)
class OverlapPolicy:
    """Conventions for the two points the overlap definition leaves open.

    ``exclude_endpoints``: drop u and v from the denominator's union (the
    numerator can never contain them in a simple graph).
    ``zero_denominator_value``: overlap assigned when the union is empty,
    which happens only for an isolated edge under the default policy.
    """

    exclude_endpoints: bool = True
    zero_denominator_value: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.zero_denominator_value <= 1.0:
            raise ConfigError(
                f"zero_denominator_value must be in [0,1], got {self.zero_denominator_value}"
            )


DEFAULT_POLICY = OverlapPolicy()


def common_neighbor_count(g: EvolvingGraph, u: int, v: int) -> int:
    """|N(u) ∩ N(v)|, iterating the smaller neighbourhood and probing the larger."""
    nu = g.neighbors(u)
    nv = g.neighbors(v)
    if len(nv) < len(nu):
        nu, nv = nv, nu
    return sum(1 for w in nu if w in nv)


def overlap(g: EvolvingGraph, u: int, v: int, policy: OverlapPolicy = DEFAULT_POLICY) -> float:
    """Neighbourhood overlap of the edge (u, v); only defined for edges."""
    if u == v or not g.has_edge(u, v):
        raise NotAnEdgeError(f"({u},{v}) is not an edge")
    c = common_neighbor_count(g, u, v)
    union = g.degree(u) + g.degree(v) - c
    if policy.exclude_endpoints:
        union -= 2
    if union == 0:
        return policy.zero_denominator_value
    return c / union


class StrongGraph:
    """Strong-tie subgraph of a bound EvolvingGraph, maintained incrementally.

    Shares the base graph's node set and edge numbering; holds one common
    count and one strong flag per base edge, plus per-node strong degrees.
    Mutate only through :meth:`apply_arrival`, between graph arrivals.
    """

    def __init__(self, graph: EvolvingGraph, epsilon: float,
                 policy: OverlapPolicy = DEFAULT_POLICY) -> None:
        if not 0.0 <= epsilon < 1.0:
            raise ConfigError(f"epsilon must be in [0,1), got {epsilon}")
        if graph.node_count < 1:
            raise ConfigError("strong graph needs a nonempty base graph")
        self.graph = graph
        self.epsilon = float(epsilon)
        self.policy = policy
        self._e_cap = max(graph.edge_count, 64)
        self._n_cap = max(graph.node_count, 64)
        self._common = np.zeros(self._e_cap, np.int32)
        self._strong = np.zeros(self._e_cap, np.int8)
        self._strong_deg = np.zeros(self._n_cap, np.int32)
        self._in_tgt = np.zeros(self._n_cap, np.bool_)
        self.strong_edge_count = 0
        self.last_recomputed_edges = 0
        self._synced_nodes = graph.node_count
        self._synced_edges = graph.edge_count

    # -- construction ----------------------------------------------------

    @classmethod
    def from_graph(cls, graph: EvolvingGraph, epsilon: float,
                   policy: OverlapPolicy = DEFAULT_POLICY) -> "StrongGraph":
        """Compute overlap for every edge of ``graph`` from its definition.

        Cost is O(sum over edges of the smaller endpoint degree); meant for
        seeds and small graphs.  Use :func:`rebuild_strong` for bulk rebuilds.
        """
        s = cls(graph, epsilon, policy)
        for e, (u, v) in enumerate(graph.edges()):
            c = common_neighbor_count(graph, u, v)
            s._common[e] = c
            if s._overlap_from_count(c, graph.degree(u), graph.degree(v)) > s.epsilon:
                s._strong[e] = 1
                s._strong_deg[u] += 1
                s._strong_deg[v] += 1
                s.strong_edge_count += 1
        return s

    # -- incremental maintenance ------------------------------------------

    def apply_arrival(self, g: EvolvingGraph, new_node: int, targets: Iterable[int]) -> None:
        """Fold one preferential arrival (already applied to ``g``) into self.

        Re-evaluates exactly the new edges plus the pre-existing edges with
        an endpoint among the targets; strong edges may appear and disappear.
        """
        if g is not self.graph:
            raise InvariantError("strong graph is bound to a different base graph")
        tgt = np.fromiter(targets, np.int32)
        m = tgt.size
        if (self._synced_nodes + 1 != g.node_count
                or self._synced_edges + m != g.edge_count
                or new_node != g.node_count - 1):
            raise InvariantError(
                f"arrival out of sync: strong graph at {self._synced_nodes} nodes/"
                f"{self._synced_edges} edges, base graph at {g.node_count}/{g.edge_count}"
            )
        lo, hi = self._synced_edges, g.edge_count
        if not (np.all(g._edge_u[lo:hi] == new_node)
                and np.array_equal(np.sort(g._edge_v[lo:hi]), np.sort(tgt))):
            raise InvariantError("targets do not match the base graph's newest edges")
        self._ensure(g.node_count, g.edge_count)
        self._common[lo:hi] = 0
        self._strong[lo:hi] = 0
        sdelta, recomputed = _kernels.apply_arrival(
            g._inc_buf, g._inc_start, g._inc_len, g._deg,
            self._common, self._strong, self._strong_deg, self._in_tgt,
            tgt, new_node, self.epsilon,
            self.policy.exclude_endpoints, self.policy.zero_denominator_value,
        )
        self.strong_edge_count += int(sdelta)
        self.last_recomputed_edges = int(recomputed)
        self._synced_nodes = g.node_count
        self._synced_edges = g.edge_count

    # -- read-only views --------------------------------------------------

    def strong_degree(self, v: int) -> int:
        self._check_node(v)
        return int(self._strong_deg[v])

    def strong_neighbors(self, v: int) -> set[int]:
        self._check_node(v)
        g = self.graph
        p = g._inc_start[v]
        block = g._inc_buf[p : p + 2 * int(g._inc_len[v])]
        eids = block[0::2]
        others = block[1::2]
        return set(int(w) for w in others[self._strong[eids] == 1])

    def overlap_value(self, u: int, v: int) -> float:
        """Cached overlap of the edge (u, v)."""
        eid = self.graph.edge_id(u, v)
        if eid is None or u == v:
            raise NotAnEdgeError(f"({u},{v}) is not an edge")
        return self._overlap_from_count(
            int(self._common[eid]), self.graph.degree(u), self.graph.degree(v)
        )

    def overlap_items(self) -> Iterator[tuple[tuple[int, int], float]]:
        """((u, v), overlap) for every base edge, in insertion order."""
        values = self.overlap_values()
        for e, (u, v) in enumerate(self.graph.edges()):
            yield (u, v), float(values[e])

    def overlap_values(self) -> np.ndarray:
        """Overlap of every base edge as float64, indexed by edge id."""
        g = self.graph
        e = g.edge_count
        c = self._common[:e].astype(np.int64)
        denom = g._deg[g._edge_u[:e]].astype(np.int64) + g._deg[g._edge_v[:e]] - c
        if self.policy.exclude_endpoints:
            denom -= 2
        out = np.full(e, self.policy.zero_denominator_value, np.float64)
        np.divide(c, denom, out=out, where=denom != 0)
        return out

    def strong_edge_set(self) -> set[tuple[int, int]]:
        """Strong edges as (min, max) endpoint pairs."""
        g = self.graph
        e = g.edge_count
        eids = np.flatnonzero(self._strong[:e])
        u = g._edge_u[eids]
        v = g._edge_v[eids]
        return set(zip(np.minimum(u, v).tolist(), np.maximum(u, v).tolist()))

    def is_strong(self, u: int, v: int) -> bool:
        eid = self.graph.edge_id(u, v)
        if eid is None or u == v:
            raise NotAnEdgeError(f"({u},{v}) is not an edge")
        return bool(self._strong[eid])

    # -- consistency -------------------------------------------------------

    def check_invariants(self) -> None:
        """Verify stored flags and tallies against the cached counts."""
        g = self.graph
        if self._synced_nodes != g.node_count or self._synced_edges != g.edge_count:
            raise InvariantError("strong graph out of sync with its base graph")
        e = g.edge_count
        values = self.overlap_values()
        if values.size and (values.min() < 0.0 or values.max() > 1.0):
            bad = int(np.flatnonzero((values < 0) | (values > 1))[0])
            raise InvariantError(f"overlap out of [0,1] at edge {bad}: {values[bad]}")
        expect = (values > self.epsilon).astype(np.int8)
        if not np.array_equal(expect, self._strong[:e]):
            bad = int(np.flatnonzero(expect != self._strong[:e])[0])
            raise InvariantError(
                f"strong flag disagrees with overlap at edge {bad} "
                f"({int(g._edge_u[bad])},{int(g._edge_v[bad])})"
            )
        eids = np.flatnonzero(self._strong[:e])
        sdeg = (np.bincount(g._edge_u[eids], minlength=g.node_count)
                + np.bincount(g._edge_v[eids], minlength=g.node_count))
        if not np.array_equal(sdeg, self._strong_deg[: g.node_count]):
            bad = int(np.flatnonzero(sdeg != self._strong_deg[: g.node_count])[0])
            raise InvariantError(f"strong degree tally wrong at node {bad}")
        if int(eids.size) != self.strong_edge_count:
            raise InvariantError(
                f"strong edge count {self.strong_edge_count} != flagged {int(eids.size)}"
            )

    def first_divergence(self, other: "StrongGraph") -> str | None:
        """Describe the first edge (or node) where two strong states differ."""
        g = self.graph
        if other.graph is not g:
            return "compared strong graphs are bound to different base graphs"
        e = g.edge_count
        for name, a, b in (
            ("common count", self._common[:e], other._common[:e]),
            ("strong flag", self._strong[:e], other._strong[:e]),
        ):
            if not np.array_equal(a, b):
                i = int(np.flatnonzero(a != b)[0])
                u, v = int(g._edge_u[i]), int(g._edge_v[i])
                return (f"{name} diverges at edge {i} ({u},{v}): "
                        f"{int(a[i])} vs {int(b[i])}")
        n = g.node_count
        if not np.array_equal(self._strong_deg[:n], other._strong_deg[:n]):
            i = int(np.flatnonzero(self._strong_deg[:n] != other._strong_deg[:n])[0])
            return (f"strong degree diverges at node {i}: "
                    f"{int(self._strong_deg[i])} vs {int(other._strong_deg[i])}")
        if self.strong_edge_count != other.strong_edge_count:
            return (f"strong edge count diverges: "
                    f"{self.strong_edge_count} vs {other.strong_edge_count}")
        return None

    # -- internals ---------------------------------------------------------

    def _overlap_from_count(self, c: int, deg_u: int, deg_v: int) -> float:
        denom = deg_u + deg_v - c
        if self.policy.exclude_endpoints:
            denom -= 2
        if denom == 0:
            return self.policy.zero_denominator_value
        return c / denom

    def _check_node(self, v: int) -> None:
        if not 0 <= v < self.graph.node_count:
            raise NodeNotFoundError(v)

    def _ensure(self, n: int, e: int) -> None:
        if e > self._e_cap:
            cap = self._e_cap
            while cap < e:
                cap *= 2
            self._common = _grown_zero(self._common, cap)
            self._strong = _grown_zero(self._strong, cap)
            self._e_cap = cap
        if n > self._n_cap:
            cap = self._n_cap
            while cap < n:
                cap *= 2
            self._strong_deg = _grown_zero(self._strong_deg, cap)
            self._in_tgt = _grown_zero(self._in_tgt, cap)
            self._n_cap = cap


def rebuild_strong(g: EvolvingGraph, epsilon: float,
                   policy: OverlapPolicy = DEFAULT_POLICY) -> StrongGraph:
    """Recompute the strong-tie state of ``g`` from scratch.

    Marker-based full recount over the adjacency structure; shares no
    bookkeeping with the incremental path, so it doubles as the reference
    the incremental state is checked against.
    """
    s = StrongGraph(g, epsilon, policy)
    s._ensure(g.node_count, g.edge_count)
    mark = np.zeros(g.node_count, np.bool_)
    s.strong_edge_count = int(_kernels.rebuild_strong(
        g._inc_buf, g._inc_start, g._inc_len, g._deg,
        g._edge_u, g._edge_v, g.edge_count,
        mark, float(epsilon), policy.exclude_endpoints,
        policy.zero_denominator_value,
        s._common, s._strong, s._strong_deg,
    ))
    return s


def _grown_zero(arr: np.ndarray, cap: int) -> np.ndarray:
    out = np.zeros(cap, arr.dtype)
    out[: arr.size] = arr
    return out
