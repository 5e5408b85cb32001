"""Evolving undirected simple graph with preferential-attachment growth.

The graph starts from a complete seed (or an explicit edge list) and only
ever grows: one node per step, attached to ``m`` distinct existing nodes
drawn with probability proportional to degree.  Node ids are dense and
assigned in arrival order; they are never reused.

Degree-proportional draws are implemented by uniform picks from an endpoint
multiset (every node appears once per incident edge), so a single draw is
O(1).  Randomness comes from numpy's PCG64 generator: a fixed, documented
algorithm, so identical seeds reproduce identical runs on any platform.
"""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

from . import _kernels
from .errors import ConfigError, InvariantError, NodeNotFoundError

# Candidate draws are taken in batches of (needed + BATCH_EXTRA); the batch
# size is part of the fixed sampling algorithm, so changing it changes runs.
BATCH_EXTRA = 16


def make_rng(seed: int) -> np.random.Generator:
    """Deterministic generator (PCG64) for a 64-bit seed.

    PCG64 streams are fixed by numpy's backward-compatibility policy, so the
    same seed yields the same draw sequence on every platform and build.
    """
    return np.random.Generator(np.random.PCG64(seed))


class EvolvingGraph:
    """Undirected simple graph supporting append-only preferential growth."""

    def __init__(self) -> None:
        self._n_cap = 64
        self._e_cap = 64
        self._buf_cap = 1024
        self._deg = np.zeros(self._n_cap, np.int32)
        self._inc_start = np.zeros(self._n_cap, np.int64)
        self._inc_len = np.zeros(self._n_cap, np.int32)
        self._inc_cap = np.zeros(self._n_cap, np.int32)
        self._inc_buf = np.empty(self._buf_cap, np.int32)
        self._edge_u = np.empty(self._e_cap, np.int32)
        self._edge_v = np.empty(self._e_cap, np.int32)
        self._multiset = np.empty(2 * self._e_cap, np.int32)
        self._seen = np.zeros(self._n_cap, np.bool_)
        self._buf_used = 0
        self._n = 0
        self._m_edges = 0
        self._nodes_with_edges = 0

    # -- construction ----------------------------------------------------

    @classmethod
    def complete(cls, m0: int, *, reserve_nodes: int = 0) -> "EvolvingGraph":
        """Complete graph on ``m0`` nodes; the canonical growth seed.

        ``reserve_nodes`` pre-sizes internal arrays for a planned final node
        count to avoid reallocation during growth.
        """
        if m0 < 2:
            raise ConfigError(f"complete seed needs at least 2 nodes, got m0={m0}")
        g = cls()
        if reserve_nodes > m0:
            g._reserve_for_growth(reserve_nodes, m0)
        g._n = m0
        for i in range(m0):
            for j in range(i + 1, m0):
                g._add_edge(i, j)
        return g

    @classmethod
    def from_edges(cls, n_nodes: int, edges: Iterable[tuple[int, int]]) -> "EvolvingGraph":
        """Build an arbitrary simple graph (mainly for analysis and tests)."""
        g = cls()
        if n_nodes < 0:
            raise ConfigError("n_nodes must be non-negative")
        g._ensure_nodes(n_nodes)
        g._n = n_nodes
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n_nodes and 0 <= v < n_nodes):
                raise ConfigError(f"edge ({u},{v}) outside node range [0,{n_nodes})")
            if u == v:
                raise ConfigError(f"self-loop ({u},{v}) not allowed")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ConfigError(f"duplicate edge ({u},{v})")
            seen.add(key)
            g._add_edge(u, v)
        return g

    # -- read-only views -------------------------------------------------

    @property
    def node_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return self._m_edges

    def degree(self, v: int) -> int:
        self._check_node(v)
        return int(self._deg[v])

    def neighbors(self, v: int) -> set[int]:
        self._check_node(v)
        p = self._inc_start[v]
        block = self._inc_buf[p : p + 2 * int(self._inc_len[v])]
        return set(int(w) for w in block[1::2])

    def has_edge(self, u: int, v: int) -> bool:
        self._check_node(u)
        self._check_node(v)
        if self._deg[v] < self._deg[u]:
            u, v = v, u
        p = self._inc_start[u]
        block = self._inc_buf[p : p + 2 * int(self._inc_len[u])]
        return v in block[1::2]

    def edge_id(self, u: int, v: int) -> int | None:
        """Insertion index of edge (u,v), or None if absent."""
        self._check_node(u)
        self._check_node(v)
        if self._deg[v] < self._deg[u]:
            u, v = v, u
        p = self._inc_start[u]
        block = self._inc_buf[p : p + 2 * int(self._inc_len[u])]
        hits = np.flatnonzero(block[1::2] == v)
        if hits.size == 0:
            return None
        return int(block[2 * int(hits[0])])

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges as (u, v) in insertion order."""
        for e in range(self._m_edges):
            yield int(self._edge_u[e]), int(self._edge_v[e])

    def endpoint_multiset(self) -> np.ndarray:
        """Copy of the sampling multiset: node v appears degree(v) times."""
        return self._multiset[: 2 * self._m_edges].copy()

    # -- growth ----------------------------------------------------------

    def sample_targets(self, m: int, rng: np.random.Generator) -> set[int]:
        """Draw ``m`` distinct nodes, each draw degree-proportional.

        Degrees are frozen at call time; duplicate draws are rejected and
        redrawn until ``m`` distinct nodes are collected.
        """
        return set(int(v) for v in self._sample_target_array(m, rng))

    def add_node_preferential(self, m: int, rng: np.random.Generator) -> tuple[int, set[int]]:
        """Append one node attached to ``m`` distinct degree-biased targets.

        Returns the new node id and its targets so derived structures can
        update incrementally.
        """
        targets = self._sample_target_array(m, rng)
        new_node = self._append_node(targets)
        return new_node, set(int(v) for v in targets)

    def add_node_attached(self, targets: Iterable[int]) -> int:
        """Append one node attached to explicitly chosen distinct targets."""
        tgt = np.fromiter(targets, np.int32)
        if tgt.size < 1:
            raise ConfigError("need at least one target")
        if np.unique(tgt).size != tgt.size:
            raise ConfigError("targets must be distinct")
        bad = tgt[(tgt < 0) | (tgt >= self._n)]
        if bad.size:
            raise NodeNotFoundError(int(bad[0]))
        return self._append_node(tgt)

    def _append_node(self, targets: np.ndarray) -> int:
        m = targets.size
        new_node = self._n
        self._ensure_nodes(self._n + 1)
        self._ensure_edges(self._m_edges + m)
        self._nodes_with_edges += 1 + int(np.count_nonzero(self._deg[targets] == 0))
        self._reserve_buf(self._arrival_buf_need(targets))
        self._buf_used = _kernels.insert_node(
            self._inc_buf, self._inc_start, self._inc_len, self._inc_cap,
            self._buf_used, self._deg, self._edge_u, self._edge_v,
            self._m_edges, new_node, targets,
        )
        lo = 2 * self._m_edges
        self._multiset[lo : lo + m] = new_node
        self._multiset[lo + m : lo + 2 * m] = targets
        self._m_edges += m
        self._n += 1
        return new_node

    # -- consistency -----------------------------------------------------

    def check_invariants(self) -> None:
        """Full structural scan; raises InvariantError on any violation."""
        n, e = self._n, self._m_edges
        deg = self._deg[:n]
        if int(deg.sum()) != 2 * e:
            raise InvariantError(f"degree sum {int(deg.sum())} != 2*edge_count {2 * e}")
        ms = self._multiset[: 2 * e]
        if not np.array_equal(np.bincount(ms, minlength=n), deg):
            raise InvariantError("endpoint multiset counts do not match degrees")
        if e:
            u = self._edge_u[:e].astype(np.int64)
            v = self._edge_v[:e].astype(np.int64)
            keys = np.minimum(u, v) * n + np.maximum(u, v)
            if np.unique(keys).size != e:
                raise InvariantError("duplicate edge in edge table")
        half_seen = np.zeros(e, np.int8)
        code, who = _kernels.check_adjacency(
            self._inc_buf, self._inc_start, self._inc_len, self._deg,
            self._edge_u, self._edge_v, n, e, half_seen,
        )
        if code != _kernels.ERR_OK:
            names = {
                _kernels.ERR_LEN_MISMATCH: "incident list length != degree at node",
                _kernels.ERR_BAD_EDGE_ID: "incident list holds bad edge id at node",
                _kernels.ERR_BAD_ENDPOINT: "incident entry disagrees with edge table at",
                _kernels.ERR_HALF_COUNT: "edge not present exactly once per endpoint: edge",
                _kernels.ERR_SELF_LOOP: "self loop at edge",
            }
            raise InvariantError(f"{names[code]} {who}")

    # -- internals -------------------------------------------------------

    def _check_node(self, v: int) -> None:
        if not 0 <= v < self._n:
            raise NodeNotFoundError(v)

    def _sample_target_array(self, m: int, rng: np.random.Generator) -> np.ndarray:
        if m < 1:
            raise ConfigError(f"m must be positive, got {m}")
        if m > self._n:
            raise ConfigError(f"m={m} exceeds node count {self._n}")
        if self._m_edges == 0:
            raise ConfigError("cannot sample targets from an edgeless graph")
        if m > self._nodes_with_edges:
            raise ConfigError(
                f"m={m} exceeds the {self._nodes_with_edges} nodes with nonzero degree"
            )
        size = 2 * self._m_edges
        out = np.empty(m, np.int32)
        have = 0
        while have < m:
            pos = rng.integers(0, size, size=(m - have) + BATCH_EXTRA)
            cand = self._multiset[pos]
            have = _kernels.take_first_distinct(cand, self._seen, out, have, m)
        self._seen[out] = False
        return out

    def _add_edge(self, u: int, v: int) -> None:
        self._ensure_edges(self._m_edges + 1)
        need = 0
        for x in (u, v):
            if self._deg[x] == 0:
                self._nodes_with_edges += 1
            cap = int(self._inc_cap[x])
            if cap == 0:
                need += 8
            elif self._inc_len[x] == cap:
                need += 4 * cap
        self._reserve_buf(need)
        self._buf_used = _kernels.insert_edge(
            self._inc_buf, self._inc_start, self._inc_len, self._inc_cap,
            self._buf_used, self._deg, self._edge_u, self._edge_v,
            self._m_edges, u, v,
        )
        lo = 2 * self._m_edges
        self._multiset[lo] = u
        self._multiset[lo + 1] = v
        self._m_edges += 1

    def _arrival_buf_need(self, targets: np.ndarray) -> int:
        caps = self._inc_cap[targets]
        full = self._inc_len[targets] == caps
        return 2 * targets.size + int((4 * caps[full].astype(np.int64)).sum())

    def _reserve_for_growth(self, max_nodes: int, m: int) -> None:
        final_edges = m * (m - 1) // 2 + m * (max_nodes - m)
        self._ensure_nodes(max_nodes)
        self._ensure_edges(final_edges)
        # every block doubles through at most 2x its final size, and each
        # slot holds 2 ints, so 16*E words bound total block allocation
        self._reserve_buf(16 * final_edges - self._buf_used)

    def _ensure_nodes(self, n: int) -> None:
        if n <= self._n_cap:
            return
        cap = self._n_cap
        while cap < n:
            cap *= 2
        self._deg = _grown(self._deg, cap, fill=0)
        self._inc_start = _grown(self._inc_start, cap, fill=0)
        self._inc_len = _grown(self._inc_len, cap, fill=0)
        self._inc_cap = _grown(self._inc_cap, cap, fill=0)
        self._seen = _grown(self._seen, cap, fill=0)
        self._n_cap = cap

    def _ensure_edges(self, e: int) -> None:
        if e <= self._e_cap:
            return
        cap = self._e_cap
        while cap < e:
            cap *= 2
        self._edge_u = _grown(self._edge_u, cap)
        self._edge_v = _grown(self._edge_v, cap)
        self._multiset = _grown(self._multiset, 2 * cap)
        self._e_cap = cap

    def _reserve_buf(self, extra_words: int) -> None:
        need = self._buf_used + max(extra_words, 0)
        if need <= self._buf_cap:
            return
        cap = self._buf_cap
        while cap < need:
            cap *= 2
        self._inc_buf = _grown(self._inc_buf, cap)
        self._buf_cap = cap


def _grown(arr: np.ndarray, cap: int, fill: int | None = None) -> np.ndarray:
    out = np.empty(cap, arr.dtype)
    out[: arr.size] = arr
    if fill is not None:
        out[arr.size :] = fill
    return out
