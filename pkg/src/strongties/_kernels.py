"""Numba kernels for the hot paths: growth, incremental overlap upkeep, rebuilds.

Data layout shared by all kernels:

- Incident lists live in one flat int32 buffer of (edge_id, other_endpoint)
  pairs.  Each node owns a contiguous block described by ``inc_start`` /
  ``inc_len`` / ``inc_cap``; full blocks are relocated to the end of the
  buffer with doubled capacity (callers reserve buffer space up front, so
  relocation inside a kernel never fails).
- Edges are numbered in insertion order; ``edge_u[e]`` / ``edge_v[e]`` hold
  the endpoints.
- The strong-tie state is per-edge: ``common[e]`` counts common neighbours
  of the endpoints and ``strong[e]`` flags membership in the strong
  subgraph.  ``strong_deg`` is the per-node strong degree.

All kernels are deterministic; randomness stays with the caller.
"""

from numba import njit

ERR_OK = 0
ERR_LEN_MISMATCH = 1
ERR_BAD_EDGE_ID = 2
ERR_BAD_ENDPOINT = 3
ERR_HALF_COUNT = 4
ERR_SELF_LOOP = 5


@njit(cache=True)
def _append_incident(inc_buf, inc_start, inc_len, inc_cap, buf_used, v, eid, w):
    """Append (eid, w) to v's block, relocating it if full. Returns buf_used."""
    cap = inc_cap[v]
    ln = inc_len[v]
    if ln == cap:
        new_cap = cap * 2 if cap > 0 else 4
        src = inc_start[v]
        dst = buf_used
        for i in range(2 * ln):
            inc_buf[dst + i] = inc_buf[src + i]
        inc_start[v] = dst
        inc_cap[v] = new_cap
        buf_used = dst + 2 * new_cap
    p = inc_start[v] + 2 * inc_len[v]
    inc_buf[p] = eid
    inc_buf[p + 1] = w
    inc_len[v] += 1
    return buf_used


@njit(cache=True)
def insert_edge(inc_buf, inc_start, inc_len, inc_cap, buf_used, deg,
                edge_u, edge_v, eid, u, v):
    """Insert one edge between existing nodes. Returns updated buf_used."""
    edge_u[eid] = u
    edge_v[eid] = v
    buf_used = _append_incident(inc_buf, inc_start, inc_len, inc_cap, buf_used, u, eid, v)
    buf_used = _append_incident(inc_buf, inc_start, inc_len, inc_cap, buf_used, v, eid, u)
    deg[u] += 1
    deg[v] += 1
    return buf_used


@njit(cache=True)
def insert_node(inc_buf, inc_start, inc_len, inc_cap, buf_used, deg,
                edge_u, edge_v, n_edges_before, new_node, targets):
    """Append a new node with one edge to each target. Returns buf_used.

    The new node's block is sized exactly to its initial degree.
    """
    m = targets.shape[0]
    inc_start[new_node] = buf_used
    inc_cap[new_node] = m
    buf_used += 2 * m
    for i in range(m):
        u = targets[i]
        e = n_edges_before + i
        edge_u[e] = new_node
        edge_v[e] = u
        p = inc_start[new_node] + 2 * inc_len[new_node]
        inc_buf[p] = e
        inc_buf[p + 1] = u
        inc_len[new_node] += 1
        buf_used = _append_incident(inc_buf, inc_start, inc_len, inc_cap, buf_used, u, e, new_node)
        deg[new_node] += 1
        deg[u] += 1
    return buf_used


@njit(cache=True)
def take_first_distinct(cand, seen, out, have, want):
    """Scan candidates in draw order, keeping first occurrences of unseen ids.

    Marks accepted ids in ``seen`` (caller clears them afterwards) and
    writes them to ``out``. Returns the updated count of accepted ids.
    """
    for i in range(cand.shape[0]):
        v = cand[i]
        if not seen[v]:
            seen[v] = True
            out[have] = v
            have += 1
            if have == want:
                break
    return have


@njit(cache=True)
def apply_arrival(inc_buf, inc_start, inc_len, deg, common, strong, strong_deg,
                  in_tgt, targets, new_node, eps, exclude_endpoints, zero_val):
    """Update strong-tie state after one arrival already applied to the graph.

    A single pass over each target's incident list suffices:

    - the only edges whose common-neighbour count changes are the new edges
      and edges joining two targets (the new node is their one new common
      neighbour), and each such count settles within the pass;
    - every other edge incident to a target changed only via the endpoint's
      degree, so its stored count is already final.

    Membership is re-evaluated exactly once per dirty edge.  Returns
    (strong_edge_count delta, number of pre-existing edges re-evaluated).
    """
    m = targets.shape[0]
    for i in range(m):
        in_tgt[targets[i]] = True
    sdelta = 0
    recomputed = 0
    for i in range(m):
        u = targets[i]
        du = deg[u]
        cnt = 0
        new_eid = -1
        p = inc_start[u]
        end = p + 2 * inc_len[u]
        while p < end:
            e = inc_buf[p]
            w = inc_buf[p + 1]
            p += 2
            if w == new_node:
                new_eid = e
                continue
            if in_tgt[w]:
                cnt += 1
                if u >= w:
                    continue
                common[e] += 1
            recomputed += 1
            c = common[e]
            if exclude_endpoints:
                denom = du + deg[w] - 2 - c
            else:
                denom = du + deg[w] - c
            ov = zero_val if denom == 0 else c / denom
            s_new = 1 if ov > eps else 0
            if s_new != strong[e]:
                strong[e] = s_new
                d = 1 if s_new == 1 else -1
                sdelta += d
                strong_deg[u] += d
                strong_deg[w] += d
        common[new_eid] = cnt
        if exclude_endpoints:
            denom = du + deg[new_node] - 2 - cnt
        else:
            denom = du + deg[new_node] - cnt
        ov = zero_val if denom == 0 else cnt / denom
        if ov > eps:
            strong[new_eid] = 1
            sdelta += 1
            strong_deg[u] += 1
            strong_deg[new_node] += 1
    for i in range(m):
        in_tgt[targets[i]] = False
    return sdelta, recomputed


@njit(cache=True)
def rebuild_strong(inc_buf, inc_start, inc_len, deg, edge_u, edge_v, n_edges,
                   mark, eps, exclude_endpoints, zero_val,
                   common_out, strong_out, strong_deg_out):
    """Recompute every edge's common count and strong flag from adjacency alone.

    Marker-based intersection per edge; independent of the incremental
    bookkeeping. Returns the strong edge count.
    """
    scount = 0
    for e in range(n_edges):
        u = edge_u[e]
        v = edge_v[e]
        if deg[u] > deg[v]:
            u, v = v, u
        p = inc_start[u]
        end = p + 2 * inc_len[u]
        while p < end:
            mark[inc_buf[p + 1]] = True
            p += 2
        c = 0
        p = inc_start[v]
        end = p + 2 * inc_len[v]
        while p < end:
            if mark[inc_buf[p + 1]]:
                c += 1
            p += 2
        p = inc_start[u]
        end = p + 2 * inc_len[u]
        while p < end:
            mark[inc_buf[p + 1]] = False
            p += 2
        common_out[e] = c
        if exclude_endpoints:
            denom = deg[u] + deg[v] - 2 - c
        else:
            denom = deg[u] + deg[v] - c
        ov = zero_val if denom == 0 else c / denom
        if ov > eps:
            strong_out[e] = 1
            strong_deg_out[edge_u[e]] += 1
            strong_deg_out[edge_v[e]] += 1
            scount += 1
        else:
            strong_out[e] = 0
    return scount


@njit(cache=True)
def check_adjacency(inc_buf, inc_start, inc_len, deg, edge_u, edge_v,
                    n_nodes, n_edges, half_seen):
    """Structural scan: blocks consistent with the edge table, symmetric, simple.

    ``half_seen`` is an int8 scratch of size n_edges, zeroed by the caller.
    Returns (error_code, offender) where offender is a node or edge id.
    """
    for e in range(n_edges):
        if edge_u[e] == edge_v[e]:
            return ERR_SELF_LOOP, e
    for v in range(n_nodes):
        if inc_len[v] != deg[v]:
            return ERR_LEN_MISMATCH, v
        p = inc_start[v]
        end = p + 2 * inc_len[v]
        while p < end:
            e = inc_buf[p]
            w = inc_buf[p + 1]
            p += 2
            if e < 0 or e >= n_edges:
                return ERR_BAD_EDGE_ID, v
            if w < 0 or w >= n_nodes or w == v:
                return ERR_BAD_ENDPOINT, v
            a = edge_u[e]
            b = edge_v[e]
            if not ((a == v and b == w) or (a == w and b == v)):
                return ERR_BAD_ENDPOINT, e
            half_seen[e] += 1
    for e in range(n_edges):
        if half_seen[e] != 2:
            return ERR_HALF_COUNT, e
    return ERR_OK, -1
