import numpy as np
import pytest

from strongties import ConfigError, EvolvingGraph, NodeNotFoundError, make_rng


def edge_set(g):
    return {(min(u, v), max(u, v)) for u, v in g.edges()}


class TestCompleteSeed:
    def test_k2(self):
        g = EvolvingGraph.complete(2)
        assert g.node_count == 2
        assert g.edge_count == 1
        assert [g.degree(v) for v in range(2)] == [1, 1]

    def test_k3(self):
        g = EvolvingGraph.complete(3)
        assert g.node_count == 3
        assert g.edge_count == 3
        assert [g.degree(v) for v in range(3)] == [2, 2, 2]

    def test_k25(self):
        g = EvolvingGraph.complete(25)
        assert g.node_count == 25
        assert g.edge_count == 300
        assert all(g.degree(v) == 24 for v in range(25))

    def test_too_small(self):
        with pytest.raises(ConfigError):
            EvolvingGraph.complete(1)
        with pytest.raises(ConfigError):
            EvolvingGraph.complete(0)


class TestFromEdges:
    def test_path(self):
        g = EvolvingGraph.from_edges(3, [(0, 1), (1, 2)])
        assert g.degree(1) == 2
        assert g.neighbors(1) == {0, 2}
        assert not g.has_edge(0, 2)

    def test_rejects_self_loop(self):
        with pytest.raises(ConfigError):
            EvolvingGraph.from_edges(2, [(0, 0)])

    def test_rejects_duplicate(self):
        with pytest.raises(ConfigError):
            EvolvingGraph.from_edges(2, [(0, 1), (1, 0)])

    def test_rejects_out_of_range(self):
        with pytest.raises(ConfigError):
            EvolvingGraph.from_edges(2, [(0, 2)])

    def test_isolated_nodes_allowed(self):
        g = EvolvingGraph.from_edges(4, [(0, 1)])
        assert g.node_count == 4
        assert g.degree(3) == 0


class TestViews:
    def test_k3_neighbors(self):
        g = EvolvingGraph.complete(3)
        assert g.neighbors(0) == {1, 2}
        assert g.node_count == 3

    def test_unknown_node(self):
        g = EvolvingGraph.complete(3)
        with pytest.raises(NodeNotFoundError):
            g.neighbors(3)
        with pytest.raises(NodeNotFoundError):
            g.degree(-1)

    def test_degree_after_forced_attachment(self):
        g = EvolvingGraph.complete(2)
        new, targets = g.add_node_preferential(2, make_rng(1))
        assert new == 2
        assert targets == {0, 1}
        assert g.degree(new) == 2

    def test_endpoint_multiset_matches_degrees(self):
        g = EvolvingGraph.complete(4)
        rng = make_rng(7)
        for _ in range(50):
            g.add_node_preferential(3, rng)
        ms = g.endpoint_multiset()
        assert ms.size == 2 * g.edge_count
        counts = np.bincount(ms, minlength=g.node_count)
        assert counts.tolist() == [g.degree(v) for v in range(g.node_count)]

    def test_edge_id_lookup(self):
        g = EvolvingGraph.from_edges(3, [(0, 1), (1, 2)])
        assert g.edge_id(0, 1) == 0
        assert g.edge_id(2, 1) == 1
        assert g.edge_id(0, 2) is None


class TestSampleTargets:
    def test_k2_forced(self):
        g = EvolvingGraph.complete(2)
        assert g.sample_targets(2, make_rng(123)) == {0, 1}

    def test_star_single_draw_probability(self):
        # center 0 with three leaves: multiset gives the center 3 of 6 slots,
        # so a single draw picks it with probability 1/2
        g = EvolvingGraph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        ms = g.endpoint_multiset()
        assert np.count_nonzero(ms == 0) / ms.size == 0.5
        rng = make_rng(5)
        draws = 20_000
        hits = sum(1 for _ in range(draws) if g.sample_targets(1, rng) == {0})
        assert abs(hits / draws - 0.5) < 0.02

    def test_k3_draw_frequencies(self):
        # uniform-degree case: each node within 1/3 +- 0.005 over 10^6 draws,
        # chi-squared goodness of fit at significance 0.01
        from scipy.stats import chisquare

        g = EvolvingGraph.complete(3)
        rng = make_rng(99)
        draws = 1_000_000
        counts = np.zeros(3, np.int64)
        for _ in range(draws):
            (v,) = g.sample_targets(1, rng)
            counts[v] += 1
        freqs = counts / draws
        assert np.all(np.abs(freqs - 1 / 3) < 0.005)
        assert chisquare(counts).pvalue > 0.01

    def test_errors(self):
        g = EvolvingGraph.complete(3)
        with pytest.raises(ConfigError):
            g.sample_targets(4, make_rng(0))
        with pytest.raises(ConfigError):
            g.sample_targets(0, make_rng(0))
        edgeless = EvolvingGraph.from_edges(3, [])
        with pytest.raises(ConfigError):
            edgeless.sample_targets(1, make_rng(0))

    def test_isolated_nodes_not_sampleable(self):
        # nodes with no edges never appear in the multiset; asking for more
        # targets than there are attached nodes must fail, not spin
        g = EvolvingGraph.from_edges(4, [(0, 1)])
        with pytest.raises(ConfigError):
            g.sample_targets(3, make_rng(0))
        assert g.sample_targets(2, make_rng(0)) == {0, 1}

    def test_distinct_and_existing(self):
        g = EvolvingGraph.complete(5)
        rng = make_rng(11)
        for _ in range(30):
            g.add_node_preferential(4, rng)
        for _ in range(100):
            targets = g.sample_targets(5, rng)
            assert len(targets) == 5
            assert all(0 <= v < g.node_count for v in targets)


class TestGrowth:
    def test_k2_plus_node_is_k3(self):
        g = EvolvingGraph.complete(2)
        g.add_node_preferential(2, make_rng(3))
        assert edge_set(g) == {(0, 1), (0, 2), (1, 2)}

    def test_edge_count_formula(self):
        g = EvolvingGraph.complete(5)
        rng = make_rng(17)
        for _ in range(100):
            g.add_node_preferential(5, rng)
        assert g.edge_count == 10 + 500
        assert sum(g.degree(v) for v in range(g.node_count)) == 2 * g.edge_count

    def test_invariants_hold_during_growth(self):
        g = EvolvingGraph.complete(4)
        rng = make_rng(23)
        for step in range(200):
            g.add_node_preferential(3, rng)
            if step % 40 == 0:
                g.check_invariants()
        g.check_invariants()

    def test_determinism(self):
        def grow(seed):
            g = EvolvingGraph.complete(4)
            rng = make_rng(seed)
            for _ in range(150):
                g.add_node_preferential(4, rng)
            return list(g.edges()), g.endpoint_multiset().tolist()

        assert grow(42) == grow(42)
        assert grow(42) != grow(43)

    def test_add_node_attached(self):
        g = EvolvingGraph.complete(3)
        new = g.add_node_attached([0, 2])
        assert new == 3
        assert g.neighbors(3) == {0, 2}
        assert g.edge_count == 5
        g.check_invariants()

    def test_add_node_attached_validation(self):
        g = EvolvingGraph.complete(3)
        with pytest.raises(ConfigError):
            g.add_node_attached([0, 0])
        with pytest.raises(ConfigError):
            g.add_node_attached([])
        with pytest.raises(NodeNotFoundError):
            g.add_node_attached([0, 5])

    def test_simplicity_preserved(self):
        g = EvolvingGraph.complete(3)
        rng = make_rng(31)
        for _ in range(100):
            g.add_node_preferential(3, rng)
        edges = list(g.edges())
        normalized = {(min(u, v), max(u, v)) for u, v in edges}
        assert len(normalized) == len(edges) == g.edge_count
        assert all(u != v for u, v in edges)

    def test_degree_distribution_tail(self):
        # preferential attachment should give a heavy tail: the max degree
        # far exceeds m, and the CCDF slope is near -2 even at modest n
        from strongties import ccdf_loglog_slope

        g = EvolvingGraph.complete(5)
        rng = make_rng(8)
        for _ in range(20_000):
            g.add_node_preferential(5, rng)
        degrees = [g.degree(v) for v in range(g.node_count)]
        assert max(degrees) > 100
        slope = ccdf_loglog_slope(degrees, min_degree=10)
        assert -2.6 < slope < -1.4
