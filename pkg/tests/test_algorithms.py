"""Analytics kernels vs dense/naive oracles on randomized graphs."""

import numpy as np
import pytest

import oracles
from graphtables import (
    Graph,
    UnknownNodeError,
    connected_components,
    from_edges,
    k_core,
    pagerank,
    scc,
    sssp,
    triangle_count,
)
from util import adjacency_of, random_digraph


def rank_vector(g, **kw):
    pr = pagerank(g, **kw)
    ids = sorted(pr)
    return np.asarray([pr[n] for n in ids]), ids


class TestPageRank:
    def test_self_loop_fixed_point(self):
        g = from_edges([(1, 1)])
        for iters in (1, 5, 20):
            assert pagerank(g, iterations=iters)[1] == pytest.approx(1.0, abs=1e-12)

    def test_two_cycle_symmetry(self):
        g = from_edges([(0, 1), (1, 0)])
        pr = pagerank(g, damping=0.85, iterations=10)
        assert pr[0] == pytest.approx(0.5, abs=1e-12)
        assert pr[1] == pytest.approx(0.5, abs=1e-12)

    def test_in_star_matches_dense_oracle_at_convergence(self):
        g = from_edges([(1, 0), (2, 0), (3, 0)])
        score, ids = rank_vector(g, damping=0.85, iterations=100)
        expect = oracles.dense_pagerank(adjacency_of(g, 4), 0.85, 100)
        assert np.max(np.abs(score - expect[ids])) < 1e-9

    def test_conservation_every_iteration(self):
        rng = np.random.default_rng(1)
        for _ in range(5):
            g = random_digraph(rng, int(rng.integers(2, 40)), 0.15)
            for iters in range(1, 11):
                score, _ = rank_vector(g, iterations=iters)
                assert abs(score.sum() - 1.0) < 1e-9

    def test_matches_dense_oracle_random(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            n = int(rng.integers(2, 100))
            g = random_digraph(rng, n, float(rng.uniform(0.02, 0.3)))
            score, ids = rank_vector(g, damping=0.85, iterations=10)
            expect = oracles.dense_pagerank(adjacency_of(g, n), 0.85, 10)
            assert np.max(np.abs(score - expect[ids])) < 1e-9

    def test_worker_independence_is_exact(self):
        rng = np.random.default_rng(3)
        g = random_digraph(rng, 300, 0.05)
        seq, _ = rank_vector(g, workers=1)
        par, _ = rank_vector(g, workers=8)
        assert np.array_equal(seq, par)

    def test_parameter_validation(self):
        g = from_edges([(0, 1)])
        with pytest.raises(ValueError):
            pagerank(g, damping=1.0)
        with pytest.raises(ValueError):
            pagerank(g, iterations=0)
        with pytest.raises(ValueError):
            pagerank(Graph())


class TestTriangles:
    def test_k4(self):
        g = from_edges([(a, b) for a in range(4) for b in range(4) if a < b])
        assert triangle_count(g) == 4

    def test_path_has_none(self):
        g = from_edges([(i, i + 1) for i in range(9)])
        assert triangle_count(g) == 0

    def test_self_loops_ignored(self):
        g = from_edges([(0, 0), (0, 1), (1, 2), (2, 0)])
        assert triangle_count(g) == 1

    def test_direction_flips_do_not_change_count(self):
        rng = np.random.default_rng(4)
        g = random_digraph(rng, 40, 0.1)
        base = triangle_count(g)
        flipped = Graph()
        for u in g.node_ids():
            flipped.add_node(u)
            for v in g.neighbors(u, "out").tolist():
                if rng.random() < 0.5:
                    flipped.add_edge(v, u)
                else:
                    flipped.add_edge(u, v)
        assert triangle_count(flipped) == base

    def test_random_vs_cubic_enumeration(self):
        rng = np.random.default_rng(5)
        for _ in range(15):
            n = int(rng.integers(2, 128))
            g = random_digraph(rng, n, 0.1)
            adj = adjacency_of(g, n)
            sym = adj | adj.T
            assert triangle_count(g, workers=4) == oracles.cubic_triangles(sym)


class TestSssp:
    def test_source_is_zero(self):
        g = from_edges([(0, 1)])
        assert sssp(g, 0)[0] == 0

    def test_chain(self):
        g = from_edges([(0, 1), (1, 2), (2, 3)])
        assert sssp(g, 0) == {0: 0, 1: 1, 2: 2, 3: 3}

    def test_unreachable_marker(self):
        g = from_edges([(0, 1)])
        g.add_node(5)
        assert sssp(g, 0)[5] is None

    def test_unknown_source(self):
        with pytest.raises(UnknownNodeError):
            sssp(Graph(), 3)

    def test_random_vs_floyd_warshall(self):
        rng = np.random.default_rng(6)
        for _ in range(10):
            n = int(rng.integers(2, 60))
            g = random_digraph(rng, n, 0.08)
            dist = oracles.floyd_warshall_hops(adjacency_of(g, n))
            src = int(rng.integers(0, n))
            got = sssp(g, src)
            for v in range(n):
                expect = None if np.isinf(dist[src, v]) else int(dist[src, v])
                assert got[v] == expect

    def test_triangle_inequality(self):
        rng = np.random.default_rng(7)
        g = random_digraph(rng, 80, 0.05)
        got = sssp(g, 0)
        for u in g.node_ids():
            if got[u] is None:
                continue
            for v in g.neighbors(u, "out").tolist():
                assert got[v] is not None and got[v] <= got[u] + 1


class TestScc:
    def test_cycle_is_one_component(self):
        g = from_edges([(0, 1), (1, 2), (2, 0)])
        assert len(set(scc(g).values())) == 1

    def test_chain_is_singletons(self):
        g = from_edges([(0, 1), (1, 2), (2, 3)])
        labels = scc(g)
        assert len(set(labels.values())) == 4

    def test_labels_are_dense(self):
        g = from_edges([(0, 1), (1, 0), (2, 3)])
        labels = scc(g)
        assert set(labels.values()) == set(range(len(set(labels.values()))))

    def test_random_vs_transitive_closure(self):
        rng = np.random.default_rng(8)
        for _ in range(15):
            n = int(rng.integers(2, 80))
            g = random_digraph(rng, n, float(rng.uniform(0.02, 0.12)))
            labels = scc(g)
            got = {}
            for node, lab in labels.items():
                got.setdefault(lab, set()).add(node)
            partition = {frozenset(v) for v in got.values()}
            assert partition == oracles.scc_partition(adjacency_of(g, n))

    def test_condensation_is_acyclic(self):
        rng = np.random.default_rng(9)
        g = random_digraph(rng, 60, 0.06)
        labels = scc(g)
        cond = set()
        for u in g.node_ids():
            for v in g.neighbors(u, "out").tolist():
                if labels[u] != labels[v]:
                    cond.add((labels[u], labels[v]))
        comp_graph = from_edges(cond) if cond else Graph()
        comp_labels = scc(comp_graph)
        counts = {}
        for lab in comp_labels.values():
            counts[lab] = counts.get(lab, 0) + 1
        assert all(c == 1 for c in counts.values())


class TestKCore:
    def test_k4_survives_k3(self):
        g = from_edges([(a, b) for a in range(4) for b in range(4) if a < b])
        core = k_core(g, 3)
        assert core.node_count == 4

    def test_tree_has_no_2_core(self):
        g = from_edges([(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)])
        assert k_core(g, 2).node_count == 0

    def test_random_vs_naive_peeling(self):
        rng = np.random.default_rng(10)
        for _ in range(15):
            n = int(rng.integers(2, 90))
            k = int(rng.integers(1, 5))
            g = random_digraph(rng, n, float(rng.uniform(0.03, 0.15)))
            adj = adjacency_of(g, n)
            expect = oracles.naive_k_core(adj | adj.T, k)
            core = k_core(g, k)
            assert set(core.node_ids()) == expect
            core.check_invariants()

    def test_core_is_maximal(self):
        rng = np.random.default_rng(11)
        g = random_digraph(rng, 40, 0.12)
        core = k_core(g, 3)
        survivors = set(core.node_ids())
        for n in core.node_ids():
            assert len(core.undirected_neighbors(n)) >= 3
        for peeled in set(g.node_ids()) - survivors:
            candidate = g.subgraph(sorted(survivors | {peeled}))
            assert len(candidate.undirected_neighbors(peeled)) < 3


class TestConnectedComponents:
    def test_two_disjoint_edges(self):
        g = from_edges([(0, 1), (5, 6)])
        assert len(set(connected_components(g).values())) == 2

    def test_empty_graph(self):
        assert connected_components(Graph()) == {}

    def test_random_vs_union_find(self):
        rng = np.random.default_rng(12)
        for _ in range(15):
            n = int(rng.integers(1, 100))
            g = random_digraph(rng, n, 0.04)
            got = connected_components(g)
            edges = [(u, v) for u in g.node_ids()
                     for v in g.neighbors(u, "out").tolist()]
            roots = oracles.union_find_components(n, edges)
            groups = {}
            for node, root in roots.items():
                groups.setdefault(root, set()).add(node)
            expect = {frozenset(v) for v in groups.values()}
            mine = {}
            for node, lab in got.items():
                mine.setdefault(lab, set()).add(node)
            assert {frozenset(v) for v in mine.values()} == expect
