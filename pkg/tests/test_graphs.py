"""Dynamic graph contracts, including the adjacency-matrix replay fuzz."""

import numpy as np
import pytest

from graphtables import Graph, UnknownNodeError, from_edges
from oracles import MatrixGraph


def graph_edges(g: Graph) -> set:
    out = set()
    for u in g.node_ids():
        for v in g.neighbors(u, "out").tolist():
            out.add((u, v))
    return out


class TestNodes:
    def test_add_is_idempotent(self):
        g = Graph()
        assert g.add_node(5) is True
        assert g.add_node(5) is False
        assert g.node_count == 1

    def test_counts(self):
        g = Graph()
        for n in (1, 2, 3):
            g.add_node(n)
        assert g.node_count == 3
        assert g.edge_count == 0

    def test_negative_ids_accepted(self):
        g = Graph()
        assert g.add_node(-1) is True
        g.add_edge(-1, -2)
        assert g.has_edge(-1, -2)

    def test_delete_absent(self):
        assert Graph().del_node(9) is False

    def test_delete_isolated(self):
        g = Graph()
        g.add_edge(1, 2)
        g.add_node(3)
        assert g.del_node(3) is True
        assert g.edge_count == 1

    def test_delete_star_center(self):
        g = from_edges([(0, 1), (0, 2), (0, 3)])
        assert g.del_node(0) is True
        assert g.node_count == 3
        assert g.edge_count == 0
        g.check_invariants()


class TestEdges:
    def test_duplicate_edge_collapses(self):
        g = Graph()
        assert g.add_edge(1, 2) is True
        assert g.add_edge(1, 2) is False
        assert g.edge_count == 1

    def test_self_loop(self):
        g = Graph()
        g.add_edge(1, 1)
        assert g.neighbors(1, "out").tolist() == [1]
        assert g.neighbors(1, "in").tolist() == [1]
        g.check_invariants()

    def test_k3_both_directions(self):
        g = from_edges([(a, b) for a in range(3) for b in range(3) if a != b])
        assert g.edge_count == 6
        assert all(g.out_degree(n) == 2 for n in range(3))

    def test_delete_existing_and_absent(self):
        g = from_edges([(1, 2)])
        assert g.del_edge(1, 2) is True
        assert g.edge_count == 0
        assert g.del_edge(1, 2) is False
        assert g.del_edge(8, 9) is False
        g.check_invariants()

    def test_delete_self_loop_node(self):
        g = from_edges([(1, 1), (1, 2), (3, 1)])
        assert g.del_node(1) is True
        assert g.edge_count == 0
        assert g.node_count == 2
        g.check_invariants()


class TestNeighbors:
    def test_out_sorted(self):
        g = from_edges([(1, 3), (1, 2)])
        assert g.neighbors(1, "out").tolist() == [2, 3]

    def test_in_star(self):
        g = from_edges([(1, 9), (2, 9), (3, 9)])
        assert g.neighbors(9, "in").tolist() == [1, 2, 3]

    def test_unknown_node(self):
        with pytest.raises(UnknownNodeError):
            Graph().neighbors(4, "out")

    def test_view_is_read_only(self):
        g = from_edges([(1, 2)])
        with pytest.raises(ValueError):
            g.neighbors(1, "out")[0] = 99


class TestSubgraphAndEquality:
    def test_induced_subgraph(self):
        g = from_edges([(0, 1), (1, 2), (2, 0), (2, 3)])
        sub = g.subgraph([0, 1, 2])
        assert sub.node_count == 3
        assert graph_edges(sub) == {(0, 1), (1, 2), (2, 0)}
        sub.check_invariants()

    def test_equality(self):
        a = from_edges([(1, 2), (2, 3)])
        b = from_edges([(2, 3), (1, 2)])
        assert a == b
        b.add_edge(3, 1)
        assert a != b


class TestMatrixOracleFuzz:
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_random_ops_match_matrix(self, seed):
        rng = np.random.default_rng(seed)
        universe = list(range(50))
        g = Graph()
        m = MatrixGraph(universe)
        for _ in range(3000):
            op = rng.integers(0, 100)
            a = int(rng.integers(0, 50))
            b = int(rng.integers(0, 50))
            if op < 55:
                assert g.add_edge(a, b) == m.add_edge(a, b)
            elif op < 80:
                assert g.del_edge(a, b) == m.del_edge(a, b)
            elif op < 90:
                assert g.add_node(a) == m.add_node(a)
            else:
                assert g.del_node(a) == m.del_node(a)
        assert graph_edges(g) == m.edges()
        assert set(g.node_ids()) == m.alive
        assert g.edge_count == len(m.edges())
        g.check_invariants()
