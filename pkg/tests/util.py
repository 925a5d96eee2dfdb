"""Random table and graph builders shared across the suite."""

import numpy as np

from graphtables import ColumnTable, Graph, Schema, from_edges

WORDS = ["red", "green", "blue", "cyan", "teal", "plum", "gray", "gold"]


def random_table(rng, n_rows, spec=None):
    """Random table; spec is a list of (name, type) pairs."""
    if spec is None:
        spec = [("k", "int"), ("x", "float"), ("tag", "str")]
    rows = []
    for _ in range(n_rows):
        row = []
        for _name, typ in spec:
            if typ == "int":
                row.append(int(rng.integers(-20, 21)))
            elif typ == "float":
                row.append(float(np.round(rng.normal(), 3)))
            else:
                row.append(WORDS[int(rng.integers(0, len(WORDS)))])
        rows.append(tuple(row))
    return ColumnTable.from_rows(Schema(spec), rows), rows


def random_digraph(rng, n_nodes, p) -> Graph:
    mask = rng.random((n_nodes, n_nodes)) < p
    src, dst = np.nonzero(mask)
    g = from_edges(zip(src.tolist(), dst.tolist()))
    for n in range(n_nodes):
        g.add_node(n)
    return g


def adjacency_of(g: Graph, n_nodes: int) -> np.ndarray:
    adj = np.zeros((n_nodes, n_nodes), dtype=bool)
    for u in g.node_ids():
        for v in g.neighbors(u, "out").tolist():
            adj[u, v] = True
    return adj
