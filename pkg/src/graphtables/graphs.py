"""Dynamic directed simple graph stored as a hash table of nodes.

Each node record keeps two sorted adjacency vectors (in-neighbors and
out-neighbors), so a single edge insert or delete costs time linear in
the node degree rather than in the total edge count.  Parallel edges
collapse; self-loops are allowed.

The node table is a dict: CPython's dict is already an open-addressing
hash table, and mutation happens only under exclusive access.  Parallel
construction goes through the converters build path instead.
"""

from __future__ import annotations

import numpy as np

from .errors import UnknownNodeError

_EMPTY = np.empty(0, dtype=np.int64)
_EMPTY.flags.writeable = False


def _insert_sorted(arr: np.ndarray, value: int):
    """Insert into a sorted vector, deduplicating; returns (vector, inserted)."""
    pos = int(np.searchsorted(arr, value))
    if pos < arr.shape[0] and arr[pos] == value:
        return arr, False
    out = np.insert(arr, pos, value)
    out.flags.writeable = False
    return out, True


def _remove_sorted(arr: np.ndarray, value: int):
    pos = int(np.searchsorted(arr, value))
    if pos >= arr.shape[0] or arr[pos] != value:
        return arr, False
    out = np.delete(arr, pos)
    out.flags.writeable = False
    return out, True


class NodeRecord:
    """Node id plus its sorted in/out adjacency vectors."""

    __slots__ = ("id", "in_nbrs", "out_nbrs")

    def __init__(self, node_id: int, in_nbrs=_EMPTY, out_nbrs=_EMPTY):
        self.id = node_id
        self.in_nbrs = in_nbrs
        self.out_nbrs = out_nbrs


class Graph:
    """Directed simple graph; node ids are arbitrary 64-bit integers."""

    def __init__(self):
        self._nodes: dict[int, NodeRecord] = {}
        self._edge_count = 0

    # -- counts and iteration ---------------------------------------------

    @property
    def node_count(self) -> int:
        return len(self._nodes)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def has_node(self, node_id: int) -> bool:
        return node_id in self._nodes

    def has_edge(self, src: int, dst: int) -> bool:
        rec = self._nodes.get(src)
        if rec is None:
            return False
        pos = int(np.searchsorted(rec.out_nbrs, dst))
        return pos < rec.out_nbrs.shape[0] and rec.out_nbrs[pos] == dst

    def node_ids(self) -> list[int]:
        """Node ids in ascending order (the hash table itself is unordered)."""
        return sorted(self._nodes)

    def record(self, node_id: int) -> NodeRecord:
        rec = self._nodes.get(node_id)
        if rec is None:
            raise UnknownNodeError(f"node {node_id} not in graph")
        return rec

    # -- mutation -----------------------------------------------------------

    def add_node(self, node_id: int) -> bool:
        if node_id in self._nodes:
            return False
        self._nodes[node_id] = NodeRecord(int(node_id))
        return True

    def add_edge(self, src: int, dst: int) -> bool:
        """Add src->dst, creating endpoints as needed; False if present."""
        self.add_node(src)
        self.add_node(dst)
        srec = self._nodes[src]
        out, inserted = _insert_sorted(srec.out_nbrs, dst)
        if not inserted:
            return False
        srec.out_nbrs = out
        drec = self._nodes[dst]
        drec.in_nbrs, _ = _insert_sorted(drec.in_nbrs, src)
        self._edge_count += 1
        return True

    def del_edge(self, src: int, dst: int) -> bool:
        srec = self._nodes.get(src)
        if srec is None:
            return False
        out, removed = _remove_sorted(srec.out_nbrs, dst)
        if not removed:
            return False
        srec.out_nbrs = out
        drec = self._nodes[dst]
        drec.in_nbrs, _ = _remove_sorted(drec.in_nbrs, src)
        self._edge_count -= 1
        return True

    def del_node(self, node_id: int) -> bool:
        """Remove a node and every incident edge."""
        rec = self._nodes.get(node_id)
        if rec is None:
            return False
        removed_edges = rec.out_nbrs.shape[0]
        for dst in rec.out_nbrs.tolist():
            if dst == node_id:
                continue
            drec = self._nodes[dst]
            drec.in_nbrs, _ = _remove_sorted(drec.in_nbrs, node_id)
        for src in rec.in_nbrs.tolist():
            if src == node_id:
                continue
            srec = self._nodes[src]
            srec.out_nbrs, _ = _remove_sorted(srec.out_nbrs, node_id)
            removed_edges += 1
        del self._nodes[node_id]
        self._edge_count -= removed_edges
        return True

    # -- access -------------------------------------------------------------

    def neighbors(self, node_id: int, direction: str = "out") -> np.ndarray:
        """Sorted adjacency vector of a node (read-only view)."""
        rec = self.record(node_id)
        if direction == "out":
            return rec.out_nbrs
        if direction == "in":
            return rec.in_nbrs
        raise ValueError(f"direction must be 'in' or 'out', got {direction!r}")

    def out_degree(self, node_id: int) -> int:
        return int(self.record(node_id).out_nbrs.shape[0])

    def in_degree(self, node_id: int) -> int:
        return int(self.record(node_id).in_nbrs.shape[0])

    def undirected_neighbors(self, node_id: int) -> np.ndarray:
        """Distinct neighbors in either direction, self excluded."""
        rec = self.record(node_id)
        merged = np.union1d(rec.in_nbrs, rec.out_nbrs)
        return merged[merged != node_id]

    def subgraph(self, node_ids) -> "Graph":
        """Induced subgraph on the given node ids."""
        keep = set(int(n) for n in node_ids)
        sub = Graph()
        for n in keep:
            rec = self.record(n)
            kept_out = np.asarray(
                [d for d in rec.out_nbrs.tolist() if d in keep], dtype=np.int64)
            kept_in = np.asarray(
                [s for s in rec.in_nbrs.tolist() if s in keep], dtype=np.int64)
            kept_out.flags.writeable = False
            kept_in.flags.writeable = False
            sub._nodes[n] = NodeRecord(n, in_nbrs=kept_in, out_nbrs=kept_out)
            sub._edge_count += kept_out.shape[0]
        return sub

    def memory_bytes(self) -> int:
        """Rough in-memory footprint of the adjacency structure."""
        per_node = 120  # record object + two array headers + dict slot
        total = len(self._nodes) * per_node
        for rec in self._nodes.values():
            total += rec.in_nbrs.nbytes + rec.out_nbrs.nbytes
        return total

    # -- equality and invariants ----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        if self._nodes.keys() != other._nodes.keys():
            return False
        if self._edge_count != other._edge_count:
            return False
        for n, rec in self._nodes.items():
            if not np.array_equal(rec.out_nbrs, other._nodes[n].out_nbrs):
                return False
        return True

    def __repr__(self):
        return f"Graph(nodes={self.node_count}, edges={self.edge_count})"

    def check_invariants(self) -> None:
        """Assert sortedness, in/out symmetry, and the edge-count identity."""
        total_out = 0
        total_in = 0
        for n, rec in self._nodes.items():
            for vec in (rec.out_nbrs, rec.in_nbrs):
                if vec.shape[0] > 1:
                    assert bool(np.all(np.diff(vec) > 0)), f"unsorted vector at {n}"
            total_out += rec.out_nbrs.shape[0]
            total_in += rec.in_nbrs.shape[0]
            for dst in rec.out_nbrs.tolist():
                other = self._nodes[dst].in_nbrs
                pos = int(np.searchsorted(other, n))
                assert pos < other.shape[0] and other[pos] == n, \
                    f"missing in-entry for edge ({n}, {dst})"
        assert total_out == total_in == self._edge_count, \
            f"edge count {self._edge_count} != sum of degrees {total_out}/{total_in}"


def from_edges(edges) -> Graph:
    """Build a graph by sequential edge replay (the conversion oracle)."""
    g = Graph()
    for src, dst in edges:
        g.add_edge(int(src), int(dst))
    return g
