"""Bidirectional conversion between edge tables and the graph structure.

Table to graph runs the sort-first scheme: copy the endpoint columns,
sort them (in parallel), derive exact per-node degree counts from the
sorted runs, pre-size every adjacency vector from those counts, and fill
the vectors in parallel through claimed write cursors.  Because sizes
are exact there is no reallocation and no contention: workers claim
disjoint ranges and write without locks.  The result is identical to a
sequential edge-by-edge replay for any worker count.

Graph to table partitions the nodes among workers, each writing a
pre-assigned slice of the pre-allocated output columns.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .containers import CursorBank
from .errors import CoverageError, TypeMismatchError
from .graphs import Graph, NodeRecord
from .parallel import parallel_sort, resolve_workers, run_partitioned, split_ranges
from .tables import INT, FLOAT, ColumnTable, Schema

_LOW32 = np.uint64(0xFFFFFFFF)


@dataclass(frozen=True)
class EdgeSpec:
    """Names of the edge source and destination columns."""

    src_col: str
    dst_col: str

    def validate(self, table: ColumnTable) -> None:
        for name in (self.src_col, self.dst_col):
            if table.schema.type_of(name) != INT:
                raise TypeMismatchError(
                    f"edge column {name!r} must be integer-typed, "
                    f"got {table.schema.type_of(name)}")


def _dense_ids(src: np.ndarray, dst: np.ndarray):
    """Sorted unique node ids plus rank-dense src/dst index arrays.

    Uses a direct lookup table over the id range when the range is
    narrow enough, falling back to binary search for sparse id spaces.
    """
    cat = np.concatenate((src, dst))
    nodes = np.unique(cat)
    lo, hi = int(nodes[0]), int(nodes[-1])
    width = hi - lo + 1
    if width <= max(1 << 24, 2 * cat.shape[0]) and nodes.shape[0] < (1 << 31):
        lut = np.empty(width, dtype=np.int64)
        lut[nodes - lo] = np.arange(nodes.shape[0], dtype=np.int64)
        return nodes, lut[src - lo], lut[dst - lo]
    return nodes, np.searchsorted(nodes, src), np.searchsorted(nodes, dst)


def _pack(a_dense: np.ndarray, b_dense: np.ndarray) -> np.ndarray:
    return (a_dense.astype(np.uint64) << np.uint64(32)) | b_dense.astype(np.uint64)


def _unpack(packed: np.ndarray):
    return ((packed >> np.uint64(32)).astype(np.int64),
            (packed & _LOW32).astype(np.int64))


def _sorted_unique_pairs(a_dense: np.ndarray, b_dense: np.ndarray,
                         n_nodes: int, workers: int, unique: bool = False):
    """Distinct (a, b) pairs sorted lexicographically, as dense index arrays."""
    if n_nodes < (1 << 32):
        packed = parallel_sort(_pack(a_dense, b_dense), workers)
        if not unique and packed.shape[0]:
            keep = np.empty(packed.shape[0], dtype=bool)
            keep[0] = True
            np.not_equal(packed[1:], packed[:-1], out=keep[1:])
            packed = packed[keep]
        return _unpack(packed)
    order = np.lexsort((b_dense, a_dense))
    a_s, b_s = a_dense[order], b_dense[order]
    if not unique and a_s.shape[0]:
        keep = np.empty(a_s.shape[0], dtype=bool)
        keep[0] = True
        keep[1:] = (a_s[1:] != a_s[:-1]) | (b_s[1:] != b_s[:-1])
        a_s, b_s = a_s[keep], b_s[keep]
    return a_s, b_s


def _fill_pool(pool: np.ndarray, offsets: np.ndarray, degrees: np.ndarray,
               owner_idx: np.ndarray, values: np.ndarray, workers: int) -> set:
    """Scatter sorted run values into per-node pool segments via claimed cursors.

    owner_idx is sorted; each node's run lands in pool[offsets[i]:...+deg].
    Returns the nodes whose segments received more than one claim (they
    span a worker boundary and need a final sort).
    """
    bank = CursorBank(degrees)
    n_edges = owner_idx.shape[0]
    ranges = split_ranges(n_edges, workers)
    boundary: set[int] = set()

    def fill(a, b):
        nodes, counts = np.unique(owner_idx[a:b], return_counts=True)
        starts = bank.claim_many(nodes, counts)
        prefix = np.concatenate(([0], np.cumsum(counts)[:-1]))
        base = offsets[nodes] + starts - prefix
        positions = np.repeat(base, counts) + np.arange(b - a, dtype=np.int64)
        pool[positions] = values[a:b]
        return int(nodes[0]), int(nodes[-1])

    for first, last in run_partitioned(fill, ranges, workers):
        boundary.add(first)
        boundary.add(last)
    # Exact sizing: every cursor must land precisely on its degree.
    assert np.array_equal(bank.cursors, degrees), "degree sizing mismatch"

    # Single-claim segments are copies of sorted runs and need no sort;
    # boundary nodes may interleave two claims and get re-sorted.
    for i in boundary:
        seg = pool[offsets[i]:offsets[i] + degrees[i]]
        seg.sort()
    return boundary


def table_to_graph(table: ColumnTable, spec: EdgeSpec,
                   workers: int | None = None) -> Graph:
    """Build a graph from an edge table using the sort-first algorithm.

    Nodes are the distinct values of the two endpoint columns; duplicate
    rows collapse to a single edge.  Identical to sequential add_edge
    replay of the rows, for any worker count.
    """
    spec.validate(table)
    workers = resolve_workers(workers)
    src = table.column(spec.src_col).copy()
    dst = table.column(spec.dst_col).copy()

    g = Graph()
    if src.shape[0] == 0:
        return g

    nodes, src_d, dst_d = _dense_ids(src, dst)
    n = nodes.shape[0]

    out_src, out_dst = _sorted_unique_pairs(src_d, dst_d, n, workers)
    # The out pass already deduplicated; the in pass only re-sorts.
    in_dst, in_src = _sorted_unique_pairs(out_dst, out_src, n, workers,
                                          unique=True)
    n_edges = out_src.shape[0]

    out_deg = np.bincount(out_src, minlength=n)
    in_deg = np.bincount(in_dst, minlength=n)
    out_off = np.concatenate(([0], np.cumsum(out_deg)))
    in_off = np.concatenate(([0], np.cumsum(in_deg)))

    out_pool = np.empty(n_edges, dtype=np.int64)
    in_pool = np.empty(n_edges, dtype=np.int64)
    _fill_pool(out_pool, out_off[:-1], out_deg, out_src, nodes[out_dst], workers)
    _fill_pool(in_pool, in_off[:-1], in_deg, in_dst, nodes[in_src], workers)
    out_pool.flags.writeable = False
    in_pool.flags.writeable = False

    records = g._nodes
    ids = nodes.tolist()
    oo, io = out_off.tolist(), in_off.tolist()
    for i, node_id in enumerate(ids):
        records[node_id] = NodeRecord(
            node_id,
            in_nbrs=in_pool[io[i]:io[i + 1]],
            out_nbrs=out_pool[oo[i]:oo[i + 1]])
    g._edge_count = n_edges
    return g


def graph_to_edge_table(g: Graph, workers: int | None = None) -> ColumnTable:
    """Export edges as a two-column table sorted by (src, dst)."""
    workers = resolve_workers(workers)
    ids = np.asarray(g.node_ids(), dtype=np.int64)
    recs = [g.record(int(i)) for i in ids.tolist()]
    lens = np.asarray([r.out_nbrs.shape[0] for r in recs], dtype=np.int64)
    offsets = np.concatenate(([0], np.cumsum(lens)))
    n_edges = int(offsets[-1])
    src = np.empty(n_edges, dtype=np.int64)
    dst = np.empty(n_edges, dtype=np.int64)

    def fill(a, b):
        lo, hi = offsets[a], offsets[b]
        if lo == hi:
            return
        src[lo:hi] = np.repeat(ids[a:b], lens[a:b])
        dst[lo:hi] = np.concatenate([r.out_nbrs for r in recs[a:b]])

    run_partitioned(fill, split_ranges(ids.shape[0], workers), workers)
    return ColumnTable(Schema([("src", INT), ("dst", INT)]), [src, dst])


def graph_to_node_table(g: Graph, values=None,
                        value_name: str = "value") -> ColumnTable:
    """Per-node table (node, out_deg, in_deg[, value]), ascending by id."""
    ids = g.node_ids()
    if values is not None:
        if set(values.keys()) != set(ids):
            raise CoverageError(
                "values mapping must cover exactly the node set "
                f"({len(values)} values for {len(ids)} nodes)")
    node_arr = np.asarray(ids, dtype=np.int64)
    out_deg = np.asarray([g.record(n).out_nbrs.shape[0] for n in ids], dtype=np.int64)
    in_deg = np.asarray([g.record(n).in_nbrs.shape[0] for n in ids], dtype=np.int64)
    cols = [node_arr, out_deg, in_deg]
    schema_cols = [("node", INT), ("out_deg", INT), ("in_deg", INT)]
    if values is not None:
        cols.append(np.asarray([float(values[n]) for n in ids], dtype=np.float64))
        schema_cols.append((value_name, FLOAT))
    return ColumnTable(Schema(schema_cols), cols)
