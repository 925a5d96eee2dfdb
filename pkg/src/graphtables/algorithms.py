"""Analytics kernels: PageRank, triangles, BFS distances, SCC, k-core, CC.

PageRank and triangle counting are data-parallel over nodes; both fix
their per-node evaluation order so any worker count produces identical
results (bitwise, for PageRank).  The traversal algorithms are
single-threaded; they are fast enough at in-memory scale and iterate
nodes in ascending id order for deterministic labelling.

Undirected notions (triangles, k-core, connected components) view the
directed graph symmetrized: u~v iff an edge exists in either direction.
Self-loops count for PageRank (a legitimate out-edge) but are ignored by
triangle counting and k-core degrees.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from .graphs import Graph
from .parallel import resolve_workers, run_partitioned, split_ranges


class _DenseIndex:
    """Ascending node ids and their dense 0..N-1 indexing."""

    def __init__(self, g: Graph):
        self.ids = np.asarray(g.node_ids(), dtype=np.int64)
        self.n = self.ids.shape[0]

    def dense(self, node_ids: np.ndarray) -> np.ndarray:
        return np.searchsorted(self.ids, node_ids)


def pagerank(g: Graph, damping: float = 0.85, iterations: int = 10,
             workers: int | None = None) -> dict[int, float]:
    """Damped power iteration with uniform dangling-mass redistribution.

    Starts uniform at 1/N and runs a fixed iteration count.  Scores sum
    to one after every iteration.  Per-node in-neighbor contributions
    accumulate in ascending neighbor order, so results do not depend on
    the worker count.
    """
    if not 0.0 < damping < 1.0:
        raise ValueError(f"damping must be in (0, 1), got {damping}")
    if iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {iterations}")
    if g.node_count == 0:
        raise ValueError("pagerank needs a non-empty graph")
    workers = resolve_workers(workers)

    idx = _DenseIndex(g)
    n = idx.n
    recs = [g.record(int(i)) for i in idx.ids.tolist()]
    out_deg = np.asarray([r.out_nbrs.shape[0] for r in recs], dtype=np.int64)
    in_lens = np.asarray([r.in_nbrs.shape[0] for r in recs], dtype=np.int64)
    # In-edges grouped by destination, sources ascending within each group.
    in_flat = (np.concatenate([idx.dense(r.in_nbrs) for r in recs])
               if in_lens.sum() else np.empty(0, dtype=np.int64))
    in_off = np.concatenate(([0], np.cumsum(in_lens)))
    edge_dst = np.repeat(np.arange(n, dtype=np.int64), in_lens)

    dangling_mask = out_deg == 0
    inv_out = np.zeros(n, dtype=np.float64)
    np.divide(1.0, out_deg, where=~dangling_mask, out=inv_out)

    node_ranges = split_ranges(n, workers)
    score = np.full(n, 1.0 / n, dtype=np.float64)
    new_score = np.empty(n, dtype=np.float64)

    for _ in range(iterations):
        contrib = score * inv_out
        dangling = float(score[dangling_mask].sum())
        base = (1.0 - damping) / n + damping * (dangling / n)

        def accumulate(a, b):
            lo, hi = int(in_off[a]), int(in_off[b])
            sums = np.bincount(edge_dst[lo:hi] - a,
                               weights=contrib[in_flat[lo:hi]],
                               minlength=b - a)
            new_score[a:b] = base + damping * sums

        run_partitioned(accumulate, node_ranges, workers)
        score, new_score = new_score, score

    return {int(i): float(s) for i, s in zip(idx.ids.tolist(), score.tolist())}


def triangle_count(g: Graph, workers: int | None = None) -> int:
    """Count unordered mutually-adjacent triples in the symmetrized graph.

    Each node keeps only neighbors ranked above it by (degree, id); a
    triangle is then found exactly once, by sorted-vector intersection
    at its lowest-ranked corner.
    """
    workers = resolve_workers(workers)
    idx = _DenseIndex(g)
    n = idx.n
    if n == 0:
        return 0
    und = [idx.dense(g.undirected_neighbors(int(i))) for i in idx.ids.tolist()]
    deg = np.asarray([u.shape[0] for u in und], dtype=np.int64)
    by_rank = np.lexsort((np.arange(n), deg))
    rank = np.empty(n, dtype=np.int64)
    rank[by_rank] = np.arange(n)

    higher = [u[rank[u] > rank[i]] for i, u in enumerate(und)]

    def count_range(a, b):
        total = 0
        for i in range(a, b):
            hi = higher[i]
            for j in hi.tolist():
                total += np.intersect1d(hi, higher[j], assume_unique=True).shape[0]
        return total

    parts = run_partitioned(count_range, split_ranges(n, workers), workers)
    return int(sum(parts))


_UNREACHABLE = None


def sssp(g: Graph, source: int) -> dict[int, int | None]:
    """Hop distances from source along directed edges (BFS).

    Unreachable nodes map to None.
    """
    g.record(source)
    dist = {n: None for n in g.node_ids()}
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        d = dist[u] + 1
        for v in g.record(u).out_nbrs.tolist():
            if dist[v] is None:
                dist[v] = d
                queue.append(v)
    return dist


def scc(g: Graph) -> dict[int, int]:
    """Strongly connected components; labels dense in discovery order.

    Iterative Tarjan over nodes in ascending id order.
    """
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    comp: dict[int, int] = {}
    next_index = 0
    n_comps = 0

    for root in g.node_ids():
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, child = work[-1]
            if child == 0:
                index[v] = low[v] = next_index
                next_index += 1
                stack.append(v)
                on_stack.add(v)
            out = g.record(v).out_nbrs
            advanced = False
            while child < out.shape[0]:
                w = int(out[child])
                child += 1
                if w not in index:
                    work[-1] = (v, child)
                    work.append((w, 0))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp[w] = n_comps
                    if w == v:
                        break
                n_comps += 1

    # Relabel densely by first occurrence over ascending node ids.
    remap: dict[int, int] = {}
    labels: dict[int, int] = {}
    for n in g.node_ids():
        c = comp[n]
        if c not in remap:
            remap[c] = len(remap)
        labels[n] = remap[c]
    return labels


def k_core(g: Graph, k: int) -> Graph:
    """Maximal subgraph whose nodes all have >= k distinct undirected neighbors.

    Iteratively peels under-degree nodes; returns the induced subgraph on
    the survivors (a new graph, original edges among them).
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    ids = g.node_ids()
    nbrs = {n: g.undirected_neighbors(n).tolist() for n in ids}
    deg = {n: len(v) for n, v in nbrs.items()}
    alive = set(ids)
    queue = deque(n for n in ids if deg[n] < k)
    while queue:
        n = queue.popleft()
        if n not in alive:
            continue
        alive.discard(n)
        for m in nbrs[n]:
            if m in alive:
                deg[m] -= 1
                if deg[m] == k - 1:
                    queue.append(m)
    return g.subgraph(sorted(alive))


def connected_components(g: Graph) -> dict[int, int]:
    """Weakly connected components of the symmetrized graph; dense labels."""
    labels: dict[int, int] = {}
    next_label = 0
    for start in g.node_ids():
        if start in labels:
            continue
        labels[start] = next_label
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in g.undirected_neighbors(u).tolist():
                if v not in labels:
                    labels[v] = next_label
                    queue.append(v)
        next_label += 1
    return labels
