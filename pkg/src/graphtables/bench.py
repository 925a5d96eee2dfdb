"""Benchmark runner: timed operation runs with one untimed warm-up.

Each benchmark loads its dataset, runs the operation once untimed, then
times the requested number of repetitions and reports the mean wall time
with a derived throughput.  Timing covers only the operation itself,
never dataset loading or graph construction.  Peak memory is the process
peak resident set, reported but never asserted.
"""

from __future__ import annotations

import hashlib
import resource
import time
from dataclasses import dataclass

import numpy as np

from . import algorithms, convert, tables
from .parallel import resolve_workers
from .tables import ColumnTable, Predicate, Schema

GRAPH_OPS = ("pagerank", "triangles", "sssp", "scc", "kcore", "to-table")
TABLE_OPS = ("select", "join", "to-graph")
ALL_OPS = GRAPH_OPS + TABLE_OPS

DEFAULT_EDGE_SCHEMA = "src:int,dst:int"


@dataclass
class BenchReport:
    op: str
    dataset: str
    workers: int
    repetitions: int
    mean_seconds: float
    units_per_second: float
    peak_rss_bytes: int
    result_summary: str

    def tsv_line(self) -> str:
        return "\t".join([
            self.op, self.dataset, str(self.workers), str(self.repetitions),
            f"{self.mean_seconds:.6f}", f"{self.units_per_second:.1f}",
            str(self.peak_rss_bytes),
        ])


def _peak_rss_bytes() -> int:
    return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024


def _digest(payload: bytes) -> str:
    return hashlib.sha1(payload).hexdigest()[:12]


def _rank_summary(ranks: dict[int, float]) -> str:
    arr = np.asarray(sorted(ranks.items()), dtype=np.float64)
    top = max(ranks.items(), key=lambda kv: (kv[1], -kv[0]))
    return f"digest={_digest(arr.tobytes())} top={top[0]}:{top[1]:.6f}"


def run_bench(dataset, op: str, repetitions: int = 5,
              workers: int | None = None, schema: str | None = None,
              seed: int = 0, pred: str | None = None,
              join_col: str | None = None, k: int = 3,
              in_place: bool = False) -> BenchReport:
    """Benchmark one operation against a TSV dataset."""
    if op not in ALL_OPS:
        raise ValueError(f"unknown benchmark op {op!r} (choose from {ALL_OPS})")
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    workers = resolve_workers(workers)
    table = tables.load_tsv(dataset, Schema.parse(schema or DEFAULT_EDGE_SCHEMA))

    graph = None
    if op in GRAPH_OPS:
        names = table.schema.names
        graph = convert.table_to_graph(
            table, convert.EdgeSpec(names[0], names[1]), workers=workers)

    runner, units, summarize = _build_runner(
        op, table, graph, workers=workers, seed=seed, pred=pred,
        join_col=join_col, k=k, in_place=in_place)

    result = runner()  # warm-up, untimed
    times = []
    for _ in range(repetitions):
        t0 = time.perf_counter()
        result = runner()
        times.append(time.perf_counter() - t0)
    mean = sum(times) / len(times)
    if op == "sssp":
        mean /= 10  # each timed run covers the 10 sampled sources
    return BenchReport(
        op=op, dataset=str(dataset), workers=workers, repetitions=repetitions,
        mean_seconds=mean,
        units_per_second=units / mean if mean > 0 else float("inf"),
        peak_rss_bytes=_peak_rss_bytes(),
        result_summary=summarize(result))


def _build_runner(op, table: ColumnTable, graph, *, workers, seed, pred,
                  join_col, k, in_place):
    """Return (callable, unit count, result summarizer) for one op."""
    if op == "pagerank":
        return (lambda: algorithms.pagerank(graph, workers=workers),
                graph.edge_count, _rank_summary)
    if op == "triangles":
        return (lambda: algorithms.triangle_count(graph, workers=workers),
                graph.edge_count, lambda r: f"triangles={r}")
    if op == "sssp":
        rng = np.random.default_rng(seed)
        ids = graph.node_ids()
        sources = [ids[int(rng.integers(0, len(ids)))] for _ in range(10)]

        def run_sssp():
            reached = 0
            for s in sources:
                dist = algorithms.sssp(graph, s)
                reached += sum(1 for d in dist.values() if d is not None)
            return reached

        return run_sssp, graph.edge_count, lambda r: f"reached={r}"
    if op == "scc":
        return (lambda: algorithms.scc(graph), graph.edge_count,
                lambda r: f"components={len(set(r.values()))}")
    if op == "kcore":
        return (lambda: algorithms.k_core(graph, k), graph.edge_count,
                lambda r: f"core_nodes={r.node_count} core_edges={r.edge_count}")
    if op == "to-table":
        return (lambda: convert.graph_to_edge_table(graph, workers=workers),
                graph.edge_count,
                lambda r: f"rows={r.n_rows} digest="
                          f"{_digest(b''.join(c.tobytes() for c in r.columns))}")
    if op == "to-graph":
        names = table.schema.names
        spec = convert.EdgeSpec(names[0], names[1])
        return (lambda: convert.table_to_graph(table, spec, workers=workers),
                table.n_rows,
                lambda r: f"nodes={r.node_count} edges={r.edge_count}")
    if op == "select":
        predicate = (Predicate.parse(pred, table.schema) if pred
                     else Predicate(table.schema.names[0], "!=", -1))

        def run_select():
            target = table._take(np.arange(table.n_rows), False) if in_place else table
            return tables.select(target, predicate, in_place=in_place)

        return run_select, table.n_rows, lambda r: f"rows={r.n_rows}"
    if op == "join":
        col = join_col or table.schema.names[0]
        right = tables.group_aggregate(table, [col], [("count", col)])
        right = tables.project(right, [col])
        return (lambda: tables.join(table, right, col, col),
                table.n_rows + right.n_rows, lambda r: f"rows={r.n_rows}")
    raise AssertionError(op)
