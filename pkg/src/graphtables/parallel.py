"""Worker-pool helpers shared by the parallel phases of the engine.

All parallel phases follow the same discipline: the caller computes a
partition up front, workers run over disjoint partitions, and a barrier
(joining the pool) separates phases.  Results are required to be
independent of the worker count, which every user of these helpers
achieves by fixing per-partition evaluation order.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

# Below this many elements the bookkeeping of a parallel sort costs more
# than it saves.
_PARALLEL_SORT_MIN = 1 << 17


def resolve_workers(workers: int | None) -> int:
    """Clamp a requested worker count; None means all logical cores."""
    if workers is None:
        return os.cpu_count() or 1
    if workers < 1:
        raise ValueError(f"worker count must be >= 1, got {workers}")
    return workers


def split_ranges(n: int, parts: int) -> list[tuple[int, int]]:
    """Split [0, n) into at most `parts` contiguous near-equal ranges."""
    parts = max(1, min(parts, n))
    bounds = np.linspace(0, n, parts + 1).astype(np.int64)
    return [(int(bounds[i]), int(bounds[i + 1])) for i in range(parts)
            if bounds[i] < bounds[i + 1]]


def run_partitioned(fn, ranges, workers: int):
    """Run fn(start, stop) over every range, threaded when workers > 1.

    Returns the per-range results in range order regardless of completion
    order, so callers can rely on deterministic reduction.
    """
    if workers <= 1 or len(ranges) <= 1:
        return [fn(a, b) for a, b in ranges]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, a, b) for a, b in ranges]
        return [f.result() for f in futures]


def parallel_sort(values: np.ndarray, workers: int) -> np.ndarray:
    """Sort a 1-d array, splitting into value buckets sorted in parallel.

    Buckets are delimited by splitters sampled from the input, so the
    concatenation of the independently sorted buckets is globally sorted.
    np.sort releases the GIL, so buckets genuinely sort concurrently.
    Output is identical to np.sort for any worker count.  Below three
    workers the partitioning pass costs more than it saves, so the plain
    sort runs instead.
    """
    n = values.shape[0]
    if workers <= 2 or n < _PARALLEL_SORT_MIN:
        return np.sort(values, kind="quicksort")
    parts = min(workers, 16)
    sample = np.sort(values[:: max(1, n // (parts * 32))])
    picks = np.linspace(0, sample.size - 1, parts + 1).astype(np.int64)[1:-1]
    splitters = np.unique(sample[picks])

    buckets = []
    lower = None
    for i in range(splitters.size + 1):
        if i == 0:
            mask = values < splitters[0]
        elif i == splitters.size:
            mask = values >= lower
        else:
            mask = (values >= lower) & (values < splitters[i])
        lower = splitters[i] if i < splitters.size else lower
        part = values[mask]
        if part.shape[0]:
            buckets.append(part)

    out = np.empty_like(values)
    offsets = np.concatenate(
        ([0], np.cumsum([b.shape[0] for b in buckets]))).tolist()
    ranges = list(enumerate(buckets))

    def sort_bucket(i, bucket):
        out[offsets[i]:offsets[i + 1]] = np.sort(bucket, kind="quicksort")

    run_partitioned(sort_bucket, ranges, workers)
    return out
