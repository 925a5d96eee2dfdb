"""Worker helpers: partitioning, parallel sort equivalence."""

import numpy as np
import pytest

from graphtables.parallel import (
    parallel_sort,
    resolve_workers,
    run_partitioned,
    split_ranges,
)


def test_resolve_workers():
    assert resolve_workers(3) == 3
    assert resolve_workers(None) >= 1
    with pytest.raises(ValueError):
        resolve_workers(0)


def test_split_ranges_cover_exactly():
    for n in (0, 1, 7, 100):
        for parts in (1, 2, 8, 200):
            ranges = split_ranges(n, parts)
            flat = [i for a, b in ranges for i in range(a, b)]
            assert flat == list(range(n))


def test_run_partitioned_preserves_range_order():
    ranges = split_ranges(40, 4)
    got = run_partitioned(lambda a, b: (a, b), ranges, workers=4)
    assert got == ranges


@pytest.mark.parametrize("workers", [1, 2, 4, 8])
def test_parallel_sort_equals_np_sort(workers):
    rng = np.random.default_rng(workers)
    # Above the bucketing threshold so workers >= 3 take the parallel path.
    values = rng.integers(0, 1 << 60, size=200_000, dtype=np.uint64)
    assert np.array_equal(parallel_sort(values, workers), np.sort(values))


@pytest.mark.parametrize("workers", [4, 8])
def test_parallel_sort_degenerate_inputs(workers):
    dup = np.full(200_000, 7, dtype=np.uint64)
    assert np.array_equal(parallel_sort(dup, workers), dup)
    few = np.asarray([3, 1, 2], dtype=np.uint64)
    assert parallel_sort(few, workers).tolist() == [1, 2, 3]
    empty = np.empty(0, dtype=np.uint64)
    assert parallel_sort(empty, workers).shape[0] == 0
    skewed = np.concatenate([np.zeros(150_000, dtype=np.uint64),
                             np.arange(50_000, dtype=np.uint64)])
    assert np.array_equal(parallel_sort(skewed, workers), np.sort(skewed))