"""Concurrent building blocks: slot map, claim vector, cursor bank.

These are the primitives the parallel construction phases rely on.  They
follow a strict phase discipline: a phase is either all-writers or
all-readers, and phases are separated by a barrier supplied by the caller
(joining the worker pool).  None of the containers resize while a phase
is in flight; capacities are fixed up front from exact counts.
"""

from __future__ import annotations

import threading

import numpy as np

from .errors import CapacityError

_M64 = (1 << 64) - 1

# Fixed 64-bit avalanche mix (splitmix64 finalizer).  The constants are
# part of the on-disk/test contract: probe sequences must be reproducible.
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB


def mix64(key: int) -> int:
    """Avalanche-mix a 64-bit integer (negative keys wrap two's-complement)."""
    x = key & _M64
    x ^= x >> 30
    x = (x * _MIX_A) & _M64
    x ^= x >> 27
    x = (x * _MIX_B) & _M64
    x ^= x >> 31
    return x


class ConcurrentSlotMap:
    """Open-addressing hash table with linear probing over 64-bit int keys.

    Capacity is a power of two fixed at construction; the load factor is
    capped at 0.5 so probe chains stay short and a resize never happens
    mid-phase.  Insertion is safe under concurrent writers: an empty slot
    is claimed with a locked compare-and-claim on the slot's key field,
    and losers resume probing.  Lookups must be barrier-separated from
    insert phases and then run lock-free.

    Keys are arbitrary signed 64-bit integers; there is no deletion.
    """

    def __init__(self, capacity: int):
        if capacity < 2 or capacity & (capacity - 1):
            raise ValueError(f"capacity must be a power of two >= 2, got {capacity}")
        self._capacity = capacity
        self._mask = capacity - 1
        self._max_occupancy = capacity // 2
        self._keys: list[int | None] = [None] * capacity
        self._payloads = np.full(capacity, -1, dtype=np.int64)
        self._occupancy = 0
        self._claim_lock = threading.Lock()

    @classmethod
    def for_size(cls, n_keys: int) -> "ConcurrentSlotMap":
        """Size a map for a known key count (capacity = next pow2 >= 2n)."""
        cap = 2
        while cap < 2 * max(1, n_keys):
            cap <<= 1
        return cls(cap)

    @property
    def capacity(self) -> int:
        return self._capacity

    @property
    def occupancy(self) -> int:
        return self._occupancy

    def insert(self, key: int) -> int:
        """Insert key, returning its slot index; idempotent for existing keys."""
        keys = self._keys
        mask = self._mask
        # mix64 inlined: this is the hottest loop in parallel construction.
        x = key & _M64
        x ^= x >> 30
        x = (x * _MIX_A) & _M64
        x ^= x >> 27
        x = (x * _MIX_B) & _M64
        idx = (x ^ (x >> 31)) & mask
        while True:
            cur = keys[idx]
            if cur is not None:
                if cur == key:
                    return idx
            else:
                with self._claim_lock:
                    cur = keys[idx]
                    if cur is None:
                        if self._occupancy >= self._max_occupancy:
                            raise CapacityError(
                                f"slot map at maximum load "
                                f"({self._max_occupancy}/{self._capacity})")
                        keys[idx] = key
                        self._occupancy += 1
                        return idx
                    if cur == key:
                        return idx
                # Lost the claim to a different key; keep probing.
            idx = (idx + 1) & mask

    def lookup(self, key: int) -> int | None:
        """Return the slot holding key, or None.  Not safe during inserts."""
        keys = self._keys
        mask = self._mask
        x = key & _M64
        x ^= x >> 30
        x = (x * _MIX_A) & _M64
        x ^= x >> 27
        x = (x * _MIX_B) & _M64
        idx = (x ^ (x >> 31)) & mask
        for _ in range(self._capacity):
            cur = keys[idx]
            if cur is None:
                return None
            if cur == key:
                return idx
            idx = (idx + 1) & mask
        return None

    def set_payload(self, slot: int, value: int) -> None:
        self._payloads[slot] = value

    def get_payload(self, slot: int) -> int:
        return int(self._payloads[slot])

    def items(self):
        """Yield (key, slot) pairs for occupied slots, in slot order."""
        for idx, key in enumerate(self._keys):
            if key is not None:
                yield key, idx


class ClaimVector:
    """Pre-sized vector whose writers claim indices by fetch-and-increment.

    Concurrent callers always receive pairwise-distinct indices; the cell
    at a claimed index is written exactly once.  The vector never grows.
    """

    def __init__(self, capacity: int):
        if capacity < 0:
            raise ValueError(f"capacity must be >= 0, got {capacity}")
        self._capacity = capacity
        self._cells = np.zeros(capacity, dtype=np.int64)
        self._cursor = 0
        self._lock = threading.Lock()

    @property
    def capacity(self) -> int:
        return self._capacity

    @property
    def cursor(self) -> int:
        return self._cursor

    def claim_append(self, value: int) -> int:
        """Claim the next free index, store value there, return the index."""
        with self._lock:
            idx = self._cursor
            if idx >= self._capacity:
                raise CapacityError(f"claim vector full (capacity {self._capacity})")
            self._cursor = idx + 1
        self._cells[idx] = value
        return idx

    def claim_extend(self, values) -> int:
        """Claim a contiguous block for values in one increment; return its start."""
        values = np.asarray(values, dtype=np.int64)
        n = values.shape[0]
        with self._lock:
            start = self._cursor
            if start + n > self._capacity:
                raise CapacityError(
                    f"claim vector full (capacity {self._capacity}, "
                    f"cursor {start}, requested {n})")
            self._cursor = start + n
        self._cells[start:start + n] = values
        return start

    def as_array(self) -> np.ndarray:
        """The filled prefix of the cell array (read-only view)."""
        view = self._cells[: self._cursor]
        view.flags.writeable = False
        return view


class CursorBank:
    """One claim cursor per target vector, with batched fetch-and-increment.

    Used when many pre-sized vectors are filled in parallel: a worker
    claims write ranges for a whole batch of vectors under one lock
    acquisition, then writes without any further coordination.  Distinct
    claims on the same vector never overlap.
    """

    def __init__(self, capacities: np.ndarray):
        self._capacities = np.asarray(capacities, dtype=np.int64)
        self._cursors = np.zeros(self._capacities.shape[0], dtype=np.int64)
        self._lock = threading.Lock()

    def claim(self, index: int, count: int) -> int:
        """Claim `count` cells of vector `index`; returns the start offset."""
        with self._lock:
            start = int(self._cursors[index])
            if start + count > self._capacities[index]:
                raise CapacityError(f"cursor {index} over capacity")
            self._cursors[index] = start + count
        return start

    def claim_many(self, indices: np.ndarray, counts: np.ndarray) -> np.ndarray:
        """Claim ranges for many vectors at once; returns per-vector starts.

        Indices must be unique within a single call; concurrent calls may
        overlap in the vectors they touch.
        """
        with self._lock:
            starts = self._cursors[indices].copy()
            after = starts + counts
            if np.any(after > self._capacities[indices]):
                raise CapacityError("batched claim exceeds a vector capacity")
            self._cursors[indices] = after
        return starts

    @property
    def cursors(self) -> np.ndarray:
        view = self._cursors[:]
        view.flags.writeable = False
        return view
