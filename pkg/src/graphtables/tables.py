"""Columnar tables with persistent row identifiers.

A table holds one numpy array per schema column plus a parallel row-id
array.  Row ids are assigned once and survive in-place filtering and
sorting, which is what makes fine-grained lineage tracking possible.
String columns store dense integer codes into a per-table pool; pools are
never mutated after the owning table is built, so derived tables may
share them.

Cells are always present: there is no NULL value anywhere in the engine,
and the TSV loader rejects short lines rather than padding them.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import (
    ParseError,
    SchemaError,
    TypeMismatchError,
    UnknownColumnError,
)

INT, FLOAT, STRING = "int", "float", "str"
_TYPES = (INT, FLOAT, STRING)

_COMPARATORS = {
    "=": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
}

AGG_FNS = ("count", "sum", "min", "max", "mean")


class Schema:
    """Ordered (name, type) column list; types are int, float or str."""

    def __init__(self, columns):
        cols = [(str(n), t) for n, t in columns]
        if not cols:
            raise SchemaError("schema must have at least one column")
        names = [n for n, _ in cols]
        if len(set(names)) != len(names):
            raise SchemaError(f"duplicate column names in {names}")
        for n, t in cols:
            if not n:
                raise SchemaError("column names must be non-empty")
            if t not in _TYPES:
                raise SchemaError(f"unknown column type {t!r} for {n!r}")
        self.columns = cols
        self._index = {n: i for i, (n, _) in enumerate(cols)}

    def __len__(self):
        return len(self.columns)

    def __eq__(self, other):
        return isinstance(other, Schema) and self.columns == other.columns

    def __repr__(self):
        return "Schema(%s)" % ", ".join(f"{n}:{t}" for n, t in self.columns)

    @property
    def names(self):
        return [n for n, _ in self.columns]

    def index_of(self, name: str) -> int:
        if name not in self._index:
            raise UnknownColumnError(f"no column named {name!r} (have {self.names})")
        return self._index[name]

    def type_of(self, name: str) -> str:
        return self.columns[self.index_of(name)][1]

    @classmethod
    def parse(cls, text: str) -> "Schema":
        """Parse a flag-style schema string like 'id:int,tag:str'."""
        cols = []
        for part in text.split(","):
            name, _, typ = part.partition(":")
            cols.append((name.strip(), typ.strip()))
        return cls(cols)


@dataclass(frozen=True)
class Predicate:
    """Comparison of one column against a constant."""

    column: str
    op: str
    value: object

    def __post_init__(self):
        if self.op not in _COMPARATORS:
            raise ValueError(f"unknown comparison operator {self.op!r}")

    @classmethod
    def parse(cls, text: str, schema: Schema) -> "Predicate":
        """Parse 'Tag=Java' / 'age>=30' style predicates against a schema."""
        for op in ("<=", ">=", "!=", "=", "<", ">"):
            if op in text:
                col, _, raw = text.partition(op)
                col = col.strip()
                raw = raw.strip()
                typ = schema.type_of(col)
                if typ == INT:
                    value = int(raw)
                elif typ == FLOAT:
                    value = float(raw)
                else:
                    value = raw
                return cls(col, op, value)
        raise ValueError(f"no comparison operator found in {text!r}")


def _dtype_for(typ: str):
    return np.int64 if typ in (INT, STRING) else np.float64


class ColumnTable:
    """Schema-typed columnar store; every row carries a persistent id."""

    def __init__(self, schema: Schema, columns, row_ids=None, pool=None,
                 next_row_id=None):
        self.schema = schema
        self.columns = [np.asarray(c) for c in columns]
        lengths = {c.shape[0] for c in self.columns}
        if len(self.columns) != len(schema):
            raise SchemaError("column count does not match schema")
        if len(lengths) > 1:
            raise SchemaError(f"ragged column lengths {sorted(lengths)}")
        n = self.columns[0].shape[0] if self.columns else 0
        if row_ids is None:
            row_ids = np.arange(n, dtype=np.int64)
        self.row_ids = np.asarray(row_ids, dtype=np.int64)
        if self.row_ids.shape[0] != n:
            raise SchemaError("row-id array length does not match columns")
        # Pool is append-frozen once the table exists; derived tables share it.
        self.pool: list[str] = pool if pool is not None else []
        self._pool_index: dict[str, int] | None = None
        self._next_row_id = (int(next_row_id) if next_row_id is not None
                             else (int(self.row_ids.max()) + 1 if n else 0))

    # -- construction helpers -------------------------------------------------

    @classmethod
    def empty(cls, schema: Schema) -> "ColumnTable":
        return cls(schema, [np.empty(0, dtype=_dtype_for(t)) for _, t in schema.columns])

    @classmethod
    def from_rows(cls, schema: Schema, rows) -> "ColumnTable":
        """Build a table from python row tuples (strings given decoded)."""
        pool: list[str] = []
        index: dict[str, int] = {}
        cols = []
        for j, (_, typ) in enumerate(schema.columns):
            vals = [r[j] for r in rows]
            if typ == STRING:
                codes = np.empty(len(vals), dtype=np.int64)
                for i, s in enumerate(vals):
                    code = index.get(s)
                    if code is None:
                        code = index[s] = len(pool)
                        pool.append(s)
                    codes[i] = code
                cols.append(codes)
            else:
                cols.append(np.asarray(vals, dtype=_dtype_for(typ)))
        return cls(schema, cols, pool=pool)

    # -- basic accessors -------------------------------------------------------

    @property
    def n_rows(self) -> int:
        return int(self.row_ids.shape[0])

    def column(self, name: str) -> np.ndarray:
        return self.columns[self.schema.index_of(name)]

    def _pool_array(self) -> np.ndarray:
        return np.asarray(self.pool, dtype=object)

    def decoded(self, name: str) -> np.ndarray:
        """Column values with string codes decoded through the pool."""
        idx = self.schema.index_of(name)
        col = self.columns[idx]
        if self.schema.columns[idx][1] == STRING:
            return self._pool_array()[col] if col.size else np.empty(0, dtype=object)
        return col

    def encode_value(self, value: str) -> int | None:
        """Pool code for a string value, or None if the string is unpooled."""
        if self._pool_index is None:
            self._pool_index = {s: i for i, s in enumerate(self.pool)}
        return self._pool_index.get(value)

    def row_tuple(self, i: int) -> tuple:
        """Decoded cell tuple of physical row i (no row id)."""
        out = []
        for (name, typ), col in zip(self.schema.columns, self.columns):
            v = col[i]
            out.append(self.pool[int(v)] if typ == STRING else
                       (int(v) if typ == INT else float(v)))
        return tuple(out)

    def to_rows(self) -> list[tuple]:
        return [self.row_tuple(i) for i in range(self.n_rows)]

    def cell_equal(self, other: "ColumnTable") -> bool:
        """Same schema and decoded cells row-by-row (row ids ignored)."""
        return (self.schema == other.schema
                and self.n_rows == other.n_rows
                and self.to_rows() == other.to_rows())

    def memory_bytes(self) -> int:
        n = sum(c.nbytes for c in self.columns) + self.row_ids.nbytes
        return n + sum(len(s) for s in self.pool)

    def __repr__(self):
        return f"ColumnTable({self.schema!r}, rows={self.n_rows})"

    # -- row-level mutation used by select(in_place=True) ----------------------

    def _take(self, indices: np.ndarray, in_place: bool) -> "ColumnTable":
        cols = [c[indices] for c in self.columns]
        ids = self.row_ids[indices]
        if in_place:
            self.columns = cols
            self.row_ids = ids
            return self
        return ColumnTable(self.schema, cols, row_ids=ids, pool=self.pool,
                           next_row_id=self._next_row_id)


# -- loading and saving --------------------------------------------------------


def load_tsv(path, schema: Schema) -> ColumnTable:
    """Load a headerless TSV file; one row per line, fields per schema."""
    n_cols = len(schema)
    raw_cols: list[list] = [[] for _ in range(n_cols)]
    pool: list[str] = []
    pool_index: dict[str, int] = {}
    col_defs = schema.columns
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            fields = line.rstrip("\n").split("\t")
            if len(fields) != n_cols:
                raise ParseError(
                    f"line {lineno}: expected {n_cols} fields, got {len(fields)}",
                    line=lineno)
            for j, (name, typ) in enumerate(col_defs):
                field = fields[j]
                if typ == INT:
                    try:
                        raw_cols[j].append(int(field))
                    except ValueError:
                        raise ParseError(
                            f"line {lineno}, column {name!r}: {field!r} is not an integer",
                            line=lineno, column=name) from None
                elif typ == FLOAT:
                    try:
                        raw_cols[j].append(float(field))
                    except ValueError:
                        raise ParseError(
                            f"line {lineno}, column {name!r}: {field!r} is not a float",
                            line=lineno, column=name) from None
                else:
                    code = pool_index.get(field)
                    if code is None:
                        code = pool_index[field] = len(pool)
                        pool.append(field)
                    raw_cols[j].append(code)
    arrays = [np.asarray(raw_cols[j], dtype=_dtype_for(t))
              for j, (_, t) in enumerate(col_defs)]
    return ColumnTable(schema, arrays, pool=pool)


def save_tsv(table: ColumnTable, path) -> None:
    """Write a table as headerless TSV; strings must not contain tab/newline."""
    decoded = [table.decoded(n) for n in table.schema.names]
    types = [t for _, t in table.schema.columns]
    with open(path, "w", encoding="utf-8") as fh:
        for i in range(table.n_rows):
            parts = []
            for col, typ in zip(decoded, types):
                v = col[i]
                if typ == STRING:
                    s = str(v)
                    if "\t" in s or "\n" in s:
                        raise TypeMismatchError(
                            f"string value {s!r} contains a tab or newline; "
                            "the TSV format forbids them")
                    parts.append(s)
                elif typ == INT:
                    parts.append(str(int(v)))
                else:
                    parts.append(repr(float(v)))
            fh.write("\t".join(parts) + "\n")


# -- relational operators --------------------------------------------------


def _check_predicate(table: ColumnTable, pred: Predicate) -> str:
    typ = table.schema.type_of(pred.column)
    v = pred.value
    if typ == STRING and not isinstance(v, str):
        raise TypeMismatchError(
            f"predicate on string column {pred.column!r} needs a string, got {v!r}")
    if typ in (INT, FLOAT) and isinstance(v, (str, bool)):
        raise TypeMismatchError(
            f"predicate on numeric column {pred.column!r} needs a number, got {v!r}")
    return typ


def select(table: ColumnTable, pred: Predicate, in_place: bool = False) -> ColumnTable:
    """Rows satisfying pred, ids and order preserved; optionally in place."""
    typ = _check_predicate(table, pred)
    cmp = _COMPARATORS[pred.op]
    if typ == STRING:
        if pred.op in ("=", "!="):
            code = table.encode_value(pred.value)
            col = table.column(pred.column)
            if code is None:
                mask = (np.zeros(table.n_rows, dtype=bool) if pred.op == "="
                        else np.ones(table.n_rows, dtype=bool))
            else:
                mask = cmp(col, code)
        else:
            # Ordering comparisons go through decoded strings, not codes.
            decoded = table.decoded(pred.column)
            mask = np.array([cmp(s, pred.value) for s in decoded], dtype=bool)
    else:
        mask = cmp(table.column(pred.column), pred.value)
    return table._take(np.flatnonzero(mask), in_place)


def project(table: ColumnTable, names) -> ColumnTable:
    """Restrict to the named columns in the given order; row ids preserved."""
    names = list(names)
    if not names:
        raise SchemaError("projection onto zero columns is not allowed")
    idxs = [table.schema.index_of(n) for n in names]
    schema = Schema([table.schema.columns[i] for i in idxs])
    return ColumnTable(schema, [table.columns[i] for i in idxs],
                       row_ids=table.row_ids, pool=table.pool,
                       next_row_id=table._next_row_id)


def _suffixed_schema(left: Schema, right: Schema) -> Schema:
    """Concatenate schemas, suffixing colliding names by origin (-1 left, -2 right)."""
    collisions = set(left.names) & set(right.names)
    cols = [(f"{n}-1" if n in collisions else n, t) for n, t in left.columns]
    cols += [(f"{n}-2" if n in collisions else n, t) for n, t in right.columns]
    return Schema(cols)


def _merge_pools(left: ColumnTable, right: ColumnTable):
    """Combined pool plus a code-remap array for the right table's codes."""
    if not right.pool:
        return list(left.pool), np.empty(0, dtype=np.int64)
    pool = list(left.pool)
    index = {s: i for i, s in enumerate(pool)}
    remap = np.empty(len(right.pool), dtype=np.int64)
    for code, s in enumerate(right.pool):
        new = index.get(s)
        if new is None:
            new = index[s] = len(pool)
            pool.append(s)
        remap[code] = new
    return pool, remap


def _paired_table(left: ColumnTable, right: ColumnTable,
                  li: np.ndarray, ri: np.ndarray) -> ColumnTable:
    """New table whose rows are left[li] concatenated with right[ri]."""
    schema = _suffixed_schema(left.schema, right.schema)
    pool, remap = _merge_pools(left, right)
    cols = [c[li] for c in left.columns]
    for c, (_, typ) in zip(right.columns, right.schema.columns):
        taken = c[ri]
        if typ == STRING and taken.size:
            taken = remap[taken]
        cols.append(taken)
    return ColumnTable(schema, cols, pool=pool)


def join(left: ColumnTable, right: ColumnTable,
         left_col: str, right_col: str) -> ColumnTable:
    """Equi-join; hash join building on the smaller input.

    Output schema is the left schema followed by the right schema with
    collisions suffixed -1/-2; always a new table with fresh row ids.
    """
    lt = left.schema.type_of(left_col)
    rt = right.schema.type_of(right_col)
    if lt != rt:
        raise TypeMismatchError(
            f"join columns {left_col!r} ({lt}) and {right_col!r} ({rt}) differ in type")
    lkeys = left.decoded(left_col)
    rkeys = right.decoded(right_col)

    build_left = left.n_rows <= right.n_rows
    bkeys, pkeys = (lkeys, rkeys) if build_left else (rkeys, lkeys)
    buckets: dict = {}
    for i, k in enumerate(bkeys.tolist()):
        buckets.setdefault(k, []).append(i)
    bi, pi = [], []
    for i, k in enumerate(pkeys.tolist()):
        hit = buckets.get(k)
        if hit:
            bi.extend(hit)
            pi.extend([i] * len(hit))
    bi = np.asarray(bi, dtype=np.int64)
    pi = np.asarray(pi, dtype=np.int64)
    li, ri = (bi, pi) if build_left else (pi, bi)
    return _paired_table(left, right, li, ri)


def group_aggregate(table: ColumnTable, group_cols, aggs) -> ColumnTable:
    """One row per distinct group-key tuple, in first-occurrence order.

    aggs is a list of (fn, column) with fn in count/sum/min/max/mean;
    sum and mean require numeric columns.
    """
    group_cols = list(group_cols)
    key_arrays = [table.decoded(c) for c in group_cols]
    for fn, col in aggs:
        if fn not in AGG_FNS:
            raise ValueError(f"unknown aggregate {fn!r}")
        typ = table.schema.type_of(col)
        if fn in ("sum", "mean") and typ == STRING:
            raise TypeMismatchError(f"{fn} over string column {col!r}")

    groups: dict[tuple, list[int]] = {}
    n = table.n_rows
    keys = list(zip(*[a.tolist() for a in key_arrays])) if key_arrays else [()] * n
    for i, k in enumerate(keys):
        groups.setdefault(k, []).append(i)

    out_cols: list[list] = [[] for _ in group_cols]
    agg_cols: list[list] = [[] for _ in aggs]
    agg_vals = [table.decoded(col) for _, col in aggs]
    agg_types = [table.schema.type_of(col) for _, col in aggs]
    for key, rows in groups.items():
        for j, v in enumerate(key):
            out_cols[j].append(v)
        for j, (fn, _col) in enumerate(aggs):
            vals = agg_vals[j][rows].tolist()
            if fn == "count":
                agg_cols[j].append(len(rows))
            elif fn == "sum":
                # fsum is exactly rounded, so float sums are order-free.
                agg_cols[j].append(math.fsum(vals) if agg_types[j] == FLOAT
                                   else sum(vals))
            elif fn == "min":
                agg_cols[j].append(min(vals))
            elif fn == "max":
                agg_cols[j].append(max(vals))
            else:
                agg_cols[j].append(math.fsum(vals) / len(rows))

    schema_cols = [(c, table.schema.type_of(c)) for c in group_cols]
    for fn, col in aggs:
        if fn == "count":
            schema_cols.append((f"count_{col}", INT))
        elif fn == "mean":
            schema_cols.append((f"mean_{col}", FLOAT))
        else:
            schema_cols.append((f"{fn}_{col}", table.schema.type_of(col)))
    schema = Schema(schema_cols)
    rows = list(zip(*(out_cols + agg_cols))) if groups else []
    return ColumnTable.from_rows(schema, rows)


def order(table: ColumnTable, cols, ascending: bool = True) -> ColumnTable:
    """Stable lexicographic sort on cols; ties keep original order."""
    cols = list(cols)
    ranks = []
    for c in cols:
        decoded = table.decoded(c)
        if table.schema.type_of(c) == STRING:
            _, inv = np.unique(decoded.astype(object), return_inverse=True)
            r = inv.astype(np.int64)
        else:
            _, inv = np.unique(decoded, return_inverse=True)
            r = inv.astype(np.int64)
        ranks.append(r if ascending else -r)
    position = np.arange(table.n_rows, dtype=np.int64)
    # lexsort keys: last key is primary; positions break ties ascending.
    keys = [position] + list(reversed(ranks))
    perm = np.lexsort(keys)
    return table._take(perm, in_place=False)


def set_op(left: ColumnTable, right: ColumnTable, op: str) -> ColumnTable:
    """Multiset union/intersection/difference over full decoded row tuples."""
    if left.schema != right.schema:
        raise SchemaError("set operations require identical schemas")
    if op not in ("union", "intersection", "difference"):
        raise ValueError(f"unknown set operation {op!r}")
    lrows = left.to_rows()
    rrows = right.to_rows()
    if op == "union":
        rows = lrows + rrows
    elif op == "intersection":
        budget = Counter(rrows)
        rows = []
        for r in lrows:
            if budget[r] > 0:
                budget[r] -= 1
                rows.append(r)
    else:
        budget = Counter(rrows)
        rows = []
        for r in lrows:
            if budget[r] > 0:
                budget[r] -= 1
            else:
                rows.append(r)
    return ColumnTable.from_rows(left.schema, rows)


def sim_join(left: ColumnTable, right: ColumnTable, cols, metric: str,
             threshold: float) -> ColumnTable:
    """Pair rows whose distance over the column pairs is strictly below threshold.

    cols is a list of (left column, right column) pairs, all numeric;
    metric is L1 or L2.  Equivalent to the brute-force all-pairs check.
    """
    if metric not in ("L1", "L2"):
        raise ValueError(f"unknown metric {metric!r}")
    if threshold < 0:
        raise ValueError(f"threshold must be >= 0, got {threshold}")
    pairs = list(cols)
    for lc, rc in pairs:
        if left.schema.type_of(lc) == STRING or right.schema.type_of(rc) == STRING:
            raise TypeMismatchError("similarity joins need numeric columns")

    if left.n_rows == 0 or right.n_rows == 0 or threshold == 0:
        return _paired_table(left, right,
                             np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64))

    if len(pairs) == 1 and metric == "L1":
        li, ri = _sim_join_sorted_l1(left.column(pairs[0][0]).astype(np.float64),
                                     right.column(pairs[0][1]).astype(np.float64),
                                     threshold)
    else:
        li, ri = _sim_join_all_pairs(left, right, pairs, metric, threshold)
    return _paired_table(left, right, li, ri)


def _sim_join_all_pairs(left, right, pairs, metric, threshold):
    dist = np.zeros((left.n_rows, right.n_rows), dtype=np.float64)
    for lc, rc in pairs:
        diff = (left.column(lc).astype(np.float64)[:, None]
                - right.column(rc).astype(np.float64)[None, :])
        dist += np.abs(diff) if metric == "L1" else diff * diff
    if metric == "L2":
        dist = np.sqrt(dist)
    li, ri = np.nonzero(dist < threshold)
    return li.astype(np.int64), ri.astype(np.int64)


def _sim_join_sorted_l1(lvals, rvals, threshold):
    """Single-column L1 fast path: sort the right side, window per left value.

    Window bounds are widened by one ulp so rounding in l +- t can never
    drop a true match; candidates are then filtered with the exact
    |l - r| < t predicate the all-pairs check uses.
    """
    order_r = np.argsort(rvals, kind="stable")
    sorted_r = rvals[order_r]
    lo = np.searchsorted(sorted_r, np.nextafter(lvals - threshold, -np.inf),
                         side="left")
    hi = np.searchsorted(sorted_r, np.nextafter(lvals + threshold, np.inf),
                         side="right")
    counts = np.maximum(hi - lo, 0)
    li = np.repeat(np.arange(lvals.shape[0], dtype=np.int64), counts)
    ri_sorted = np.concatenate(
        [np.arange(a, b, dtype=np.int64) for a, b in zip(lo, hi)]) \
        if counts.sum() else np.empty(0, dtype=np.int64)
    keep = np.abs(lvals[li] - sorted_r[ri_sorted]) < threshold
    li, ri = li[keep], order_r[ri_sorted[keep]]
    # Canonical output order: by (left row, right row).
    key = np.lexsort((ri, li))
    return li[key], ri[key]


def next_k(table: ColumnTable, group_col: str, order_col: str, k: int) -> ColumnTable:
    """Pair each row with its next k successors in temporal order per group.

    Rows sharing group_col are sorted ascending by order_col (ties by row
    id); each row pairs with min(k, remaining) successors.  Output rows
    are predecessor columns then successor columns, suffixed -1/-2.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if table.schema.type_of(order_col) == STRING:
        raise TypeMismatchError(f"order column {order_col!r} must be numeric")
    gvals = table.decoded(group_col)
    ovals = table.decoded(order_col)

    groups: dict = {}
    for i, g in enumerate(gvals.tolist()):
        groups.setdefault(g, []).append(i)

    li, ri = [], []
    ids = table.row_ids
    for rows in groups.values():
        rows.sort(key=lambda i: (ovals[i], ids[i]))
        for p in range(len(rows) - 1):
            for s in range(p + 1, min(p + 1 + k, len(rows))):
                li.append(rows[p])
                ri.append(rows[s])
    return _paired_table(table, table,
                         np.asarray(li, dtype=np.int64),
                         np.asarray(ri, dtype=np.int64))


def encode_strings(table: ColumnTable, col: str):
    """Replace a string column by first-occurrence dense codes.

    Returns (encoded table, dictionary table).  The dictionary has
    columns (code:int, value:str) with codes 0..d-1 in first-occurrence
    order of the column's rows.
    """
    idx = table.schema.index_of(col)
    if table.schema.columns[idx][1] != STRING:
        raise TypeMismatchError(f"column {col!r} is not a string column")
    decoded = table.decoded(col)
    index: dict[str, int] = {}
    values: list[str] = []
    codes = np.empty(table.n_rows, dtype=np.int64)
    for i, s in enumerate(decoded.tolist()):
        code = index.get(s)
        if code is None:
            code = index[s] = len(values)
            values.append(s)
        codes[i] = code

    cols = list(table.columns)
    cols[idx] = codes
    schema = Schema([(n, INT if n == col else t) for n, t in table.schema.columns])
    encoded = ColumnTable(schema, cols, row_ids=table.row_ids, pool=table.pool,
                          next_row_id=table._next_row_id)
    dictionary = ColumnTable.from_rows(
        Schema([("code", INT), ("value", STRING)]),
        list(enumerate(values)))
    return encoded, dictionary


def table_from_map(pairs, key_name: str, val_name: str) -> ColumnTable:
    """Two-column (int key, float value) table, sorted ascending by key."""
    items = sorted((int(k), float(v)) for k, v in pairs.items())
    schema = Schema([(key_name, INT), (val_name, FLOAT)])
    if not items:
        return ColumnTable.empty(schema)
    keys, vals = zip(*items)
    return ColumnTable(schema, [np.asarray(keys, dtype=np.int64),
                                np.asarray(vals, dtype=np.float64)])
