"""Thin scripting front-end over the graphtables engine.

Exposes the engine through opaque handles and the interactive API names
data explorers expect (`LoadTableTSV`, `Select`, `Join`, `ToGraph`,
`GetPageRank`, `TableFromHashMap`), plus snake_case aliases.  Handles
own their engine objects; dropping the last handle reference releases
the object.  The bindings add no semantics of their own: every call
delegates to the engine and re-raises engine failures as
:class:`FrontendError` with the original diagnostic attached.
"""

from __future__ import annotations

import functools

import graphtables as engine

__all__ = [
    "FrontendError", "GraphHandle", "RankHandle", "TableHandle", "Workspace",
    "LoadTableTSV", "Select", "Join", "ToGraph", "GetPageRank",
    "TableFromHashMap", "SaveTableTSV",
    "load_table_tsv", "select", "join", "to_graph", "get_pagerank",
    "table_from_hash_map", "save_table_tsv",
]


class FrontendError(Exception):
    """Engine failure surfaced to the scripting layer."""

    def __init__(self, message, cause=None):
        super().__init__(message)
        self.engine_error = cause


def _delegated(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (engine.EngineError, ValueError, OSError) as exc:
            raise FrontendError(f"{fn.__name__}: {exc}", cause=exc) from exc
    return wrapper


class TableHandle:
    """Opaque reference to an engine-owned table."""

    def __init__(self, table: engine.ColumnTable):
        self._table = table

    @property
    def row_count(self) -> int:
        return self._table.n_rows

    @property
    def column_names(self) -> list[str]:
        return self._table.schema.names

    def rows(self) -> list[tuple]:
        """Decoded row tuples (an explicit export, copies data out)."""
        return self._table.to_rows()

    def __len__(self) -> int:
        return self._table.n_rows

    def __repr__(self):
        return f"TableHandle(rows={self.row_count}, columns={self.column_names})"


class GraphHandle:
    """Opaque reference to an engine-owned graph."""

    def __init__(self, graph: engine.Graph):
        self._graph = graph

    @property
    def node_count(self) -> int:
        return self._graph.node_count

    @property
    def edge_count(self) -> int:
        return self._graph.edge_count

    def __repr__(self):
        return f"GraphHandle(nodes={self.node_count}, edges={self.edge_count})"


class RankHandle:
    """Node-to-score mapping returned by ranking algorithms."""

    def __init__(self, scores: dict[int, float]):
        self._scores = scores

    def __getitem__(self, node: int) -> float:
        return self._scores[node]

    def __len__(self) -> int:
        return len(self._scores)

    def __iter__(self):
        return iter(self._scores)

    def items(self):
        return self._scores.items()

    def top(self, count: int = 1) -> list[tuple[int, float]]:
        """Highest-scoring (node, score) pairs; ties broken by lower id."""
        ranked = sorted(self._scores.items(), key=lambda kv: (-kv[1], kv[0]))
        return ranked[:count]

    def __repr__(self):
        return f"RankHandle(nodes={len(self._scores)})"


def _schema_of(schema) -> engine.Schema:
    if isinstance(schema, engine.Schema):
        return schema
    if isinstance(schema, str):
        return engine.Schema.parse(schema)
    return engine.Schema(schema)


class Workspace:
    """A scripting session: every method returns a new opaque handle."""

    @_delegated
    def LoadTableTSV(self, schema, path) -> TableHandle:
        return TableHandle(engine.load_tsv(path, _schema_of(schema)))

    @_delegated
    def SaveTableTSV(self, table: TableHandle, path) -> None:
        engine.save_tsv(table._table, path)

    @_delegated
    def Select(self, table: TableHandle, predicate: str) -> TableHandle:
        parsed = engine.Predicate.parse(predicate, table._table.schema)
        return TableHandle(engine.select(table._table, parsed))

    @_delegated
    def Join(self, left: TableHandle, right: TableHandle,
             left_col: str, right_col: str) -> TableHandle:
        return TableHandle(engine.join(left._table, right._table,
                                       left_col, right_col))

    @_delegated
    def ToGraph(self, table: TableHandle, src_col: str, dst_col: str) -> GraphHandle:
        spec = engine.EdgeSpec(src_col, dst_col)
        return GraphHandle(engine.table_to_graph(table._table, spec))

    @_delegated
    def GetPageRank(self, graph: GraphHandle, damping: float = 0.85,
                    iterations: int = 10) -> RankHandle:
        return RankHandle(engine.pagerank(graph._graph, damping=damping,
                                          iterations=iterations))

    @_delegated
    def TableFromHashMap(self, scores, key_name: str, val_name: str) -> TableHandle:
        mapping = scores._scores if isinstance(scores, RankHandle) else scores
        return TableHandle(engine.table_from_map(mapping, key_name, val_name))

    # snake_case aliases
    load_table_tsv = LoadTableTSV
    save_table_tsv = SaveTableTSV
    select = Select
    join = Join
    to_graph = ToGraph
    get_pagerank = GetPageRank
    table_from_hash_map = TableFromHashMap


_default = Workspace()

LoadTableTSV = _default.LoadTableTSV
SaveTableTSV = _default.SaveTableTSV
Select = _default.Select
Join = _default.Join
ToGraph = _default.ToGraph
GetPageRank = _default.GetPageRank
TableFromHashMap = _default.TableFromHashMap

load_table_tsv = LoadTableTSV
save_table_tsv = SaveTableTSV
select = Select
join = Join
to_graph = ToGraph
get_pagerank = GetPageRank
table_from_hash_map = TableFromHashMap
