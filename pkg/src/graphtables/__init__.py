"""In-memory graph analytics engine with integrated columnar tables.

Tables and graphs live side by side: build tables from TSV, shape them
with relational and graph-construction operators, convert them to a
graph structure in parallel, run analytics, and pull results back into
tables.
"""

from .algorithms import (
    connected_components,
    k_core,
    pagerank,
    scc,
    sssp,
    triangle_count,
)
from .containers import ClaimVector, ConcurrentSlotMap, CursorBank
from .convert import EdgeSpec, graph_to_edge_table, graph_to_node_table, table_to_graph
from .errors import (
    CapacityError,
    CoverageError,
    EngineError,
    ParseError,
    PipelineError,
    SchemaError,
    TypeMismatchError,
    UnknownColumnError,
    UnknownNodeError,
)
from .graphs import Graph, NodeRecord, from_edges
from .tables import (
    ColumnTable,
    Predicate,
    Schema,
    encode_strings,
    group_aggregate,
    join,
    load_tsv,
    next_k,
    order,
    project,
    save_tsv,
    select,
    set_op,
    sim_join,
    table_from_map,
)

__version__ = "0.1.0"

__all__ = [
    "ClaimVector", "ColumnTable", "ConcurrentSlotMap", "CursorBank",
    "EdgeSpec", "Graph", "NodeRecord", "Predicate", "Schema",
    "CapacityError", "CoverageError", "EngineError", "ParseError",
    "PipelineError", "SchemaError", "TypeMismatchError",
    "UnknownColumnError", "UnknownNodeError",
    "connected_components", "encode_strings", "from_edges",
    "graph_to_edge_table", "graph_to_node_table", "group_aggregate",
    "join", "k_core", "load_tsv", "next_k", "order", "pagerank",
    "project", "save_tsv", "scc", "select", "set_op", "sim_join",
    "sssp", "table_from_map", "table_to_graph", "triangle_count",
]
