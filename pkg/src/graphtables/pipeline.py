"""Line-oriented script runner: named objects, one verb per line.

Scripts drive the engine non-interactively.  Each line is
`verb args...`; verbs that produce a table or graph take the output name
first.  Blank lines and lines starting with '#' are skipped.  Execution
stops at the first error with a diagnostic naming the script line.

    load P posts.tsv PostId:int,Type:str,Tag:str,UserId:int,AnswerId:int
    select JP P Tag=Java
    join QA Q A AnswerId PostId
    tograph G QA UserId-1 UserId-2
    pagerank S G User Scr
    save S scores.tsv
"""

from __future__ import annotations

import shlex
import sys

from . import algorithms, convert, tables
from .errors import EngineError, PipelineError
from .graphs import Graph
from .tables import ColumnTable, Predicate, Schema


class _Workspace:
    def __init__(self):
        self.objects: dict[str, object] = {}

    def put(self, name: str, obj) -> None:
        self.objects[name] = obj

    def table(self, name: str, line: int) -> ColumnTable:
        obj = self._get(name, line)
        if not isinstance(obj, ColumnTable):
            raise PipelineError(f"line {line}: {name!r} is not a table", line=line)
        return obj

    def graph(self, name: str, line: int) -> Graph:
        obj = self._get(name, line)
        if not isinstance(obj, Graph):
            raise PipelineError(f"line {line}: {name!r} is not a graph", line=line)
        return obj

    def _get(self, name: str, line: int):
        if name not in self.objects:
            raise PipelineError(f"line {line}: undefined object {name!r}", line=line)
        return self.objects[name]


def _need(args, count, line, usage):
    if len(args) < count:
        raise PipelineError(f"line {line}: usage: {usage}", line=line)


def execute_script(lines, out=None) -> _Workspace:
    """Run script lines against a fresh workspace; raises PipelineError."""
    emit = out if out is not None else (lambda s: print(s))
    ws = _Workspace()
    for lineno, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        try:
            parts = shlex.split(text)
        except ValueError as exc:
            raise PipelineError(f"line {lineno}: {exc}", line=lineno) from exc
        verb, args = parts[0].lower(), parts[1:]
        try:
            _dispatch(ws, verb, args, lineno, emit)
        except PipelineError:
            raise
        except (EngineError, ValueError, OSError) as exc:
            raise PipelineError(f"line {lineno}: {verb}: {exc}", line=lineno) from exc
    return ws


def _dispatch(ws: _Workspace, verb: str, args: list[str], line: int, emit) -> None:
    if verb == "load":
        _need(args, 3, line, "load NAME PATH SCHEMA")
        ws.put(args[0], tables.load_tsv(args[1], Schema.parse(args[2])))
    elif verb == "select":
        _need(args, 3, line, "select OUT IN PREDICATE")
        t = ws.table(args[1], line)
        ws.put(args[0], tables.select(t, Predicate.parse(args[2], t.schema)))
    elif verb == "project":
        _need(args, 3, line, "project OUT IN COL1,COL2,...")
        ws.put(args[0], tables.project(ws.table(args[1], line), args[2].split(",")))
    elif verb == "join":
        _need(args, 5, line, "join OUT LEFT RIGHT LEFTCOL RIGHTCOL")
        ws.put(args[0], tables.join(ws.table(args[1], line), ws.table(args[2], line),
                                    args[3], args[4]))
    elif verb == "group":
        _need(args, 4, line, "group OUT IN BYCOL1,BYCOL2 FN:COL,FN:COL")
        aggs = []
        for part in args[3].split(","):
            fn, _, col = part.partition(":")
            aggs.append((fn, col))
        ws.put(args[0], tables.group_aggregate(ws.table(args[1], line),
                                               args[2].split(","), aggs))
    elif verb == "order":
        _need(args, 3, line, "order OUT IN COL1,COL2 [asc|desc]")
        ascending = len(args) < 4 or args[3] != "desc"
        ws.put(args[0], tables.order(ws.table(args[1], line),
                                     args[2].split(","), ascending))
    elif verb == "simjoin":
        _need(args, 6, line, "simjoin OUT LEFT RIGHT LCOL:RCOL,... L1|L2 THRESHOLD")
        pairs = [tuple(p.split(":", 1)) for p in args[3].split(",")]
        ws.put(args[0], tables.sim_join(ws.table(args[1], line),
                                        ws.table(args[2], line),
                                        pairs, args[4], float(args[5])))
    elif verb == "nextk":
        _need(args, 5, line, "nextk OUT IN GROUPCOL ORDERCOL K")
        ws.put(args[0], tables.next_k(ws.table(args[1], line),
                                      args[2], args[3], int(args[4])))
    elif verb == "tograph":
        _need(args, 4, line, "tograph OUT IN SRCCOL DSTCOL")
        ws.put(args[0], convert.table_to_graph(
            ws.table(args[1], line), convert.EdgeSpec(args[2], args[3])))
    elif verb == "totable":
        _need(args, 3, line, "totable OUT GRAPH edges|nodes")
        g = ws.graph(args[1], line)
        if args[2] == "edges":
            ws.put(args[0], convert.graph_to_edge_table(g))
        elif args[2] == "nodes":
            ws.put(args[0], convert.graph_to_node_table(g))
        else:
            raise PipelineError(
                f"line {line}: totable kind must be edges or nodes", line=line)
    elif verb == "pagerank":
        _need(args, 2, line, "pagerank OUT GRAPH [KEYCOL VALCOL] [DAMPING ITERS]")
        key_name = args[2] if len(args) > 2 else "node"
        val_name = args[3] if len(args) > 3 else "score"
        damping = float(args[4]) if len(args) > 4 else 0.85
        iterations = int(args[5]) if len(args) > 5 else 10
        ranks = algorithms.pagerank(ws.graph(args[1], line),
                                    damping=damping, iterations=iterations)
        ws.put(args[0], tables.table_from_map(ranks, key_name, val_name))
    elif verb == "triangles":
        _need(args, 1, line, "triangles GRAPH")
        emit(f"triangles\t{algorithms.triangle_count(ws.graph(args[0], line))}")
    elif verb == "sssp":
        _need(args, 3, line, "sssp OUT GRAPH SOURCE")
        dist = algorithms.sssp(ws.graph(args[1], line), int(args[2]))
        encoded = {n: (-1.0 if d is None else float(d)) for n, d in dist.items()}
        ws.put(args[0], tables.table_from_map(encoded, "node", "hops"))
    elif verb == "scc":
        _need(args, 2, line, "scc OUT GRAPH")
        labels = algorithms.scc(ws.graph(args[1], line))
        ws.put(args[0], tables.table_from_map(
            {n: float(c) for n, c in labels.items()}, "node", "component"))
    elif verb == "kcore":
        _need(args, 3, line, "kcore OUT GRAPH K")
        ws.put(args[0], algorithms.k_core(ws.graph(args[1], line), int(args[2])))
    elif verb == "save":
        _need(args, 2, line, "save NAME PATH")
        tables.save_tsv(ws.table(args[0], line), args[1])
    else:
        raise PipelineError(f"line {line}: unknown verb {verb!r}", line=line)


def run_pipeline(script_path, out=None) -> int:
    """Execute a script file; returns a process exit status (0 or 1)."""
    try:
        with open(script_path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        execute_script(lines, out=out)
    except PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0
