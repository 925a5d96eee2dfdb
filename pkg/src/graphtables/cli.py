"""Command-line entry point: dataset generation, pipelines, benchmarks.

Exit status is 0 on success, 1 when an operation fails, 2 on usage
errors (argparse's convention).
"""

from __future__ import annotations

import argparse
import sys

from . import bench, pipeline, synth
from .errors import EngineError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphtables",
        description="In-memory graph analytics engine with integrated tables.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a synthetic TSV dataset")
    gen.add_argument("kind", choices=["random-edges", "qa-forum"])
    gen.add_argument("out", help="output TSV path")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--nodes", type=int, default=1000,
                     help="random-edges: node id range")
    gen.add_argument("--edges", type=int, default=5000,
                     help="random-edges: row count")
    gen.add_argument("--questions", type=int, default=100,
                     help="qa-forum: question count")
    gen.add_argument("--answers", type=int, default=200,
                     help="qa-forum: answer count")

    be = sub.add_parser("bench", help="time one operation on a dataset")
    be.add_argument("dataset", help="TSV input path")
    be.add_argument("op", choices=list(bench.ALL_OPS))
    be.add_argument("--schema", default=None,
                    help="dataset schema, e.g. 'src:int,dst:int' (the default)")
    be.add_argument("--reps", type=int, default=5,
                    help="timed repetitions after one untimed warm-up")
    be.add_argument("--workers", type=int, default=None,
                    help="worker threads (default: logical core count)")
    be.add_argument("--seed", type=int, default=0,
                    help="source sampling seed for sssp")
    be.add_argument("--pred", default=None,
                    help="select predicate, e.g. 'src>100'")
    be.add_argument("--join-col", default=None,
                    help="join column (default: first column)")
    be.add_argument("--k", type=int, default=3, help="kcore threshold")
    be.add_argument("--in-place", action="store_true",
                    help="run select in place on a fresh copy per repetition")

    pipe = sub.add_parser("pipeline", help="execute a verb script")
    pipe.add_argument("script", help="script file path")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "generate":
            synth.generate_synthetic(
                args.kind, args.out, seed=args.seed,
                n_nodes=args.nodes, n_edges=args.edges,
                n_questions=args.questions, n_answers=args.answers)
            return 0
        if args.command == "bench":
            report = bench.run_bench(
                args.dataset, args.op, repetitions=args.reps,
                workers=args.workers, schema=args.schema, seed=args.seed,
                pred=args.pred, join_col=args.join_col, k=args.k,
                in_place=args.in_place)
            print(f"# result {report.result_summary}")
            print(report.tsv_line())
            return 0
        if args.command == "pipeline":
            return pipeline.run_pipeline(args.script)
    except (EngineError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
