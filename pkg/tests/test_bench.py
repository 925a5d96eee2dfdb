"""Bench runner protocol: warm-up, averaging, determinism, CLI surface."""

import subprocess
import sys

import pytest

from graphtables.bench import run_bench
from graphtables.cli import main
from graphtables.synth import generate_synthetic


@pytest.fixture(scope="module")
def edges_tsv(tmp_path_factory):
    path = tmp_path_factory.mktemp("bench") / "edges.tsv"
    generate_synthetic("random-edges", path, seed=4, n_nodes=80, n_edges=400)
    return path


def test_report_fields(edges_tsv):
    report = run_bench(edges_tsv, "pagerank", repetitions=2, workers=2)
    assert report.repetitions == 2
    assert report.mean_seconds > 0
    assert report.units_per_second > 0
    assert report.peak_rss_bytes > 0
    fields = report.tsv_line().split("\t")
    assert fields[0] == "pagerank" and fields[2] == "2" and fields[3] == "2"


def test_default_repetitions_is_five(edges_tsv):
    report = run_bench(edges_tsv, "to-graph", workers=1)
    assert report.repetitions == 5


def test_pagerank_two_cycle_scores_echoed(tmp_path):
    path = tmp_path / "cycle.tsv"
    path.write_text("0\t1\n1\t0\n")
    report = run_bench(path, "pagerank", repetitions=1, workers=1)
    assert "0.500000" in report.result_summary


def test_throughput_arithmetic(edges_tsv):
    report = run_bench(edges_tsv, "to-graph", repetitions=3, workers=1)
    assert report.units_per_second == pytest.approx(400 / report.mean_seconds)


def test_result_checksums_are_reproducible(edges_tsv):
    ops = ["pagerank", "triangles", "sssp", "scc", "kcore", "select", "join",
           "to-graph", "to-table"]
    for op in ops:
        a = run_bench(edges_tsv, op, repetitions=1, workers=2, seed=11)
        b = run_bench(edges_tsv, op, repetitions=1, workers=2, seed=11)
        assert a.result_summary == b.result_summary, op


def test_unknown_op(edges_tsv):
    with pytest.raises(ValueError):
        run_bench(edges_tsv, "sort")


def test_load_failure():
    with pytest.raises(OSError):
        run_bench("/nonexistent.tsv", "pagerank")


class TestCli:
    def test_generate_and_bench_exit_zero(self, tmp_path, capsys):
        out = tmp_path / "d.tsv"
        assert main(["generate", "random-edges", str(out),
                     "--nodes", "40", "--edges", "200"]) == 0
        assert main(["bench", str(out), "triangles", "--reps", "1"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[-2].startswith("# result triangles=")
        assert lines[-1].split("\t")[0] == "triangles"

    def test_operator_error_exits_one(self, capsys):
        assert main(["bench", "/nonexistent.tsv", "pagerank"]) == 1
        assert "error:" in capsys.readouterr().err

    def test_usage_error_exits_two(self):
        proc = subprocess.run(
            [sys.executable, "-m", "graphtables.cli", "bench"],
            capture_output=True)
        assert proc.returncode == 2

    def test_pipeline_subcommand(self, tmp_path, capsys):
        edges = tmp_path / "e.tsv"
        edges.write_text("0\t1\n")
        script = tmp_path / "s.script"
        script.write_text(
            f"load E {edges} src:int,dst:int\n"
            f"tograph G E src dst\n"
            f"totable T G nodes\n"
            f"save T {tmp_path / 'nodes.tsv'}\n")
        assert main(["pipeline", str(script)]) == 0
        assert (tmp_path / "nodes.tsv").read_text() == "0\t1\t0\n1\t0\t1\n"
