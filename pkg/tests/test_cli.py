"""End-to-end CLI: generate, ingest, play, sweep, analyze."""

import json

import pytest

from tgd import from_text
from tgd.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestGenerate:
    def test_ert_to_stdout(self, capsys):
        code, out = run(capsys, "generate", "ert", "--n", "6", "--p", "0.5", "--tmax", "4", "--seed", "3")
        assert code == 0
        graph = from_text(out)
        assert graph.n == 6 and graph.tmax == 4

    def test_thm52_to_file(self, tmp_path, capsys):
        target = tmp_path / "g.graph"
        code, _ = run(capsys, "generate", "thm52", "--n", "6", "--tmax", "5", "--out", str(target))
        assert code == 0
        graph = from_text(target.read_text())
        assert graph.m == 12

    def test_omega_m(self, capsys):
        code, out = run(capsys, "generate", "omega-m", "--x", "2")
        assert code == 0
        graph = from_text(out)
        assert graph.n == 10 and graph.m == 9 * 4 - 2


class TestIngest:
    def test_writes_graphs_and_id_maps(self, tmp_path, capsys):
        data = tmp_path / "raw.csv"
        data.write_text("net,u,v,ts\n1,5,7,10.0\n1,7,9,20.0\n2,1,2,3.0\n")
        out_dir = tmp_path / "out"
        code, out = run(
            capsys, "ingest", "--input", str(data), "--bucketing", "raw",
            "--reduction", "first", "--out", str(out_dir),
        )
        assert code == 0 and "2 network(s)" in out
        assert (out_dir / "1.graph").exists() and (out_dir / "1.ids").exists()
        graph = from_text((out_dir / "1.graph").read_text())
        assert graph.n == 3 and graph.m == 2

    def test_fixed_width_flag(self, tmp_path, capsys):
        data = tmp_path / "raw.csv"
        data.write_text("1,0,1,10.0\n1,1,2,35.0\n")
        out_dir = tmp_path / "out"
        code, _ = run(
            capsys, "ingest", "--input", str(data), "--bucketing", "fixed:10",
            "--reduction", "multi", "--out", str(out_dir),
        )
        assert code == 0
        assert from_text((out_dir / "1.graph").read_text()).tmax == 3


class TestPlay:
    def test_honest_game(self, tmp_path, capsys):
        graph_file = tmp_path / "g.graph"
        run(capsys, "generate", "ert", "--n", "8", "--p", "0.4", "--tmax", "5",
            "--seed", "1", "--out", str(graph_file))
        transcript_file = tmp_path / "t.json"
        code, out = run(
            capsys, "play", "--graph", str(graph_file), "--discoverer", "discovery-follow",
            "--adversary", "honest", "--delta", "2", "--transcript", str(transcript_file),
        )
        assert code == 0
        assert "winner: discoverer" in out
        assert "phases:" in out
        doc = json.loads(transcript_file.read_text())
        assert doc["rounds"]

    def test_lazy_adversary_game(self, capsys):
        code, out = run(
            capsys, "play", "--discoverer", "brute-force", "--adversary", "thm52",
            "--n", "6", "--tmax", "5", "--delta", "1",
        )
        assert code == 0
        assert "winner: discoverer" in out
        assert "rounds: 30" in out
        assert "lower bound: 6" in out

    def test_unknown_static_game(self, capsys):
        code, out = run(
            capsys, "play", "--discoverer", "brute-force", "--adversary", "unknown-static",
            "--n", "6", "--m", "5", "--tmax", "4", "--delta", "1",
        )
        assert code == 0
        assert "winner: discoverer" in out

    def test_follow_ipz(self, tmp_path, capsys):
        graph_file = tmp_path / "g.graph"
        graph_file.write_text("2 1 1 simple\n0 1 1\n")
        code, out = run(
            capsys, "play", "--graph", str(graph_file), "--discoverer", "follow",
            "--adversary", "honest", "--delta", "1",
        )
        assert code == 0 and "winner: discoverer" in out


class TestSweepAnalyze:
    def test_sweep_then_analyze(self, tmp_path, capsys):
        config = tmp_path / "sweep.cfg"
        config.write_text(
            "nodes = 5:10:5\np = 0.2,0.6\ntmax_ratio = 0.5,1\nreps = 1\nseed = 4\n"
        )
        csv_path = tmp_path / "results.csv"
        code, out = run(capsys, "sweep", "--config", str(config), "--out", str(csv_path))
        assert code == 0 and "records" in out
        report_path = tmp_path / "report.txt"
        code, _ = run(capsys, "analyze", "--in", str(csv_path), "--report", str(report_path))
        assert code == 0
        report = report_path.read_text()
        assert "threshold buckets" in report

    def test_analyze_to_stdout(self, tmp_path, capsys):
        config = tmp_path / "sweep.cfg"
        config.write_text("nodes = 6:6:1\np = 0.5\ntmax_ratio = 1\nreps = 1\nseed = 2\n")
        csv_path = tmp_path / "results.csv"
        run(capsys, "sweep", "--config", str(config), "--out", str(csv_path))
        code, out = run(capsys, "analyze", "--in", str(csv_path))
        assert code == 0 and "records: " in out
