import json
import subprocess
import sys

import numpy as np
import pytest

from greedymis import cli
from greedymis.graph import build_graph, write_edge_list
from greedymis.mis import MisRun


@pytest.fixture
def graph_file(tmp_path):
    path = tmp_path / "g.txt"
    write_edge_list(build_graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]), path)
    return path


@pytest.mark.parametrize("algo", ["parallel", "sequential", "slowed", "luby"])
def test_run(graph_file, capsys, algo):
    assert cli.main(["run", "--input", str(graph_file), "--seed", "3", "--algo", algo]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["n"] == 6 and set(doc) == {"n", "mis", "inhibitor", "round_joined", "round_removed", "num_rounds"}
    assert 2 <= len(doc["mis"]) <= 3


def test_run_bad_input(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n0 0\n")
    assert cli.main(["run", "--input", str(bad), "--seed", "1"]) == 2
    assert cli.main(["run", "--input", str(tmp_path / "missing.txt"), "--seed", "1"]) == 2


def test_run_invariant_violation(graph_file, monkeypatch, capsys):
    def broken(g, perm):
        z = np.full(g.n, -1)
        return MisRun(np.zeros(g.n, dtype=bool), z, z, z, 1)

    monkeypatch.setattr(cli, "parallel_greedy", broken)
    assert cli.main(["run", "--input", str(graph_file), "--seed", "1"]) == 3


def test_bench_writes_csv(tmp_path):
    out = tmp_path / "r.csv"
    argv = ["bench", "--n", "64,128", "--trials", "2", "--seed", "4", "--out", str(out)]
    assert cli.main(argv) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "n,m,trial,algorithm,rounds,mis_size,dep_len,inc_path,suffix_deg,wall_ms"
    assert len(lines) == 1 + 2 * 2 * 2


def test_bench_bad_config(capsys):
    assert cli.main(["bench", "--n", "128,64", "--seed", "1"]) == 2


def test_lowerbound(capsys):
    assert cli.main(["lowerbound", "--n", "1024", "--trials", "4", "--seed", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["layers"] == 3 and doc["components"] == 32 and doc["threshold"] == 2
    assert len(doc["rounds"]) == 4


def test_depgraph(graph_file, tmp_path, capsys):
    dot = tmp_path / "d.dot"
    assert cli.main(["depgraph", "--input", str(graph_file), "--seed", "2", "--dot", str(dot)]) == 0
    assert dot.read_text().startswith("digraph")
    assert json.loads(capsys.readouterr().out)["dependency_length"] % 2 == 1


def test_cluster(tmp_path, capsys):
    path = tmp_path / "s.txt"
    path.write_text("3\n0 1 +\n1 2 +\n0 2 -\n")
    assert cli.main(["cluster", "--signed", str(path), "--seed", "5", "--oracle"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["opt"] == 1 and doc["cost"] <= 3 * doc["opt"]
    assert set(doc["cluster_of"]) == {"0", "1", "2"}


def test_match_and_color(graph_file, capsys):
    assert cli.main(["match", "--input", str(graph_file), "--seed", "1"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].split()[0] == "6" and len(out) == 1 + int(out[0].split()[1])
    assert cli.main(["color", "--input", str(graph_file), "--seed", "1"]) == 0
    out = capsys.readouterr().out.splitlines()
    colors = [int(line.split()[1]) for line in out[1:]]
    assert len(colors) == 6 and max(colors) <= 2
    assert cli.main(["color", "--input", str(graph_file), "--delta", "1", "--seed", "1"]) == 2


def test_console_entry_point(graph_file):
    proc = subprocess.run(
        [sys.executable, "-m", "greedymis.cli", "run", "--input", str(graph_file), "--seed", "1"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(proc.stdout)["n"] == 6
