import csv
import json

import pytest

from specmate.app import EXIT_DGS, EXIT_INPUT_ERROR, EXIT_NON_DGS, EXIT_OUTPUT_ERROR, EXIT_UNDECIDED, main
from specmate.canonical import canonical_form
from specmate.graph import Graph
from specmate.graph6 import parse_graph6
from specmate.model_report import CSV_HEADER
from specmate.options import AppOptions, BatchOptions, SolverOptions, resolve_cap


@pytest.fixture(autouse=True)
def home(tmp_path, monkeypatch):
    home = tmp_path / "home"
    home.mkdir()
    monkeypatch.setenv("HOME", str(home))
    monkeypatch.delenv("SPECMATE_CAP", raising=False)
    return home


@pytest.fixture
def adj13(tmp_path, example13):
    path = tmp_path / "example13.txt"
    rows = ["# 13 vertices, L = 12", "13"] + [" ".join(str(a) for a in row) for row in example13["adjacency"]]
    path.write_text("\n".join(rows) + "\n")
    return path


def test_analyze_k2(capsys):
    assert main(["analyze", "--graph6", "A_"]) == EXIT_DGS
    out = capsys.readouterr().out
    assert "verdict:         DGS" in out


def test_analyze_bad_input(tmp_path, capsys):
    assert main(["analyze", "--graph6", "garbage"]) == EXIT_INPUT_ERROR
    assert "graph6" in capsys.readouterr().err
    assert main(["analyze", "--graph6", "A\u00e9"]) == EXIT_INPUT_ERROR
    assert "not ASCII" in capsys.readouterr().err
    assert main(["analyze", "--adj", str(tmp_path / "missing.txt")]) == EXIT_INPUT_ERROR
    bad = tmp_path / "bad.txt"
    bad.write_text("2\n01\n11\n")
    assert main(["analyze", "--adj", str(bad)]) == EXIT_INPUT_ERROR


def test_usage_errors_are_input_errors(capsys):
    assert main([]) == EXIT_INPUT_ERROR
    assert main(["analyze"]) == EXIT_INPUT_ERROR
    assert main(["analyze", "--graph6", "A_", "--adj", "x"]) == EXIT_INPUT_ERROR
    assert main(["batch", "--n", "0", "--count", "3", "--seed", "1"]) == EXIT_INPUT_ERROR
    assert main(["batch", "--n", "5", "--count", "3", "--seed", "-1"]) == EXIT_INPUT_ERROR
    assert capsys.readouterr().out == ""


def test_analyze_json(adj13, capsys):
    assert main(["analyze", "--adj", str(adj13), "--json"]) == EXIT_NON_DGS
    data = json.loads(capsys.readouterr().out)
    assert data["verdict"]["status"] == "NonDGS"
    assert data["level"]["L"] == "12"
    assert data["snf_summary"]["d_n"] == "967498002648"


def test_mates_prints_graph6_lines(adj13, example13, capsys):
    assert main(["mates", "--adj", str(adj13)]) == EXIT_NON_DGS
    lines = capsys.readouterr().out.split()
    assert len(lines) == 2
    printed = {canonical_form(Graph.from_matrix(m)) for m in example13["mates"]}
    assert {canonical_form(parse_graph6(line)) for line in lines} == printed


def test_mates_of_a_dgs_graph_is_empty(capsys):
    assert main(["mates", "--graph6", "A_"]) == EXIT_DGS
    assert capsys.readouterr().out == ""


def test_mates_to_file(adj13, tmp_path):
    out = tmp_path / "mates" / "ex13.g6"
    assert main(["mates", "--adj", str(adj13), "--out", str(out)]) == EXIT_NON_DGS
    assert len(out.read_text().splitlines()) == 2
    blocker = tmp_path / "blocker"
    blocker.write_text("")
    assert main(["mates", "--adj", str(adj13), "--out", str(blocker / "x.g6")]) == EXIT_OUTPUT_ERROR


def test_cap_precedence(adj13, home, capsys):
    assert main(["analyze", "--adj", str(adj13)], environ={"SPECMATE_CAP": "20"}) == EXIT_UNDECIDED
    assert main(["analyze", "--adj", str(adj13), "--cap", "65536"], environ={"SPECMATE_CAP": "20"}) == EXIT_NON_DGS
    AppOptions(solver=SolverOptions(cap=20)).save()
    assert main(["analyze", "--adj", str(adj13)], environ={}) == EXIT_UNDECIDED
    assert main(["analyze", "--adj", str(adj13)], environ={"SPECMATE_CAP": "1000"}) == EXIT_NON_DGS
    assert "overflow" in capsys.readouterr().out


def test_bad_cap_values():
    assert main(["analyze", "--graph6", "A_"], environ={"SPECMATE_CAP": "lots"}) == EXIT_INPUT_ERROR
    assert main(["analyze", "--graph6", "A_", "--cap", "0"], environ={}) == EXIT_INPUT_ERROR


def test_batch_to_stdout(capsys):
    assert main(["batch", "--n", "6", "--count", "4", "--seed", "2"]) == EXIT_DGS
    data = json.loads(capsys.readouterr().out)
    assert data["count"] == 4
    assert sum(v for k, v in data["tallies"].items() if k != "DGS_omega_complete") == 4


def test_batch_to_files(tmp_path, capsys):
    rows = tmp_path / "rows.csv"
    summary = tmp_path / "summary.json"
    argv = ["batch", "--n", "7", "--count", "5", "--seed", "9", "--csv", str(rows), "--json", str(summary)]
    assert main(argv) == EXIT_DGS
    assert capsys.readouterr().out == ""
    with open(rows, newline="") as f:
        table = list(csv.reader(f))
    assert table[0] == CSV_HEADER
    assert len(table) == 6
    data = json.loads(summary.read_text())
    assert data["n"] == 7
    assert data["seed"] == 9


def test_options_round_trip(tmp_path):
    path = tmp_path / "options.json"
    options = AppOptions(solver=SolverOptions(cap=99, rho_retries=1), batch=BatchOptions(jobs=3))
    options.save(path)
    assert AppOptions.load(path) == options


def test_unreadable_options_fall_back_to_defaults(tmp_path):
    path = tmp_path / "options.json"
    path.write_text("{not json")
    assert AppOptions.load(path) == AppOptions()
    path.write_text(json.dumps({"solver": {"no_such_key": 1}}))
    assert AppOptions.load(path) == AppOptions()
    assert AppOptions.load(tmp_path / "absent.json") == AppOptions()


def test_resolve_cap():
    options = AppOptions(solver=SolverOptions(cap=7))
    assert resolve_cap(None, options, {}) == 7
    assert resolve_cap(None, options, {"SPECMATE_CAP": "11"}) == 11
    assert resolve_cap(3, options, {"SPECMATE_CAP": "11"}) == 3
    with pytest.raises(ValueError):
        resolve_cap(None, options, {"SPECMATE_CAP": "-4"})
