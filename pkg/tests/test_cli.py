"""Tests for the command-line interface."""

import json

import pandas as pd
import pytest
from typer.testing import CliRunner

from opinion_urn import __version__, verify
from opinion_urn.cli import app, load_run_config, parse_floats
from opinion_urn.errors import DomainError
from opinion_urn.graphs import load_graph
from opinion_urn.models import CheckResult, VerificationReport

runner = CliRunner()


def test_version():
    result = runner.invoke(app, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_spectrum_of_path(tmp_path):
    out = tmp_path / "spectrum.json"
    result = runner.invoke(app, ["spectrum", "--graph", "path:5", "--out", str(out)])
    assert result.exit_code == 0, result.output
    summary = json.loads(out.read_text())
    assert summary["lambda"] == pytest.approx(0.185667, abs=1e-6)
    assert summary["n_vertices"] == 5 and summary["n_edges"] == 4
    assert len(summary["L"]) == 5
    assert sum(summary["p"]) == pytest.approx(1.0)


def test_simulate_writes_csv_and_sidecar(tmp_path):
    out = tmp_path / "run.csv"
    result = runner.invoke(app, [
        "simulate", "--graph", "path:5", "--x0", "1,1,0,0,0", "--g0", "1",
        "--steps", "50", "--seed", "3", "--out", str(out),
    ])
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(out)
    assert list(frame.columns[:3]) == ["t", "x_0", "x_1"]
    assert frame["t"].tolist() == list(range(51))
    assert frame.loc[0, "x_0"] == 1.0 and frame.loc[0, "x_4"] == 0.0

    meta = json.loads((tmp_path / "run.csv.meta.json").read_text())
    assert meta["config"]["seed"] == 3
    assert meta["config"]["u0"] == [1.0, 1.0, 0.0, 0.0, 0.0]


def test_simulate_is_reproducible(tmp_path):
    args = ["simulate", "-g", "cycle:6", "--x0", "1,0,1,0,1,0", "-t", "80", "-s", "9",
            "--samples", "0,40,80"]
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert runner.invoke(app, args + ["--out", str(first)]).exit_code == 0
    assert runner.invoke(app, args + ["--out", str(second)]).exit_code == 0
    assert first.read_text() == second.read_text()


@pytest.mark.parametrize("args", [
    ["--x0", "1.5,0,0,0,0"],
    ["--x0", "1,1,0"],
    ["--x0", "one,two"],
    ["--x0", "1,1,0,0,0", "--g0", "0"],
    ["--x0", "1,1,0,0,0", "--samples", "0,999"],
])
def test_simulate_rejects_bad_input(tmp_path, args):
    result = runner.invoke(app, ["simulate", "--steps", "20", "--out", str(tmp_path / "x.csv"),
                                 *args])
    assert result.exit_code == 1


def test_ensemble_writes_statistics(tmp_path):
    out = tmp_path / "ensemble.csv"
    result = runner.invoke(app, [
        "ensemble", "--graph", "path:5", "--x0", "1,1,0,0,0", "--steps", "200",
        "--trajectories", "8", "--seed", "2", "--fit-window", "10,200", "--out", str(out),
    ])
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(out)
    assert list(frame.columns) == ["t", "mean_z_sq", "mean_a", "var_a", "n"]
    assert frame["t"].iloc[-1] == 200
    assert (frame["n"] == 8).all()

    summary = json.loads((tmp_path / "ensemble.json").read_text())
    assert summary["lambda"] == pytest.approx(0.185667, abs=1e-6)
    assert summary["fit"]["window"] == [10, 200]
    assert summary["seeds"]["base_seed"] == 2
    assert summary["metadata"]["rng"] == "numpy.PCG64"


def test_ensemble_rejects_bad_window(tmp_path):
    result = runner.invoke(app, ["ensemble", "--x0", "1,1,0,0,0", "--fit-window", "10",
                                 "--out", str(tmp_path / "e.csv")])
    assert result.exit_code == 1


def test_ensemble_reads_yaml_config(tmp_path):
    config = tmp_path / "run.yaml"
    config.write_text("graph: complete:3\nx0: [1.0, 0.0, 0.0]\nsteps: 60\ntrajectories: 4\n")
    out = tmp_path / "k3.csv"
    result = runner.invoke(app, ["ensemble", "--config", str(config), "--out", str(out)])
    assert result.exit_code == 0, result.output
    summary = json.loads(out.with_suffix(".json").read_text())
    assert summary["lambda"] == pytest.approx(0.75)
    assert summary["config"]["graph"] == "complete:3"


def test_graph_export(tmp_path):
    out = tmp_path / "graph.json"
    result = runner.invoke(app, ["graph", "export", "--graph", "star:4", "--out", str(out)])
    assert result.exit_code == 0, result.output
    graph = load_graph(out)
    assert graph.n_vertices == 4 and graph.n_edges == 3

    result = runner.invoke(app, ["spectrum", "--graph", str(out),
                                 "--out", str(tmp_path / "s.json")])
    assert result.exit_code == 0, result.output


def test_graph_export_rejects_unknown_family():
    result = runner.invoke(app, ["graph", "export", "--graph", "hypercube:3"])
    assert result.exit_code == 1


def test_verify_exit_codes(monkeypatch):
    def fake(quick=False):
        return VerificationReport(quick=quick, checks=[
            CheckResult(name="heat_equation", passed=True, detail="ok"),
            CheckResult(name="polya", passed=False, detail="KS too large"),
        ])

    monkeypatch.setattr(verify, "run_verification", fake)
    result = runner.invoke(app, ["verify", "--quick"])
    assert result.exit_code == 2
    assert "polya" in result.output

    monkeypatch.setattr(verify, "run_verification",
                        lambda quick=False: VerificationReport(quick=quick, checks=[]))
    assert runner.invoke(app, ["verify"]).exit_code == 0


def test_load_run_config_overrides(tmp_path):
    config = tmp_path / "run.yaml"
    config.write_text("graph: cycle:4\nu0: [1.0, 0.0, 0.0, 0.0]\nsteps: 10\n")
    run = load_run_config(config, x0=[0.5] * 4, steps=None)
    assert run.u0 is None and run.x0 == [0.5] * 4
    assert run.steps == 10 and run.graph == "cycle:4"


def test_parse_floats():
    assert parse_floats("1, 0.5,0", "--x0") == [1.0, 0.5, 0.0]
    assert parse_floats(None, "--x0") is None
    with pytest.raises(DomainError):
        parse_floats("1,a", "--x0")
