"""Sweep engine, recipes, and command-line interface."""

import json
import subprocess
import sys

import pytest

from pskrx.cli import main
from pskrx.recipes import RECIPES, get_recipe
from pskrx.sweeps import (
    ConfigError,
    SweepConfig,
    config_from_dict,
    rows_to_csv,
    rows_to_json,
    run_sweep,
)


def test_config_validation_names_fields():
    with pytest.raises(ConfigError) as err:
        SweepConfig(metric="nope", M=3, alpha_sq_grid=[1.0]).validate()
    assert "metric" in str(err.value)
    with pytest.raises(ConfigError) as err:
        SweepConfig(metric="error_rate", M=3, alpha_sq_grid=[2.0, 1.0]).validate()
    assert "alpha_sq_grid" in str(err.value)
    with pytest.raises(ConfigError) as err:
        SweepConfig(metric="error_rate", M=3, alpha_sq_grid=[1.0], bounds=["usd"]).validate()
    assert "bounds" in str(err.value)
    with pytest.raises(ConfigError) as err:
        SweepConfig(
            metric="error_rate", M=3, alpha_sq_grid=[1.0], mc={"trials": 100}
        ).validate()
    assert "mc.seed" in str(err.value)


def test_bounds_only_sweep():
    cfg = SweepConfig(
        metric="error_rate", M=3, alpha_sq_grid=[0.5, 1.0], bounds=["helstrom"]
    )
    rows = run_sweep(cfg)
    assert len(rows) == 2
    assert all(r.curve_id == "bound-helstrom" for r in rows)


def test_rows_sorted_and_formatted():
    cfg = SweepConfig(
        metric="error_rate",
        M=3,
        alpha_sq_grid=[0.5, 1.0],
        receivers=[{"kind": "static3", "R": 0.5}, {"kind": "feedforward", "M": 3, "N": 3}],
        bounds=["helstrom", "heterodyne"],
    )
    rows = run_sweep(cfg)
    keys = [r.sort_key() for r in rows]
    assert keys == sorted(keys)
    csv = rows_to_csv(rows)
    lines = csv.strip().split("\n")
    assert lines[0] == "alpha_sq,curve_id,value,provenance,ci95"
    assert len(lines) == 1 + len(rows)
    # 12 significant digits
    value_field = lines[1].split(",")[2]
    assert len(value_field.replace(".", "").replace("-", "").lstrip("0")) >= 11
    data = json.loads(rows_to_json(rows))
    assert len(data) == len(rows)
    assert set(data[0]) == {"alpha_sq", "curve_id", "value", "provenance", "ci95"}


def test_sweep_with_mc_rows():
    cfg = SweepConfig(
        metric="error_rate",
        M=3,
        alpha_sq_grid=[1.0],
        receivers=[{"kind": "static3", "R": 0.5}],
        mc={"trials": 200_000, "seed": 42},
    )
    rows = run_sweep(cfg)
    analytic = [r for r in rows if r.provenance == "analytic"]
    mc = [r for r in rows if r.provenance == "monte-carlo"]
    assert len(analytic) == 1 and len(mc) == 1
    assert mc[0].ci95 is not None
    assert abs(mc[0].value - analytic[0].value) < 3 * mc[0].ci95


def test_mutual_info_metric_sweep():
    cfg = SweepConfig(
        metric="mutual_info",
        M=4,
        alpha_sq_grid=[1.0],
        receivers=[{"kind": "feedforward", "M": 4, "N": 4}],
        bounds=["usd", "heterodyne", "helstrom"],
    )
    rows = run_sweep(cfg)
    by_id = {r.curve_id: r.value for r in rows}
    assert 0.0 < by_id["bound-usd"] < 2.0
    assert by_id["4psk-ff-N4"] > by_id["bound-usd"]


def test_recipes_instantiate_and_include_required_names():
    assert "3psk-noff-ideal" in RECIPES
    assert "4psk-ff-ideal" in RECIPES
    for name in RECIPES:
        cfg = get_recipe(name)
        cfg.validate()
    with pytest.raises(KeyError):
        get_recipe("no-such-recipe")


def test_recipe_runs_on_reduced_grid():
    cfg = get_recipe("4psk-ff-ideal")
    cfg.alpha_sq_grid = [0.5, 2.0]
    rows = run_sweep(cfg)
    ids = {r.curve_id for r in rows}
    assert {"4psk-ff-N4", "4psk-ff-N10", "4psk-ff-Ninf",
            "bound-helstrom", "bound-heterodyne", "bound-bondurant_asymptote"} <= ids
    by = {(r.curve_id, r.alpha_sq): r.value for r in rows}
    for a2 in (0.5, 2.0):
        assert by[("bound-helstrom", a2)] <= by[("4psk-ff-N10", a2)] + 1e-12
        assert by[("4psk-ff-N10", a2)] <= by[("4psk-ff-N4", a2)] + 1e-12


def test_cli_sweep_and_bounds(tmp_path):
    cfg_file = tmp_path / "cfg.json"
    cfg_file.write_text(
        json.dumps(
            {
                "metric": "error_rate",
                "M": 3,
                "alpha_sq_grid": [0.5, 1.0],
                "receivers": [{"kind": "static3", "R": 0.5}],
                "bounds": ["helstrom"],
            }
        )
    )
    out = tmp_path / "rows.csv"
    assert main(["sweep", "--config", str(cfg_file), "--output", str(out)]) == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0].startswith("alpha_sq,")
    assert len(lines) == 5

    out2 = tmp_path / "bounds.csv"
    assert main(["bounds", "--M", "4", "--alpha-sq", "1,2", "--output", str(out2)]) == 0
    assert "bound-bondurant_asymptote" in out2.read_text()


def test_cli_invalid_config_exit_code(tmp_path):
    cfg_file = tmp_path / "bad.json"
    cfg_file.write_text(json.dumps({"metric": "bogus", "M": 3, "alpha_sq_grid": [1]}))
    assert main(["sweep", "--config", str(cfg_file)]) == 2


def test_cli_recipe_list(capsys):
    assert main(["recipe", "--list"]) == 0
    listed = capsys.readouterr().out.strip().split("\n")
    assert "3psk-noff-ideal" in listed


def test_cli_recipe_unknown():
    assert main(["recipe", "definitely-not-a-recipe"]) == 2


def test_cli_mc_validate_deterministic_across_workers(tmp_path, monkeypatch):
    args = ["mc-validate", "--quick", "--seed", "31415",
            "--alpha-sq", "0.5", "--eta", "1.0", "--nu", "0"]
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    monkeypatch.setenv("PSKRX_THREADS", "1")
    rc1 = main(args + ["--output", str(out1)])
    monkeypatch.setenv("PSKRX_THREADS", "4")
    rc2 = main(args + ["--output", str(out2)])
    assert rc1 == rc2 == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_cli_entrypoint_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "pskrx.cli", "bounds", "--M", "3", "--alpha-sq", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("alpha_sq,")
