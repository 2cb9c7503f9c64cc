import json
from pathlib import Path

import numpy as np
import pytest

from gfon import cli
from gfon.errors import ConfigError
from gfon.io import emit_mf_samples, sha256_file
from gfon.membership import Gaussian, GridSpec, RootExp, sample
from gfon.scenarios import SCHEMAS, parse_config, run_scenario, validate

MINIMAL = {
    "connection-1": {"c2": 3, "sigma1": 1, "sigma2": 0.5},
    "connection-3": {"c2": 0, "sigma2": 0.5, "c3": 0.2, "sigma3": 1},
    "connection-4": {"c_n": 1, "sigmas": [0.5, 1.0, 0.25]},
}


def test_minimal_connection_1_valid():
    cfg = parse_config("scenario: connection-1\nparameters:\n  c2: 3\n  sigma1: 1\n  sigma2: 0.5\n")
    assert cfg.parameters["c2"] == 3.0 and cfg.seed == 42


def test_flat_keys_accepted():
    cfg = parse_config("scenario: connection-1\nc2: 3\nsigma1: 1\nsigma2: 0.5\nseed: 7\n")
    assert cfg.seed == 7


def test_d_out_of_range_message():
    with pytest.raises(ConfigError) as exc:
        parse_config("scenario: connection-13\nd: 1.0\n")
    assert any("d must be in (0,1)" in e for e in exc.value.errors)


def test_all_errors_collected():
    with pytest.raises(ConfigError) as exc:
        parse_config("scenario: connection-1\nsigma1: -1\nbogus: 2\n")
    errs = exc.value.errors
    assert any("bogus" in e for e in errs)
    assert any("sigma1" in e and "> 0" in e for e in errs)
    assert any("c2" in e and "required" in e for e in errs)
    assert any("sigma2" in e and "required" in e for e in errs)


def test_unknown_scenario_and_bad_yaml():
    with pytest.raises(ConfigError):
        parse_config("scenario: connection-99\n")
    with pytest.raises(ConfigError):
        parse_config("scenario: [unterminated\n")
    with pytest.raises(ConfigError):
        parse_config("- a\n- b\n")


def test_scenario_mismatch():
    with pytest.raises(ConfigError):
        parse_config("scenario: connection-1\n", scenario="fig-17")


def test_fig17_defaults():
    cfg = parse_config("", scenario="fig-17")
    assert cfg.parameters["n"] == 30 and cfg.parameters["sigma0"] is None and cfg.seed == 42


def test_cross_checks():
    with pytest.raises(ConfigError, match="w1 \\+ w2"):
        validate("connection-8", {"w1": 0.5, "w2": 0.4})
    with pytest.raises(ConfigError, match="x0"):
        validate("fig-17", {"n": 5, "x0": [1, 2]})


def test_emit_mf_samples_gaussian(tmp_path):
    path = emit_mf_samples(Gaussian(4, 1), GridSpec(0.0, 8.0, 0.01), tmp_path / "g.csv")
    rows = path.read_text().splitlines()
    assert rows[0] == "x,mu" and len(rows) == 802
    assert "4,1" in rows
    s = sample(RootExp(0, 1, 1), GridSpec(-1.0, 1.0, 0.5))
    rows = emit_mf_samples(s, None, tmp_path / "s.csv").read_text().splitlines()
    assert [r.split(",")[0] for r in rows[1:]] == ["-1", "-0.5", "0", "0.5", "1"]


def test_connection_2_bundle_has_four_curves(tmp_path):
    run_scenario(validate("connection-2"), tmp_path)
    assert len(list(tmp_path.glob("*.csv"))) == 4


def test_connection_6_report(tmp_path):
    rep = run_scenario(validate("connection-6"), tmp_path)
    stats = rep["results"]["stats"]
    assert (stats["sdv"], stats["kurtosis"], stats["sharpness"]) == pytest.approx((2.5, 2.8, 2.5))


def test_sweep_h(tmp_path):
    rep = run_scenario(validate("sweep-h", {"threshold": "no"}), tmp_path)
    winners = [r["winner"] for r in rep["results"]["runs"]]
    assert winners == ["smart", "smart", "smart", "stubborn", "stubborn"]
    assert len(list(tmp_path.glob("h_*/trajectory.csv"))) == 5


def test_manifest_lists_every_file(tmp_path):
    run_scenario(validate("fig-21"), tmp_path)
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    listed = {e["path"]: e["sha256"] for e in manifest["files"]}
    on_disk = {p.relative_to(tmp_path).as_posix() for p in tmp_path.rglob("*") if p.is_file()}
    assert set(listed) == on_disk - {"manifest.json"}
    for rel, digest in listed.items():
        assert sha256_file(tmp_path / rel) == digest
    lines = (tmp_path / "topology.jsonl").read_text().splitlines()
    first = json.loads(lines[0])
    assert first["t"] == 1 and all(len(e) == 3 for e in first["edges"])


def test_trajectory_csv_layout(tmp_path):
    run_scenario(validate("connection-9", {"t_max": 3}), tmp_path)
    rows = (tmp_path / "trajectory.csv").read_text().splitlines()
    assert rows[0] == "t,node,center,sdv" and len(rows) == 1 + 4 * 2
    assert rows[1].startswith("0,0,0.0,1.0")


# --- command line ----------------------------------------------------------

def test_cli_success(tmp_path, capsys):
    cfg = tmp_path / "c.yaml"
    cfg.write_text("scenario: connection-1\nparameters:\n  c2: 3\n  sigma1: 1\n  sigma2: 0.5\n")
    out = tmp_path / "out"
    assert cli.main(["connection-1", "--config", str(cfg), "--out", str(out)]) == 0
    assert (out / "curve.csv").exists() and (out / "manifest.json").exists()


def test_cli_validation_exit_code(tmp_path, capsys):
    cfg = tmp_path / "c.yaml"
    cfg.write_text("scenario: connection-13\nd: 1.0\n")
    assert cli.main(["connection-13", "--config", str(cfg), "--out", str(tmp_path)]) == 1
    assert "d must be in (0,1)" in capsys.readouterr().err
    assert cli.main(["connection-1", "--config", str(tmp_path / "missing.yaml")]) == 1


def test_cli_runtime_error_exit_code(tmp_path, capsys, monkeypatch):
    from gfon import scenarios
    from gfon.errors import ConvergenceError

    def boom(p, seed, out):
        raise ConvergenceError("did not settle")

    monkeypatch.setitem(scenarios.RUNNERS, "fig-17", boom)
    assert cli.main(["fig-17", "--out", str(tmp_path)]) == 2
    assert "fig-17" in capsys.readouterr().err


def test_cli_seed_and_env_out(tmp_path, monkeypatch):
    monkeypatch.setenv("FON_OUT", str(tmp_path / "root"))
    assert cli.main(["fig-21", "--seed", "5"]) == 0
    rep = json.loads((tmp_path / "root" / "fig-21" / "report.json").read_text())
    assert rep["seed"] == 5


def test_every_scenario_has_a_runner():
    from gfon.scenarios import RUNNERS
    assert set(RUNNERS) == set(SCHEMAS)
