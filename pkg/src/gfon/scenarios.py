"""Named scenarios: parameter schemas, config parsing and file-emitting runners.

A config is a small YAML document::

    scenario: connection-1
    seed: 42                # optional
    output_dir: out/c1      # optional
    parameters:
      c2: 3
      sigma1: 1
      sigma2: 0.5

Parameter keys may also sit at the top level. Vectors are flow lists such as
``[0, 1, 2]``. Every problem is collected before a ``ConfigError`` is raised.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

import numpy as np
import yaml

from . import bcfon, connections, dynamics
from .errors import ConfigError, FonError
from .io import emit_mf_samples, write_json, write_manifest, write_topology, write_trajectory
from .membership import Gaussian, GridSpec, RootExp

DEFAULT_SEED = dynamics.DEFAULT_SEED
REQUIRED = object()
SPECIAL_KEYS = ("scenario", "seed", "output_dir", "parameters")


@dataclass(frozen=True)
class Param:
    kind: str = "real"          # real | int | vec | choice
    default: object = REQUIRED
    lo: Optional[float] = None
    hi: Optional[float] = None
    lo_open: bool = False
    hi_open: bool = False
    choices: tuple = ()
    nullable: bool = False
    scalar_ok: bool = False     # a vector parameter that also accepts one number

    def describe_range(self) -> str:
        if self.lo is not None and self.hi is not None:
            return f"in {'(' if self.lo_open else '['}{self.lo:g},{self.hi:g}{')' if self.hi_open else ']'}"
        if self.lo is not None:
            return f"{'>' if self.lo_open else '>='} {self.lo:g}"
        return f"{'<' if self.hi_open else '<='} {self.hi:g}"

    def in_range(self, v) -> bool:
        if self.lo is not None and (v <= self.lo if self.lo_open else v < self.lo):
            return False
        if self.hi is not None and (v >= self.hi if self.hi_open else v > self.hi):
            return False
        return True


def _num(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)


def _coerce(key: str, param: Param, value, errors: list):
    if value is None and param.nullable:
        return None
    ranged = param.lo is not None or param.hi is not None
    if param.kind == "choice":
        if value not in param.choices:
            errors.append(f"{key} must be one of {', '.join(param.choices)}")
        return value
    if param.kind == "int":
        if not (_num(value) and float(value).is_integer()):
            errors.append(f"{key} must be an integer")
            return value
        value = int(value)
        if ranged and not param.in_range(value):
            errors.append(f"{key} must be {param.describe_range()}")
        return value
    if param.kind == "real":
        if not _num(value):
            errors.append(f"{key} must be a finite number")
            return value
        value = float(value)
        if ranged and not param.in_range(value):
            errors.append(f"{key} must be {param.describe_range()}")
        return value
    # vectors
    if param.scalar_ok and _num(value):
        items = [value]
    elif isinstance(value, list) and value and all(_num(x) for x in value):
        items = value
    else:
        errors.append(f"{key} must be a non-empty list of finite numbers")
        return value
    items = [float(x) for x in items]
    if ranged and not all(param.in_range(x) for x in items):
        errors.append(f"{key} must be {param.describe_range()}")
    return items[0] if param.scalar_ok and _num(value) else items


def _pos(default=REQUIRED, kind="real"):
    return Param(kind, default, lo=0, lo_open=True)


def _nonneg(default=REQUIRED):
    return Param("real", default, lo=0)


def _unit(default=REQUIRED):
    return Param("real", default, lo=0, hi=1, lo_open=True, hi_open=True)


GRID = {"grid_step": _pos(0.01), "halfwidth": _pos(8.0)}

_RING = {
    "n": Param("int", 30, lo=3),
    "t_max": Param("int", 100_000, lo=1),
    "tol": _pos(1e-8),
    "shortcuts": Param("int", 0, lo=0),
    "normalize": Param("choice", "metropolis", choices=("metropolis", "uniform")),
    "x0": Param("vec", None, nullable=True),
    "sigma0": Param("vec", None, nullable=True, lo=0),
}


def _bcfon(n, reference):
    return {
        "n": Param("int", n, lo=2),
        "d": Param("vec", 0.95, lo=0, hi=1, lo_open=True, hi_open=True, scalar_ok=True),
        "a": _pos(0.1),
        "reference": Param("choice", reference, choices=bcfon.REFERENCES),
        "init_centers": Param("vec", None, nullable=True),
        "init_sdvs": Param("vec", None, nullable=True, lo=0),
        "sdv_lo": _nonneg(0.0),
        "sdv_hi": _nonneg(1.0),
        "t_max": Param("int", 100_000, lo=1),
        "record_topology": Param("choice", "changes", choices=("changes", "all", "none")),
    }


_STUDENTS = {
    "x_prof0": Param("real", 2.0),
    "x2_1": Param("real", 2.0),
    "x3_1": Param("real", 10.0),
    "t_max": Param("int", 1000, lo=1),
}

_PAIR = {
    "w12": _unit(0.3),
    "w21": _unit(0.6),
    "x1": Param("real", 0.0),
    "x2": Param("real", 1.0),
    "sigma1": _pos(1.0),
    "sigma2": _pos(1.0),
}

SCHEMAS: dict[str, dict[str, Param]] = {
    "connection-1": {"c2": Param(), "sigma1": _pos(), "sigma2": _pos(), **GRID},
    "connection-2": {"c1": Param("real", 4.0), "sigma2": _pos(1.0),
                     "c2": Param("vec", [0.0, 1.0, 2.0], lo=0, scalar_ok=True), **GRID},
    "connection-3": {"c2": Param(), "sigma2": _pos(), "c3": _nonneg(), "sigma3": _pos(), **GRID},
    "connection-4": {"c_n": Param(), "sigmas": Param("vec", lo=0, lo_open=True), **GRID},
    "connection-5": {"c1": Param("real", 0.0), "sigma_n": _pos(1.0), "n": Param("int", 5, lo=2),
                     "grid_step": _pos(0.01), "halfwidth": _pos(8.0)},
    "connection-6": {"sigma1": _pos(1.0), "c3": Param("vec", [0.0, 0.0]), "sigma3": _pos(0.5),
                     "c4": _nonneg(0.0), "sigma4": _pos(1.0), **GRID},
    "connection-7": {"x0": Param("real", 0.0), "sigma": _pos(1.0), "t_max": Param("int", 100, lo=0),
                     "decline": Param("choice", "none", choices=("none", "harmonic"))},
    "connection-8": {"x0": Param("real", 0.0), "sigma1": _pos(1.0), "c2": Param("real", 10.0),
                     "sigma2": _pos(0.5), "w1": _unit(0.8), "w2": _unit(0.2),
                     "t_max": Param("int", 200, lo=0)},
    "connection-9": {**_PAIR, "t_max": Param("int", 200, lo=1)},
    "connection-10": {**_PAIR, "schedule": Param("choice", "geometric", choices=("geometric", "harmonic")),
                      "h": _unit(0.5), "t_max": Param("int", 2000, lo=1)},
    "connection-11": dict(_RING),
    "connection-12": {"h": _unit(0.9), **_STUDENTS},
    "connection-13": _bcfon(12, "local"),
    "sweep-h": {"h_values": Param("vec", [0.5, 0.6, 0.7, 0.8, 0.9], lo=0, hi=1, lo_open=True, hi_open=True),
                "threshold": Param("choice", "yes", choices=("yes", "no")), **_STUDENTS},
    "fig-17": dict(_RING),
    "fig-21": _bcfon(12, "local"),
    "fig-23": _bcfon(12, "global"),
    "fig-25": _bcfon(100, "global"),
}


def _cross_checks(scenario, p) -> list:
    errs = []
    if scenario == "connection-8" and abs(p["w1"] + p["w2"] - 1.0) > 1e-12:
        errs.append("w1 + w2 must equal 1")
    if scenario == "connection-10" and p["schedule"] == "geometric" \
            and abs((1 - p["h"]) - (p["w12"] + p["w21"])) < 1e-12:
        errs.append("1 - h must differ from w12 + w21")
    if scenario in ("connection-11", "fig-17"):
        for key in ("x0", "sigma0"):
            if isinstance(p[key], list) and len(p[key]) != p["n"]:
                errs.append(f"{key} must have n = {p['n']} entries")
    if scenario in ("connection-13", "fig-21", "fig-23", "fig-25"):
        if isinstance(p["d"], list) and len(p["d"]) not in (1, p["n"]):
            errs.append(f"d must be a scalar or have n = {p['n']} entries")
        for key in ("init_centers", "init_sdvs"):
            if isinstance(p[key], list) and len(p[key]) != p["n"]:
                errs.append(f"{key} must have n = {p['n']} entries")
        if _num(p["sdv_lo"]) and _num(p["sdv_hi"]) and p["sdv_lo"] > p["sdv_hi"]:
            errs.append("sdv_lo must not exceed sdv_hi")
    if scenario == "connection-6" and isinstance(p["c3"], list) and len(p["c3"]) < 1:
        errs.append("c3 must be a location vector")
    return errs


@dataclass
class ScenarioConfig:
    scenario: str
    parameters: dict
    seed: int = DEFAULT_SEED
    output_dir: Optional[str] = None
    defaulted: list = field(default_factory=list)


def validate(scenario, params: Optional[dict] = None, seed=None, output_dir=None) -> ScenarioConfig:
    """Check ``params`` against the scenario schema and fill in defaults."""
    errors = []
    params = dict(params or {})
    schema = SCHEMAS.get(scenario)
    if schema is None:
        raise ConfigError([f"scenario: unknown scenario {scenario!r} (known: {', '.join(SCHEMAS)})"])
    if seed is None:
        seed = DEFAULT_SEED
    elif not (_num(seed) and float(seed).is_integer() and seed >= 0):
        errors.append("seed: must be a nonnegative integer")
    if output_dir is not None and not isinstance(output_dir, str):
        errors.append("output_dir: must be a path string")

    out, defaulted = {}, []
    for key in sorted(set(params) - set(schema)):
        errors.append(f"parameters.{key}: unknown key for {scenario}")
    for key, param in schema.items():
        if key in params:
            sub = []
            out[key] = _coerce(key, param, params[key], sub)
            errors.extend(f"parameters.{key}: {e}" for e in sub)
        elif param.default is REQUIRED:
            errors.append(f"parameters.{key}: required for {scenario}")
        else:
            out[key] = param.default
            defaulted.append(key)
    if not errors:
        errors.extend(f"parameters: {e}" for e in _cross_checks(scenario, out))
    if errors:
        raise ConfigError(errors)
    return ScenarioConfig(scenario, out, int(seed), output_dir, defaulted)


def parse_config(text: str, scenario: Optional[str] = None) -> ScenarioConfig:
    """Parse and validate a YAML config; ``scenario`` overrides/checks the file's."""
    try:
        doc = yaml.safe_load(text) if text and text.strip() else {}
    except yaml.YAMLError as exc:
        raise ConfigError([f"config: not valid YAML ({exc})"]) from None
    if doc is None:
        doc = {}
    if not isinstance(doc, dict):
        raise ConfigError(["config: top level must be a key: value mapping"])
    errors = []
    named = doc.get("scenario")
    if scenario is not None and named is not None and named != scenario:
        errors.append(f"scenario: config names {named!r} but {scenario!r} was requested")
    scenario = scenario or named
    if scenario is None:
        errors.append("scenario: missing")
    params = doc.get("parameters", {}) or {}
    if not isinstance(params, dict):
        errors.append("parameters: must be a mapping")
        params = {}
    flat = {k: v for k, v in doc.items() if k not in SPECIAL_KEYS}
    for key in sorted(set(flat) & set(params)):
        errors.append(f"parameters.{key}: given both at top level and under parameters")
    if errors:
        raise ConfigError(errors)
    return validate(scenario, {**flat, **params}, doc.get("seed"), doc.get("output_dir"))


# --- runners ---------------------------------------------------------------

def _curve_grid(center, scale, p):
    return GridSpec(center - p["halfwidth"] * scale, center + p["halfwidth"] * scale, p["grid_step"])


def _static(out, result, grid, extra=None):
    files = [emit_mf_samples(result.curve, grid, out / "curve.csv")]
    return {"stats": result.record(), **(extra or {})}, files


def _run_connection_1(p, seed, out):
    r = connections.center_connection(p["c2"], p["sigma1"], p["sigma2"])
    return _static(out, r, _curve_grid(p["c2"], r.stats.sdv, p))


def _run_connection_2(p, seed, out):
    c2s = p["c2"] if isinstance(p["c2"], list) else [p["c2"]]
    scale = max(c2s) + p["sigma2"]
    grid = _curve_grid(p["c1"], scale, p)
    files, stats = [], []
    for k, c2 in enumerate(c2s):
        r = connections.sdv_connection(p["c1"], c2, p["sigma2"])
        files.append(emit_mf_samples(r.curve, grid, out / f"curve_c2_{k}.csv"))
        stats.append({"c2": c2, **r.record()})
    files.append(emit_mf_samples(Gaussian(p["c1"], p["sigma2"]), grid, out / "reference_gaussian.csv"))
    return {"stats": stats}, files


def _run_connection_3(p, seed, out):
    r = connections.center_sdv_connection(p["c2"], p["sigma2"], p["c3"], p["sigma3"])
    return _static(out, r, _curve_grid(p["c2"], r.stats.sdv, p))


def _run_connection_4(p, seed, out):
    r = connections.chain_in_center(p["c_n"], p["sigmas"])
    return _static(out, r, _curve_grid(p["c_n"], r.stats.sdv, p))


def _run_connection_5(p, seed, out):
    r = connections.chain_in_sdv_zero(p["c1"], p["sigma_n"], p["n"])
    extra = {"intermediate_exponents": [m.p for m in r.intermediates], "exponent": r.curve.p}
    return _static(out, r, _curve_grid(p["c1"], p["sigma_n"], p), extra)


def _run_connection_6(p, seed, out):
    r = connections.beijing_network(p["sigma1"], p["c3"], p["sigma3"], p["c4"], p["sigma4"])
    prof = r.curve.profile
    grid = _curve_grid(0.0, r.stats.sdv, p)
    # the radial curve along any ray through c3, as signed distance from c3
    files = [
        emit_mf_samples(RootExp(0.0, prof.A, prof.B), grid, out / "curve_profile.csv"),
        emit_mf_samples(Gaussian(0.0, p["sigma1"]), grid, out / "reference_gaussian.csv"),
    ]
    return {"stats": r.record(), "profile": {"A": prof.A, "B": prof.B}}, files


def _run_connection_7(p, seed, out):
    t = np.arange(p["t_max"] + 1)
    if p["decline"] == "none":
        sdvs = (t + 1) * p["sigma"]
    else:
        sdvs = p["sigma"] * np.cumsum(1.0 / (t + 1))
    traj = dynamics.Trajectory(np.full((t.size, 1), p["x0"]), sdvs[:, None])
    final = dynamics.self_feedback(p["x0"], p["sigma"], p["t_max"], p["decline"])
    files = [write_trajectory(traj, out / "trajectory.csv")]
    return {"final_center": float(final.center[0]), "final_sdv": final.sdv}, files


def _run_connection_8(p, seed, out):
    T = p["t_max"]
    centers, sdvs = np.empty((T + 1, 2)), np.empty((T + 1, 2))
    state = (p["x0"], p["sigma1"])
    centers[0], sdvs[0] = (state[0], p["c2"]), (state[1], p["sigma2"])
    for t in range(1, T + 1):
        state = dynamics.one_sided_step(state, p["c2"], p["sigma1"], p["sigma2"], p["w1"], p["w2"])
        centers[t], sdvs[t] = (state[0], p["c2"]), (state[1], p["sigma2"])
    closed = dynamics.one_sided_closed(p["x0"], p["sigma1"], p["c2"], p["sigma2"], p["w1"], p["w2"], T)
    files = [write_trajectory(dynamics.Trajectory(centers, sdvs), out / "trajectory.csv")]
    return {
        "closed_form": {"center": closed.center, "sdv": closed.sdv},
        "iterated": {"center": float(centers[-1, 0]), "sdv": float(sdvs[-1, 0])},
        "limits": {"center": closed.center_limit, "sdv": closed.sdv_limit},
    }, files


def _pair_matrix(p):
    return np.array([[1 - p["w12"], p["w12"]], [p["w21"], 1 - p["w21"]]])


def _run_connection_9(p, seed, out):
    w = _pair_matrix(p)
    sig = np.array([p["sigma1"], p["sigma2"]])
    state = dynamics.NetworkState([p["x1"], p["x2"]], sig)
    states = [state]
    for _ in range(p["t_max"]):
        state = dynamics.mutual_step(state, w, sig)
        states.append(state)
    traj = dynamics.Trajectory(np.array([s.centers for s in states]), np.array([s.sdvs for s in states]))
    sol = dynamics.mutual_asymptotics(w, [p["x1"], p["x2"]], sig, p["t_max"])
    files = [write_trajectory(traj, out / "trajectory.csv")]
    return {
        "eigenvalues": [1.0, float(w[0, 0] + w[1, 1] - 1)],
        "consensus": sol.consensus,
        "sdv_slope": sol.sdv_slope,
        "closed_form": {"centers": sol.centers, "sdvs": sol.sdvs},
        "iterated": {"centers": state.centers, "sdvs": state.sdvs},
    }, files


def _run_connection_10(p, seed, out):
    traj, report = dynamics.time_varying_run(
        _pair_matrix(p), [p["x1"], p["x2"]], [p["sigma1"], p["sigma2"]],
        p["schedule"], p["h"] if p["schedule"] == "geometric" else None, p["t_max"])
    return report, [write_trajectory(traj, out / "trajectory.csv")]


def _run_ring(p, seed, out):
    w = dynamics.ring_weights(p["n"], p["shortcuts"], seed=seed, normalize=p["normalize"])
    traj, report = dynamics.ring_run(p["n"], p["x0"], p["sigma0"], p["t_max"], p["tol"], w=w, seed=seed)
    eig, _ = dynamics.jacobi_eigensym(w)
    return {**report.as_dict(), "eigenvalues": eig}, [write_trajectory(traj, out / "trajectory.csv")]


def _run_connection_12(p, seed, out):
    traj, report = dynamics.competing_students(p["h"], p["x_prof0"], p["x2_1"], p["x3_1"], p["t_max"])
    return report.as_dict(), [write_trajectory(traj, out / "trajectory.csv")]


def _run_sweep_h(p, seed, out):
    files, runs = [], []
    for k, h in enumerate(p["h_values"]):
        traj, report = dynamics.competing_students(h, p["x_prof0"], p["x2_1"], p["x3_1"], p["t_max"])
        files.append(write_trajectory(traj, out / f"h_{k:02d}" / "trajectory.csv"))
        runs.append(report.as_dict())
    result = {"runs": runs}
    if p["threshold"] == "yes":
        result["threshold"] = dynamics.student_threshold(p["x_prof0"], p["x2_1"], p["x3_1"])
    return result, files


def _run_bcfon(p, seed, out):
    d = p["d"][0] if isinstance(p["d"], list) and len(p["d"]) == 1 else p["d"]
    cfg = bcfon.BcfonConfig(
        n=p["n"], d=d, a=p["a"], reference=p["reference"], init_centers=p["init_centers"],
        init_sdvs=p["init_sdvs"], sdv_range=(p["sdv_lo"], p["sdv_hi"]), seed=seed,
        t_max=p["t_max"], record_topology=p["record_topology"])
    traj, report, snaps = bcfon.bcfon_run(cfg)
    files = [write_trajectory(traj, out / "trajectory.csv")]
    if p["record_topology"] != "none":
        files.append(write_topology(snaps, out / "topology.jsonl"))
    return report.as_dict(), files


RUNNERS: dict[str, Callable] = {
    "connection-1": _run_connection_1,
    "connection-2": _run_connection_2,
    "connection-3": _run_connection_3,
    "connection-4": _run_connection_4,
    "connection-5": _run_connection_5,
    "connection-6": _run_connection_6,
    "connection-7": _run_connection_7,
    "connection-8": _run_connection_8,
    "connection-9": _run_connection_9,
    "connection-10": _run_connection_10,
    "connection-11": _run_ring,
    "connection-12": _run_connection_12,
    "connection-13": _run_bcfon,
    "sweep-h": _run_sweep_h,
    "fig-17": _run_ring,
    "fig-21": _run_bcfon,
    "fig-23": _run_bcfon,
    "fig-25": _run_bcfon,
}


class ScenarioError(FonError):
    """A scenario failed while running; the message names the scenario."""


def resolve_output_dir(config: ScenarioConfig, override: Optional[str] = None) -> Path:
    if override:
        return Path(override)
    if config.output_dir:
        return Path(config.output_dir)
    return Path(os.environ.get("FON_OUT", "fon-out")) / config.scenario


def run_scenario(config: ScenarioConfig, out_dir=None) -> dict:
    """Run a validated scenario and write its files plus ``report.json`` and
    ``manifest.json``. Returns the report dictionary."""
    out = resolve_output_dir(config, out_dir)
    out.mkdir(parents=True, exist_ok=True)
    try:
        result, files = RUNNERS[config.scenario](config.parameters, config.seed, out)
    except FonError as exc:
        raise ScenarioError(f"{config.scenario}: {exc}") from exc
    report = {
        "scenario": config.scenario,
        "seed": config.seed,
        "parameters": config.parameters,
        "defaulted": sorted(config.defaulted),
        "results": result,
    }
    files.append(write_json(report, out / "report.json"))
    write_manifest(out, files)
    return report
