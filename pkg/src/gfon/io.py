"""Plain-text writers: curve and trajectory CSVs, JSON reports, topology JSONL,
and a manifest of sha256 digests. Output bytes depend only on the data."""
from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .membership import GridSpec, Sampled


def _write(path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path


def emit_mf_samples(curve, grid_spec, path) -> Path:
    """Write ``x,mu`` rows with 9 significant digits.

    ``grid_spec`` may be a :class:`GridSpec`, an array of points, or ``None``
    for a :class:`Sampled` curve, which then writes its own grid.
    """
    if grid_spec is None:
        if not isinstance(curve, Sampled):
            raise ValueError("a grid is required unless the curve is Sampled")
        x, mu = curve.grid, curve.values
    else:
        x = grid_spec.points if isinstance(grid_spec, GridSpec) else np.asarray(grid_spec, dtype=float)
        mu = curve(x)
    lines = ["x,mu"] + [f"{xi:.9g},{mi:.9g}" for xi, mi in zip(x, mu)]
    return _write(path, "\n".join(lines) + "\n")


def write_trajectory(traj, path) -> Path:
    """``t,node,center,sdv`` rows, one per node per step, full precision."""
    steps, n = traj.centers.shape
    lines = ["t,node,center,sdv"]
    for t in range(steps):
        c, s = traj.centers[t], traj.sdvs[t]
        lines.extend(f"{t},{i},{float(c[i])!r},{float(s[i])!r}" for i in range(n))
    return _write(path, "\n".join(lines) + "\n")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, float) and not np.isfinite(obj):
        return str(obj)
    return obj


def write_json(obj, path) -> Path:
    text = json.dumps(_jsonable(obj), indent=2, sort_keys=True)
    return _write(path, text + "\n")


def write_topology(snapshots, path) -> Path:
    """One JSON object per snapshot: ``{"t": ..., "edges": [[i, j, w_ij], ...]}``."""
    lines = [json.dumps({"t": s.t, "edges": s.edges()}) for s in snapshots]
    return _write(path, "".join(line + "\n" for line in lines))


def sha256_file(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 16), b""):
            h.update(block)
    return h.hexdigest()


def write_manifest(out_dir, files) -> Path:
    """List every emitted file (relative to ``out_dir``) with its digest."""
    out_dir = Path(out_dir)
    entries = [
        {"path": Path(f).relative_to(out_dir).as_posix(), "sha256": sha256_file(f)}
        for f in sorted(files, key=lambda p: Path(p).as_posix())
    ]
    return write_json({"files": entries}, out_dir / "manifest.json")
