"""Brute-force grid oracles for sup-min composition and the extension principle.

These are deliberately dumb: they enumerate grids and take max/min, and they
share no code with the closed-form connection formulas they are used to check.
Work is done in ``-log mu`` space, where ``min`` of memberships becomes ``max``
of exponents, so only one ``exp`` per output point is needed.
"""
from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .errors import InvalidParameterError, ResolutionError
from .fuzzyset import GaussianFuzzySet, _check_weights
from .membership import Gaussian, GridSpec, Sampled, sample

_CHUNK_CELLS = 4_000_000


def _points(grid):
    if isinstance(grid, GridSpec):
        return grid.points
    pts = np.asarray(grid, dtype=float)
    if pts.ndim != 1:
        raise InvalidParameterError("grid must be 1-D")
    return pts


def _supmin_neglog(x, v, pair_neglog, v_neglog):
    """min over v of max(pair_neglog(x[:, None], v[None, :]), v_neglog)."""
    out = np.empty(x.size)
    rows = max(1, _CHUNK_CELLS // max(v.size, 1))
    for start in range(0, x.size, rows):
        xs = x[start:start + rows, None]
        cell = np.maximum(pair_neglog(xs, v[None, :]), v_neglog[None, :])
        out[start:start + rows] = cell.min(axis=1)
    return out


def supmin_compose_oracle(
    conditional: Callable,
    input_mf,
    v_grid: GridSpec,
    x_grid,
    refine: bool = True,
    tol: float | None = None,
) -> Sampled:
    """Grid evaluation of ``mu(x) = max_v min(conditional(v)(x), input_mf(v))``.

    ``conditional`` maps a value ``v`` (possibly a numpy array of values) to a
    membership curve. ``input_mf`` is a curve or a :class:`GaussianFuzzySet`;
    a singleton input is substituted exactly instead of gridded.

    With ``refine`` the sup is recomputed on a grid of half the step, and a
    change larger than ``tol`` (default ``5 * v_grid.step``) raises
    :class:`ResolutionError`. The refined result is returned.
    """
    x = _points(x_grid)
    if isinstance(input_mf, GaussianFuzzySet):
        if input_mf.is_singleton:
            if input_mf.dim != 1:
                raise InvalidParameterError("the grid oracle is one-dimensional")
            return sample(conditional(float(input_mf.center[0])), x)
        input_mf = input_mf.curve()

    def pair_neglog(xs, vs):
        return conditional(vs).neglog(xs)

    def run(grid):
        v = grid.points
        return np.exp(-_supmin_neglog(x, v, pair_neglog, input_mf.neglog(v)))

    mu = run(v_grid)
    if refine:
        fine = run(v_grid.refined())
        limit = 5 * v_grid.step if tol is None else tol
        drift = float(np.max(np.abs(fine - mu)))
        if drift > limit:
            raise ResolutionError(f"sup changed by {drift:.3g} on refinement (limit {limit:.3g})")
        mu = fine
    return Sampled(x, np.clip(mu, 0.0, 1.0))


def _add_fuzzy(partial, term, z_step, y):
    """Membership of partial + term at y: max_z min(partial(y - z), term(z))."""
    z = GridSpec.around(term.c, term.sigma, steps=max(2, int(np.ceil(16 * term.sigma / z_step)))).points

    def pair_neglog(ys, zs):
        return partial.neglog(ys - zs)

    return np.exp(-_supmin_neglog(y, z, pair_neglog, term.neglog(z)))


def _extension_run(terms, z_step, y, stage_points):
    partial = terms[0]
    c_acc, s_acc = terms[0].c, terms[0].sigma
    for k, term in enumerate(terms[1:], start=1):
        c_acc += term.c
        s_acc += term.sigma
        if k == len(terms) - 1:
            return _add_fuzzy(partial, term, z_step, y)
        stage = GridSpec.around(c_acc, s_acc, halfwidth=9.0, steps=stage_points).points
        partial = Sampled(stage, np.clip(_add_fuzzy(partial, term, z_step, stage), 0.0, 1.0))
    return partial(y)


def extension_avg_oracle(
    sets: Sequence[GaussianFuzzySet],
    weights,
    grid: GridSpec | None = None,
    y=None,
    refine: bool = True,
    tol: float | None = None,
    stage_points: int = 4000,
):
    """Grid membership of ``sum_i w_i X_i`` by pairwise sup-min reduction.

    Each weighted term ``w_i X_i`` is the exact rescaling of ``X_i``; partial
    sums are combined one term at a time through the extension principle.
    ``grid.step`` is the step of every sup grid (default: ``range / 20000``
    over ``center +- 8 * sdv`` of the expected result). Output points ``y``
    default to 401 points over the same range.

    Returns a :class:`Sampled`; when every weighted term is crisp the result
    is itself a singleton and is returned as a ``GaussianFuzzySet``.
    """
    w = _check_weights(weights, len(sets))
    if any(s.dim != 1 for s in sets):
        raise InvalidParameterError("the grid oracle is one-dimensional")
    shift = 0.0
    terms = []
    for wi, s in zip(w, sets):
        if wi == 0.0:
            continue
        ci = float(s.center[0])
        if s.is_singleton:
            shift += wi * ci
        else:
            terms.append(Gaussian(wi * ci, wi * s.sdv))
    if not terms:
        return GaussianFuzzySet(shift, 0.0)

    c_tot = shift + sum(t.c for t in terms)
    s_tot = sum(t.sigma for t in terms)
    if grid is None:
        grid = GridSpec.around(c_tot, s_tot)
    y = GridSpec.around(c_tot, s_tot, steps=400).points if y is None else _points(y)
    ys = y - shift

    mu = _extension_run(terms, grid.step, ys, stage_points)
    if refine and len(terms) > 1:
        fine = _extension_run(terms, grid.step / 2, ys, stage_points)
        limit = 5 * grid.step if tol is None else tol
        drift = float(np.max(np.abs(fine - mu)))
        if drift > limit:
            raise ResolutionError(f"sup changed by {drift:.3g} on refinement (limit {limit:.3g})")
        mu = fine
    return Sampled(y, np.clip(mu, 0.0, 1.0))


def intersection_height_oracle(a, b, grid: GridSpec) -> float:
    """``max_x min(a(x), b(x))`` over a grid, for two 1-D curves or opinions."""
    x = grid.points
    ma = a.membership(x) if isinstance(a, GaussianFuzzySet) else a(x)
    mb = b.membership(x) if isinstance(b, GaussianFuzzySet) else b(x)
    return float(np.max(np.minimum(ma, mb)))
