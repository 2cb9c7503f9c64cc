"""Symmetric membership-function families and their level-crossing statistics.

All Gaussian-type curves use the ``exp(-|x - c|**2 / sigma**2)`` convention
(no factor 2 in the denominator).  Every family is described by a *profile*
``mu(r)`` of the distance ``r = |x - c|`` so that the same object can be
evaluated on the line or, through :class:`Radial`, around a vector center.

Parameters may be numpy arrays; they broadcast against the evaluation points,
which is how the grid oracles evaluate a whole conditional family at once.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import InvalidParameterError, LevelUnreachableError, RejectedInputError

E1 = np.exp(-1.0)
E4 = np.exp(-4.0)
E_QUARTER = np.exp(-0.25)

BISECTION_TOL = 1e-9


def _check(cond, msg):
    if not np.all(cond):
        raise InvalidParameterError(msg)


def _finite_points(x):
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise RejectedInputError("evaluation points must be finite")
    return x


class _Curve:
    """Shared evaluation plumbing; subclasses define ``profile_neglog``."""

    c: float

    def profile_neglog(self, r):
        raise NotImplementedError

    def profile(self, r):
        return np.exp(-self.profile_neglog(r))

    def neglog(self, x):
        """``-log mu(x)``; ``inf`` where the membership is zero."""
        x = _finite_points(x)
        return self.profile_neglog(np.abs(x - self.c))

    def __call__(self, x):
        return np.exp(-self.neglog(x))

    def level_distance(self, level):
        """Distance from the center at which the membership equals ``level``."""
        raise NotImplementedError


@dataclass(frozen=True)
class Gaussian(_Curve):
    c: float
    sigma: float

    def __post_init__(self):
        _check(np.asarray(self.sigma) > 0, "Gaussian sigma must be > 0")

    def profile_neglog(self, r):
        return (r / self.sigma) ** 2

    def level_distance(self, level):
        return self.sigma * np.sqrt(-np.log(level))


@dataclass(frozen=True)
class RootExp(_Curve):
    """``exp(-[(sqrt(A**2 + 4 B r) - A) / (2 B)]**2)``.

    ``A = 0`` is the exponential ``exp(-r / B)``; ``A >> B`` tends to the
    Gaussian with sdv ``A``.
    """

    c: float
    A: float
    B: float

    def __post_init__(self):
        _check(np.asarray(self.A) >= 0, "RootExp A must be >= 0")
        _check(np.asarray(self.B) > 0, "RootExp B must be > 0")

    def profile_neglog(self, r):
        # (sqrt(A^2 + 4Br) - A) / 2B rewritten to avoid cancellation when B << A
        with np.errstate(invalid="ignore", divide="ignore"):
            u = 2.0 * r / (np.sqrt(self.A**2 + 4.0 * self.B * r) + self.A)
        u = np.where(r == 0, 0.0, u)
        return u * u

    def level_distance(self, level):
        u = np.sqrt(-np.log(level))
        return u * self.A + u * u * self.B


@dataclass(frozen=True)
class StretchedExp(_Curve):
    """``exp(-|(x - c) / sigma|**p)`` with ``0 < p <= 2``."""

    c: float
    sigma: float
    p: float

    def __post_init__(self):
        _check(np.asarray(self.sigma) > 0, "StretchedExp sigma must be > 0")
        p = np.asarray(self.p)
        _check((p > 0) & (p <= 2), "StretchedExp p must lie in (0, 2]")

    def profile_neglog(self, r):
        return (r / self.sigma) ** self.p

    def level_distance(self, level):
        return self.sigma * (-np.log(level)) ** (1.0 / self.p)


@dataclass(frozen=True)
class Triangular(_Curve):
    c: float
    b: float

    def __post_init__(self):
        _check(np.asarray(self.b) > 0, "Triangular b must be > 0")

    def profile_neglog(self, r):
        mu = np.maximum(0.0, 1.0 - r / self.b)
        with np.errstate(divide="ignore"):
            return -np.log(mu)

    def level_distance(self, level):
        return self.b * (1.0 - level)


@dataclass(frozen=True, eq=False)
class Sampled(_Curve):
    """Piecewise-linear membership through ``(grid, values)``; zero off-grid."""

    grid: np.ndarray
    values: np.ndarray
    c: float = field(init=False)

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if grid.ndim != 1 or grid.shape != values.shape or grid.size < 2:
            raise InvalidParameterError("Sampled needs two equal-length 1-D arrays")
        if not np.all(np.diff(grid) > 0):
            raise InvalidParameterError("Sampled grid must be strictly ascending")
        if not np.all((values >= 0) & (values <= 1)):
            raise InvalidParameterError("Sampled values must lie in [0, 1]")
        grid.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "c", _plateau_center(grid, values))

    def __call__(self, x):
        x = _finite_points(x)
        return np.interp(x, self.grid, self.values, left=0.0, right=0.0)

    def neglog(self, x):
        with np.errstate(divide="ignore"):
            return -np.log(self(x))

    def profile_neglog(self, r):
        # only meaningful for symmetric samples; right branch is used
        with np.errstate(divide="ignore"):
            return -np.log(self(self.c + np.asarray(r, dtype=float)))

    def level_distance(self, level):
        dists = [d for d in (self._crossing(level, +1), self._crossing(level, -1)) if d is not None]
        if not dists:
            raise LevelUnreachableError(f"membership level {level:.6g} not reached inside the grid")
        return float(np.mean(dists))

    def _crossing(self, level, direction):
        grid, vals = self.grid, self.values
        if direction > 0:
            idx = np.arange(np.searchsorted(grid, self.c, "left"), grid.size)
        else:
            idx = np.arange(np.searchsorted(grid, self.c, "right") - 1, -1, -1)
        below = np.nonzero(vals[idx] <= level)[0]
        if below.size == 0:
            return None
        j = idx[below[0]]
        if j == idx[0]:
            return 0.0
        inner, outer = grid[j - direction], grid[j]
        # bisection on the interpolant between the bracketing nodes
        lo, hi = inner, outer
        while abs(hi - lo) > BISECTION_TOL:
            mid = 0.5 * (lo + hi)
            if np.interp(mid, grid, vals) > level:
                lo = mid
            else:
                hi = mid
        return abs(0.5 * (lo + hi) - self.c)


def _plateau_center(grid, values):
    top = values.max()
    idx = np.nonzero(values == top)[0]
    return float(0.5 * (grid[idx[0]] + grid[idx[-1]]))


@dataclass(frozen=True, eq=False)
class Radial:
    """A 1-D profile curve evaluated around a vector center by Euclidean distance.

    ``profile`` is any closed-form curve; its own center is ignored.
    """

    profile: _Curve
    center: np.ndarray

    def __post_init__(self):
        center = np.atleast_1d(np.asarray(self.center, dtype=float))
        if center.ndim != 1:
            raise InvalidParameterError("Radial center must be a vector")
        center.setflags(write=False)
        object.__setattr__(self, "center", center)

    @property
    def c(self):
        return self.center

    def neglog(self, x):
        x = _finite_points(x)
        r = np.linalg.norm(x - self.center, axis=-1)
        return self.profile.profile_neglog(r)

    def __call__(self, x):
        return np.exp(-self.neglog(x))

    def level_distance(self, level):
        return self.profile.level_distance(level)


MembershipCurve = Union[Gaussian, RootExp, StretchedExp, Triangular, Sampled, Radial]


def evaluate(mf, x):
    """Membership of ``x`` (scalar or array) in ``mf``."""
    out = mf(x)
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class ShapeStats:
    center: float
    sdv: float
    kurtosis: float
    sharpness: float

    def as_dict(self):
        center = np.asarray(self.center)
        return {
            "center": center.tolist() if center.ndim else float(center),
            "sdv": float(self.sdv),
            "kurtosis": float(self.kurtosis),
            "sharpness": float(self.sharpness),
        }


def shape_stats(mf) -> ShapeStats:
    """Center, sdv, kurtosis and sharpness from the e^-1, e^-4, e^-1/4 crossings.

    Closed-form families use their analytic level distances; :class:`Sampled`
    curves are bisected on their interpolant.
    """
    d1 = mf.level_distance(E1)
    d4 = mf.level_distance(E4)
    dq = mf.level_distance(E_QUARTER)
    center = mf.c if isinstance(mf, Radial) else float(mf.c)
    return ShapeStats(center, float(d1), float(d4 / d1), float(d1 / dq))


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid ``lo, lo + step, ..., hi``."""

    lo: float
    hi: float
    step: float

    def __post_init__(self):
        if not (np.isfinite(self.lo) and np.isfinite(self.hi) and self.hi > self.lo):
            raise InvalidParameterError("GridSpec needs finite lo < hi")
        if not self.step > 0:
            raise InvalidParameterError("GridSpec step must be > 0")

    @property
    def size(self) -> int:
        return int(round((self.hi - self.lo) / self.step)) + 1

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.size)

    def refined(self) -> "GridSpec":
        return GridSpec(self.lo, self.hi, self.step / 2)

    @classmethod
    def around(cls, center, scale, halfwidth=8.0, steps=20000, lo_clip=None):
        """``center +- halfwidth * scale`` split into ``steps`` intervals."""
        lo = center - halfwidth * scale
        hi = center + halfwidth * scale
        if lo_clip is not None:
            lo = max(lo, lo_clip)
        return cls(lo, hi, (hi - lo) / steps)


def sample(mf, grid) -> Sampled:
    """Evaluate ``mf`` on ``grid`` (a GridSpec or an ascending array)."""
    pts = grid.points if isinstance(grid, GridSpec) else np.asarray(grid, dtype=float)
    return Sampled(pts, np.clip(mf(pts), 0.0, 1.0))
