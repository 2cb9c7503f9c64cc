"""Gaussian fuzzy opinions and the closed-form operations on them."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidParameterError, InvalidWeightsError
from .membership import Gaussian, Radial

WEIGHT_SUM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class GaussianFuzzySet:
    """An opinion: a center (scalar or vector) and a nonnegative sdv.

    ``sdv == 0`` is a crisp singleton whose membership is the indicator of
    the center.
    """

    center: np.ndarray
    sdv: float

    def __post_init__(self):
        center = np.atleast_1d(np.asarray(self.center, dtype=float)).copy()
        if center.ndim != 1 or center.size == 0 or not np.all(np.isfinite(center)):
            raise InvalidParameterError("center must be a finite vector of dimension >= 1")
        if not (np.isfinite(self.sdv) and self.sdv >= 0):
            raise InvalidParameterError("sdv must be finite and >= 0")
        center.setflags(write=False)
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "sdv", float(self.sdv))

    @property
    def dim(self) -> int:
        return self.center.size

    @property
    def is_singleton(self) -> bool:
        return self.sdv == 0.0

    def __eq__(self, other):
        if not isinstance(other, GaussianFuzzySet):
            return NotImplemented
        return self.sdv == other.sdv and np.array_equal(self.center, other.center)

    def __repr__(self):
        c = float(self.center[0]) if self.dim == 1 else self.center.tolist()
        return f"GaussianFuzzySet(center={c!r}, sdv={self.sdv!r})"

    def curve(self):
        """The membership curve (1-D ``Gaussian`` or 2-D+ ``Radial``)."""
        if self.is_singleton:
            raise InvalidParameterError("a singleton has no continuous membership curve")
        if self.dim == 1:
            return Gaussian(float(self.center[0]), self.sdv)
        return Radial(Gaussian(0.0, self.sdv), self.center)

    def membership(self, x):
        x = np.asarray(x, dtype=float)
        if self.is_singleton:
            if self.dim == 1:
                return (x == self.center[0]).astype(float)
            return np.all(x == self.center, axis=-1).astype(float)
        return self.curve()(x)


def _check_weights(weights, n):
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or w.size != n or n == 0:
        raise InvalidWeightsError("need one weight per set and at least one set")
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise InvalidWeightsError("weights must be finite and nonnegative")
    if abs(w.sum() - 1.0) > WEIGHT_SUM_TOL:
        raise InvalidWeightsError(f"weights sum to {w.sum()!r}, not 1")
    return w


def weighted_average(sets: Sequence[GaussianFuzzySet], weights) -> GaussianFuzzySet:
    """Weighted sum of Gaussian fuzzy sets: centers and sdvs both average."""
    w = _check_weights(weights, len(sets))
    centers = np.stack([s.center for s in sets])
    sdvs = np.array([s.sdv for s in sets])
    return GaussianFuzzySet(w @ centers, float(w @ sdvs))


def intersection_height(a: GaussianFuzzySet, b: GaussianFuzzySet) -> float:
    """Height of the min-intersection of two Gaussian opinions.

    Two singletons give 1 when they coincide and 0 otherwise.
    """
    dist2 = float(np.sum((a.center - b.center) ** 2))
    spread = a.sdv + b.sdv
    if spread == 0.0:
        return 1.0 if dist2 == 0.0 else 0.0
    return float(np.exp(-dist2 / spread**2))


def height_matrix(centers, sdvs) -> np.ndarray:
    """Pairwise intersection heights for n opinions (n x n, symmetric)."""
    centers = np.asarray(centers, dtype=float)
    sdvs = np.asarray(sdvs, dtype=float)
    if centers.ndim == 1:
        dist2 = (centers[:, None] - centers[None, :]) ** 2
    else:
        dist2 = np.sum((centers[:, None, :] - centers[None, :, :]) ** 2, axis=-1)
    spread = sdvs[:, None] + sdvs[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        h = np.exp(-dist2 / spread**2)
    crisp = spread == 0.0
    h[crisp] = (dist2[crisp] == 0.0).astype(float)
    return h
