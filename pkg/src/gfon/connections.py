"""Closed-form membership functions of the six static Gaussian-node connections."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InvalidParameterError
from .membership import Gaussian, Radial, RootExp, ShapeStats, StretchedExp, shape_stats


@dataclass(frozen=True, eq=False)
class ConnectionResult:
    curve: object
    stats: ShapeStats
    provenance: str
    intermediates: tuple = field(default=())

    def record(self) -> dict:
        """Stats plus provenance, ready for JSON."""
        return {**self.stats.as_dict(), "provenance": self.provenance}


def _result(curve, provenance, intermediates=()):
    return ConnectionResult(curve, shape_stats(curve), provenance, tuple(intermediates))


def _positive(**kw):
    for name, val in kw.items():
        if not (np.isfinite(val) and val > 0):
            raise InvalidParameterError(f"{name} must be > 0, got {val!r}")


def _nonneg(**kw):
    for name, val in kw.items():
        if not (np.isfinite(val) and val >= 0):
            raise InvalidParameterError(f"{name} must be >= 0, got {val!r}")


def center_connection(c2: float, sigma1: float, sigma2: float) -> ConnectionResult:
    """A fuzzy center feeding a Gaussian node: sdvs add, shape stays Gaussian."""
    _positive(sigma1=sigma1, sigma2=sigma2)
    return _result(Gaussian(float(c2), sigma1 + sigma2), "connection-1")


def sdv_connection(c1: float, c2: float, sigma2: float) -> ConnectionResult:
    """A fuzzy sdv (center ``c2`` on R+, spread ``sigma2``) feeding a node at ``c1``."""
    _nonneg(c2=c2)
    _positive(sigma2=sigma2)
    return _result(RootExp(float(c1), c2, sigma2), "connection-2")


def center_sdv_connection(c2: float, sigma2: float, c3: float, sigma3: float) -> ConnectionResult:
    """Fuzzy center (c2, sigma2) and fuzzy sdv (c3, sigma3) feeding one node.

    The center node's own sdv plays the same role as the sdv node's center.
    """
    _positive(sigma2=sigma2, sigma3=sigma3)
    _nonneg(c3=c3)
    return _result(RootExp(float(c2), c3 + sigma2, sigma3), "connection-3")


def chain_in_center(c_n: float, sigmas: Sequence[float]) -> ConnectionResult:
    """Message passed along a chain of center connections."""
    sigmas = list(sigmas)
    if not sigmas:
        raise InvalidParameterError("chain needs at least one node")
    for i, s in enumerate(sigmas):
        _positive(**{f"sigmas[{i}]": s})
    # bottom-up pairwise reduction: each center link adds one sdv
    total = 0.0
    for s in sigmas:
        total += s
    return _result(Gaussian(float(c_n), total), "connection-4")


def sdv_chain_reduce(p: float) -> float:
    """Exponent after one more zero-center sdv link: ``p -> 2p / (2 + p)``."""
    return 2.0 * p / (2.0 + p)


def sdv_chain_argmax(y, sigma_n: float, p: float):
    """The sdv value where the sup in one sdv-chain link is attained.

    Solves ``y**2 / s**2 = (s / sigma_n)**p`` for ``s``.
    """
    y = np.abs(np.asarray(y, dtype=float))
    return (y**2 * sigma_n**p) ** (1.0 / (2.0 + p))


def chain_in_sdv_zero(c1: float, sigma_n: float, n: int, centers=None) -> ConnectionResult:
    """Chain of ``n`` nodes linked through their sdv inputs, all inner centers zero.

    ``intermediates[k - 1]`` is the membership of the sdv node k links below
    the crisp top: ``exp(-(s / sigma_n)**(2 / k))``. The final curve is the
    stretched exponential with exponent ``2 / n``.

    Nonzero inner ``centers`` have no closed form and are rejected.
    """
    if int(n) != n or n < 2:
        raise InvalidParameterError(f"n must be an integer >= 2, got {n!r}")
    _positive(sigma_n=sigma_n)
    if centers is not None and np.any(np.asarray(centers, dtype=float) != 0):
        raise InvalidParameterError("sdv chains with nonzero inner centers have no closed form")
    p = 2.0
    intermediates = [StretchedExp(0.0, sigma_n, p)]
    for _ in range(int(n) - 2):
        p = sdv_chain_reduce(p)
        intermediates.append(StretchedExp(0.0, sigma_n, p))
    p = sdv_chain_reduce(p)
    return _result(StretchedExp(float(c1), sigma_n, p), "connection-5", intermediates)


def beijing_network(sigma1: float, c3, sigma3: float, c4: float, sigma4: float) -> ConnectionResult:
    """Person A's visit: a Gaussian node at ``sigma1`` whose center comes from
    a center-sdv connection ``(c3, sigma3)`` / ``(c4, sigma4)``.

    ``c3`` is a location vector; the curve is radial around it.
    """
    _positive(sigma1=sigma1, sigma3=sigma3, sigma4=sigma4)
    _nonneg(c4=c4)
    profile = RootExp(0.0, c4 + sigma3 + sigma1, sigma4)
    return _result(Radial(profile, c3), "connection-6")
