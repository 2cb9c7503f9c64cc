"""Bounded-confidence fuzzy opinion networks.

At every step each node listens only to the nodes whose opinions overlap its
own by more than its confidence threshold ``d_i`` (overlap measured by the
intersection height), weights them by that overlap, and takes as its own
perceived sdv the distance of its center from a reference mean (its
neighborhood's, or everyone's). Neighborhoods, weights and reference sdvs
are all computed from the previous state.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .dynamics import DEFAULT_SEED, NetworkState, Trajectory
from .errors import InvalidParameterError
from .fuzzyset import height_matrix

REFERENCES = ("local", "global")


@dataclass
class BcfonConfig:
    """Run parameters.

    ``init_centers`` defaults to ``i / (n - 1)`` for ``i = 0..n-1``;
    ``init_sdvs`` defaults to uniform draws on ``sdv_range`` from ``seed``.
    ``cluster_eps`` defaults to ``1e-4`` times the initial center range.
    ``record_topology`` is ``"changes"`` (snapshot whenever some neighborhood
    changes, plus the first step), ``"all"`` or ``"none"``.
    """

    n: int
    d: object = 0.95
    a: float = 0.1
    reference: str = "local"
    init_centers: object = None
    init_sdvs: object = None
    sdv_range: tuple = (0.0, 1.0)
    seed: int = DEFAULT_SEED
    t_max: int = 100_000
    center_tol: float = 1e-8
    sdv_tol: float = 1e-8
    stable_steps: int = 50
    cluster_eps: Optional[float] = None
    record_topology: str = "changes"

    def __post_init__(self):
        errors = []
        if int(self.n) != self.n or self.n < 2:
            errors.append("n must be an integer >= 2")
            raise InvalidParameterError("; ".join(errors))
        self.n = int(self.n)
        d = np.broadcast_to(np.asarray(self.d, dtype=float), (self.n,)).copy() \
            if np.ndim(self.d) == 0 or np.size(self.d) == self.n else None
        if d is None:
            errors.append("d must be a scalar or have one entry per node")
        elif not np.all((d > 0) & (d < 1)):
            errors.append("d must be in (0,1)")
        else:
            self.d = d
        if not (np.isfinite(self.a) and self.a > 0):
            errors.append("a must be > 0")
        if self.reference not in REFERENCES:
            errors.append(f"reference must be one of {REFERENCES}")
        if self.record_topology not in ("changes", "all", "none"):
            errors.append("record_topology must be changes, all or none")
        lo, hi = self.sdv_range
        if not 0 <= lo <= hi:
            errors.append("sdv_range must satisfy 0 <= lo <= hi")
        for name in ("init_centers", "init_sdvs"):
            val = getattr(self, name)
            if val is not None and np.shape(val) != (self.n,):
                errors.append(f"{name} must have length n")
        if self.init_sdvs is not None and np.any(np.asarray(self.init_sdvs, dtype=float) < 0):
            errors.append("init_sdvs must be >= 0")
        if int(self.t_max) != self.t_max or self.t_max < 1:
            errors.append("t_max must be a positive integer")
        if errors:
            raise InvalidParameterError("; ".join(errors))

    def initial_state(self) -> NetworkState:
        if self.init_centers is None:
            centers = np.arange(self.n) / (self.n - 1)
        else:
            centers = np.asarray(self.init_centers, dtype=float)
        if self.init_sdvs is None:
            rng = np.random.default_rng(self.seed)
            sdvs = rng.uniform(self.sdv_range[0], self.sdv_range[1], self.n)
        else:
            sdvs = np.asarray(self.init_sdvs, dtype=float)
        return NetworkState(centers, sdvs, 0)


@dataclass(frozen=True, eq=False)
class TopologySnapshot:
    """Who listened to whom at step ``t``; ``weights[i, j]`` is i's weight on j."""

    t: int
    weights: np.ndarray

    @property
    def neighbors(self) -> list:
        return [np.flatnonzero(row).tolist() for row in self.weights > 0]

    def edges(self) -> list:
        """Directed off-diagonal edges ``[i, j, w_ij]`` in row-major order."""
        w = self.weights
        ii, jj = np.nonzero(w > 0)
        keep = ii != jj
        return [[int(i), int(j), float(w[i, j])] for i, j in zip(ii[keep], jj[keep])]


def adjacency(state: NetworkState, d) -> np.ndarray:
    """Boolean matrix: ``adj[i, j]`` iff height(i, j) > d_i; diagonal always set."""
    d = np.broadcast_to(np.asarray(d, dtype=float), (state.n,))
    adj = height_matrix(state.centers, state.sdvs) > d[:, None]
    np.fill_diagonal(adj, True)
    return adj


def neighborhoods(state: NetworkState, d) -> list:
    return [np.flatnonzero(row).tolist() for row in adjacency(state, d)]


def _as_adjacency(nbhd, n):
    if isinstance(nbhd, np.ndarray) and nbhd.dtype == bool:
        return nbhd
    adj = np.zeros((n, n), dtype=bool)
    for i, js in enumerate(nbhd):
        adj[i, list(js)] = True
    adj[np.arange(n), np.arange(n)] = True
    return adj


def weights(state: NetworkState, nbhd) -> np.ndarray:
    """Heights restricted to each neighborhood, normalized per row."""
    adj = _as_adjacency(nbhd, state.n)
    w = np.where(adj, height_matrix(state.centers, state.sdvs), 0.0)
    return w / w.sum(axis=1, keepdims=True)


def reference_sigma(state: NetworkState, nbhd, a: float, mode: str) -> np.ndarray:
    c = state.centers
    if mode == "global":
        return a * np.abs(c - c.mean())
    if mode == "local":
        adj = _as_adjacency(nbhd, state.n)
        local_mean = (adj @ c) / adj.sum(axis=1)
        return a * np.abs(c - local_mean)
    raise InvalidParameterError(f"unknown reference {mode!r}")


def bcfon_step(state: NetworkState, config: BcfonConfig):
    adj = adjacency(state, config.d)
    w = weights(state, adj)
    sigma = reference_sigma(state, adj, config.a, config.reference)
    nxt = NetworkState(w @ state.centers, w @ state.sdvs + sigma, state.t + 1)
    return nxt, TopologySnapshot(nxt.t, w)


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i):
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i, j):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)

    def groups(self):
        out = {}
        for i in range(len(self.parent)):
            out.setdefault(self.find(i), []).append(i)
        return tuple(tuple(g) for g in sorted(out.values()))


def detect_clusters(centers, epsilon: float) -> tuple:
    """Equivalence closure of ``|c_i - c_j| < epsilon``, as sorted index tuples.

    On the line the closure only needs neighbors in sorted order.
    """
    c = np.asarray(centers, dtype=float)
    if not epsilon > 0:
        raise InvalidParameterError("epsilon must be > 0")
    uf = UnionFind(len(c))
    if c.ndim == 1:
        order = np.argsort(c, kind="stable")
        close = np.diff(c[order]) < epsilon
        for k in np.flatnonzero(close):
            uf.union(int(order[k]), int(order[k + 1]))
    else:
        dist = np.linalg.norm(c[:, None, :] - c[None, :, :], axis=-1)
        for i, j in zip(*np.nonzero(np.triu(dist < epsilon, 1))):
            uf.union(int(i), int(j))
    return uf.groups()


def _spreads(values, clusters):
    return max(float(np.ptp(values[list(g)])) for g in clusters)


@dataclass
class ClusterReport:
    clusters: list
    cluster_centers: list
    cluster_sdvs: list
    center_spread: float
    sdv_spread: float
    converged: bool
    steps: int
    seed: int
    reference: str
    status: str = field(default="converged")

    @property
    def n_clusters(self) -> int:
        return len(self.clusters)

    def as_dict(self):
        return {**asdict(self), "n_clusters": self.n_clusters}


def bcfon_run(config: BcfonConfig):
    """Iterate until every cluster has agreed and the partition has held for
    ``stable_steps`` steps, or until ``t_max``.

    Returns ``(trajectory, report, snapshots)``.
    """
    state = config.initial_state()
    span = float(np.ptp(state.centers))
    eps = config.cluster_eps if config.cluster_eps is not None else 1e-4 * (span if span > 0 else 1.0)

    centers, sdvs, snapshots = [state.centers], [state.sdvs], []
    prev_adj = None
    prev_clusters, stable = None, 0
    converged = False
    for _ in range(config.t_max):
        state, snap = bcfon_step(state, config)
        centers.append(state.centers)
        sdvs.append(state.sdvs)
        adj = snap.weights > 0
        if config.record_topology == "all" or (
            config.record_topology == "changes" and (prev_adj is None or not np.array_equal(adj, prev_adj))
        ):
            snapshots.append(snap)
        prev_adj = adj

        clusters = detect_clusters(state.centers, eps)
        stable = stable + 1 if clusters == prev_clusters else 0
        prev_clusters = clusters
        if (stable >= config.stable_steps
                and _spreads(state.centers, clusters) < config.center_tol
                and _spreads(state.sdvs, clusters) < config.sdv_tol):
            converged = True
            break

    clusters = detect_clusters(state.centers, eps)
    report = ClusterReport(
        clusters=[list(g) for g in clusters],
        cluster_centers=[float(np.mean(state.centers[list(g)])) for g in clusters],
        cluster_sdvs=[float(np.mean(state.sdvs[list(g)])) for g in clusters],
        center_spread=_spreads(state.centers, clusters),
        sdv_spread=_spreads(state.sdvs, clusters),
        converged=converged,
        steps=state.t,
        seed=config.seed,
        reference=config.reference,
        status="converged" if converged else "timeout",
    )
    traj = Trajectory(np.array(centers), np.array(sdvs), seed=config.seed)
    return traj, report, snapshots
