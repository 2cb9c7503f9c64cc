"""Fixed-topology opinion dynamics: per-step recursions, closed forms, limits.

Every node stays Gaussian under these connections, so a network state is just
a center vector and an sdv vector. The common update is

    centers' = W @ centers
    sdvs'    = W @ sdvs + sigma(t)

with ``W`` row-stochastic and ``sigma(t)`` the nodes' own (perceived) sdv
inputs at step t.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .errors import InvalidParameterError, InvalidWeightsError
from .fuzzyset import GaussianFuzzySet
from .linalg import jacobi_eigensym

ROW_SUM_TOL = 1e-12
SETTLE_DELTA = 1e-10
SETTLE_STEPS = 10
DEFAULT_SEED = 42


@dataclass(frozen=True, eq=False)
class NetworkState:
    centers: np.ndarray
    sdvs: np.ndarray
    t: int = 0

    def __post_init__(self):
        c = np.array(self.centers, dtype=float)
        s = np.array(self.sdvs, dtype=float)
        if c.ndim != 1 or c.shape != s.shape:
            raise InvalidParameterError("centers and sdvs must be equal-length vectors")
        if np.any(s < 0):
            raise InvalidParameterError("sdvs must be nonnegative")
        if int(self.t) != self.t or self.t < 0:
            raise InvalidParameterError("t must be a nonnegative integer")
        c.setflags(write=False)
        s.setflags(write=False)
        object.__setattr__(self, "centers", c)
        object.__setattr__(self, "sdvs", s)
        object.__setattr__(self, "t", int(self.t))

    @property
    def n(self) -> int:
        return self.centers.size

    def opinion(self, i) -> GaussianFuzzySet:
        return GaussianFuzzySet(self.centers[i], self.sdvs[i])


@dataclass(eq=False)
class Trajectory:
    """Centers and sdvs for steps ``t = 0..T``; rows are steps, columns nodes."""

    centers: np.ndarray
    sdvs: np.ndarray
    seed: Optional[int] = None
    weights: Optional[list] = None

    @property
    def t(self) -> np.ndarray:
        return np.arange(self.centers.shape[0])

    @property
    def steps(self) -> int:
        return self.centers.shape[0] - 1

    @property
    def final(self) -> NetworkState:
        return NetworkState(self.centers[-1], self.sdvs[-1], self.steps)

    def state(self, t) -> NetworkState:
        return NetworkState(self.centers[t], self.sdvs[t], t)

    @property
    def states(self) -> list:
        return [self.state(t) for t in range(self.steps + 1)]


def check_stochastic(w) -> np.ndarray:
    """Validate a row-stochastic weight matrix and return it as an array."""
    w = np.asarray(w, dtype=float)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise InvalidWeightsError("weight matrix must be square")
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise InvalidWeightsError("weights must be finite and nonnegative")
    if np.max(np.abs(w.sum(axis=1) - 1.0)) > ROW_SUM_TOL:
        raise InvalidWeightsError("every row of W must sum to 1")
    return w


def _check_pair_weights(w):
    w = check_stochastic(w)
    if w.shape != (2, 2):
        raise InvalidWeightsError("expected a 2x2 weight matrix")
    if np.any(w <= 0) or np.any(w >= 1):
        raise InvalidWeightsError("two-person weights must lie strictly inside (0, 1)")
    return w


def linear_step(state: NetworkState, w, sigma) -> NetworkState:
    """One step of ``centers' = W centers``, ``sdvs' = W sdvs + sigma``."""
    return NetworkState(w @ state.centers, w @ state.sdvs + sigma, state.t + 1)


# --- self feedback ---------------------------------------------------------

def self_feedback(x0: float, sigma: float, t: int, decline: str = "none") -> GaussianFuzzySet:
    """A node feeding its own output back as its center input for t steps.

    ``decline="harmonic"`` shrinks the perceived sdv input to ``sigma/(k+1)``;
    the real sdv is then ``sigma * H_{t+1}``.
    """
    if not sigma > 0:
        raise InvalidParameterError("sigma must be > 0")
    if int(t) != t or t < 0:
        raise InvalidParameterError("t must be a nonnegative integer")
    if decline == "none":
        return GaussianFuzzySet(x0, (t + 1) * sigma)
    if decline == "harmonic":
        k = np.arange(1, int(t) + 2, dtype=float)
        return GaussianFuzzySet(x0, sigma * float(np.sum(1.0 / k[::-1])))
    raise InvalidParameterError(f"unknown decline {decline!r}")


# --- compromising node with a persistent partner ----------------------------

def _check_w1w2(w1, w2):
    if not (w1 > 0 and w2 > 0) or abs(w1 + w2 - 1.0) > ROW_SUM_TOL:
        raise InvalidWeightsError("need w1, w2 > 0 with w1 + w2 = 1")


def one_sided_step(state, c2, sigma1, sigma2, w1, w2):
    """Compromising node averaging itself with a fixed Gaussian (c2, sigma2)."""
    _check_w1w2(w1, w2)
    center, sdv = state
    return w1 * center + w2 * c2, w1 * sdv + sigma1 + w2 * sigma2


@dataclass(frozen=True)
class OneSidedSolution:
    center: float
    sdv: float
    center_limit: float
    sdv_limit: float


def one_sided_closed(x0, sigma1, c2, sigma2, w1, w2, t) -> OneSidedSolution:
    """Closed-form solution of :func:`one_sided_step` from ``(x0, sigma1)``."""
    _check_w1w2(w1, w2)
    if not (sigma1 > 0 and sigma2 > 0):
        raise InvalidParameterError("sigma1 and sigma2 must be > 0")
    wt = w1**t
    sdv_limit = sigma1 / w2 + sigma2
    return OneSidedSolution(
        center=wt * x0 + (1 - wt) * c2,
        sdv=sdv_limit - wt * (w1 * sigma1 / w2 + sigma2),
        center_limit=c2,
        sdv_limit=sdv_limit,
    )


# --- two mutually compromising nodes ---------------------------------------

def mutual_step(state: NetworkState, w, sigmas) -> NetworkState:
    w = _check_pair_weights(w)
    if state.n != 2:
        raise InvalidParameterError("mutual_step needs a two-node state")
    return linear_step(state, w, np.asarray(sigmas, dtype=float))


@dataclass(frozen=True, eq=False)
class MutualSolution:
    centers: np.ndarray
    sdvs: np.ndarray
    consensus: float
    sdv_slope: float

    def sdv_asymptote(self, t):
        return (t + 1) * self.sdv_slope


def mutual_asymptotics(w, x0, sigmas, t) -> MutualSolution:
    """Exact state after t steps via the 2x2 eigendecomposition, plus the
    consensus center and the asymptotic per-step sdv growth."""
    w = _check_pair_weights(w)
    x0 = np.asarray(x0, dtype=float)
    sig = np.asarray(sigmas, dtype=float)
    lam = w[0, 0] + w[1, 1] - 1.0
    v = np.array([[1.0, 1.0], [1.0, (1 - w[1, 1]) / (w[0, 0] - 1)]])
    v_inv = np.linalg.inv(v)
    geo = (1.0 - lam ** (t + 1)) / (1.0 - lam)
    centers = v @ np.diag([1.0, lam**t]) @ v_inv @ x0
    sdvs = v @ np.diag([t + 1.0, geo]) @ v_inv @ sig
    w12, w21 = w[0, 1], w[1, 0]
    return MutualSolution(
        centers=centers,
        sdvs=sdvs,
        consensus=(w12 * x0[1] + w21 * x0[0]) / (w12 + w21),
        sdv_slope=(w12 * sig[1] + w21 * sig[0]) / (w12 + w21),
    )


def _pair_limits(w, x0, sigma0, h):
    w12, w21 = w[0, 1], w[1, 0]
    consensus = (w12 * x0[1] + w21 * x0[0]) / (w12 + w21)
    if h is None:
        return consensus, None
    return consensus, (w12 * sigma0[1] + w21 * sigma0[0]) / ((1 - h) * (w12 + w21))


def time_varying_run(w, x0, sigma0, schedule: str = "geometric", h: float | None = None,
                     t_max: int = 2000):
    """Two compromising nodes whose perceived sdvs decline over time.

    ``schedule="geometric"`` uses ``sigma0 * h**t`` and has a finite sdv
    limit; ``"harmonic"`` uses ``sigma0 / (t + 1)`` and diverges.
    Returns ``(trajectory, report)``.
    """
    w = _check_pair_weights(w)
    x0 = np.asarray(x0, dtype=float)
    sigma0 = np.asarray(sigma0, dtype=float)
    if schedule == "geometric":
        if h is None or not 0 < h < 1:
            raise InvalidParameterError("geometric schedule needs h in (0, 1)")
        if abs((1 - h) - (w[0, 1] + w[1, 0])) < 1e-12:
            raise InvalidParameterError("1 - h must differ from w12 + w21")
        decay = h ** np.arange(t_max + 1.0)
    elif schedule == "harmonic":
        h = None
        decay = 1.0 / np.arange(1.0, t_max + 2.0)
    else:
        raise InvalidParameterError(f"unknown schedule {schedule!r}")

    centers = np.empty((t_max + 1, 2))
    sdvs = np.empty((t_max + 1, 2))
    centers[0], sdvs[0] = x0, sigma0
    for t in range(1, t_max + 1):
        centers[t] = w @ centers[t - 1]
        sdvs[t] = w @ sdvs[t - 1] + sigma0 * decay[t]
    traj = Trajectory(centers, sdvs)

    consensus, sdv_limit = _pair_limits(w, x0, sigma0, h)
    report = {
        "schedule": schedule,
        "h": h,
        "center_limit": consensus,
        "sdv_limit": sdv_limit if sdv_limit is not None else "divergent",
        "final_centers": centers[-1].tolist(),
        "final_sdvs": sdvs[-1].tolist(),
        "final_sdv_increment": (sdvs[-1] - sdvs[-2]).tolist() if t_max > 0 else [0.0, 0.0],
    }
    return traj, report


# --- ring with state-dependent confidence ----------------------------------

def ring_weights(n: int, shortcuts=0, seed: int = DEFAULT_SEED, normalize: str = "metropolis"):
    """Symmetric stochastic ring: each node averages itself and two neighbors.

    ``shortcuts`` is either a count of random extra links (drawn with
    ``seed``) or an explicit list of ``(i, j)`` pairs. Links are undirected.
    With ``normalize="metropolis"`` (default) an edge gets
    ``1 / (1 + max(deg_i, deg_j))``, which keeps W symmetric and doubly
    stochastic; ``"uniform"`` spreads each row evenly over its neighbor set
    (row-stochastic only). The plain ring is 1/3 everywhere either way.
    """
    if int(n) != n or n < 3:
        raise InvalidParameterError("ring needs n >= 3 nodes")
    n = int(n)
    adj = np.zeros((n, n), dtype=bool)
    idx = np.arange(n)
    adj[idx, (idx + 1) % n] = adj[(idx + 1) % n, idx] = True

    if isinstance(shortcuts, (int, np.integer)):
        rng = np.random.default_rng(seed)
        free = [(i, j) for i in range(n) for j in range(i + 1, n) if not adj[i, j]]
        if shortcuts > len(free):
            raise InvalidParameterError("more shortcuts requested than free pairs")
        pairs = [free[k] for k in rng.choice(len(free), size=int(shortcuts), replace=False)]
    else:
        pairs = [tuple(p) for p in shortcuts]
    for i, j in pairs:
        if i == j or not (0 <= i < n and 0 <= j < n):
            raise InvalidParameterError(f"bad shortcut {(i, j)}")
        adj[i, j] = adj[j, i] = True

    deg = adj.sum(axis=1)
    if normalize == "metropolis":
        w = np.where(adj, 1.0 / (1.0 + np.maximum(deg[:, None], deg[None, :])), 0.0)
        w[idx, idx] = 1.0 - w.sum(axis=1)
    elif normalize == "uniform":
        w = (adj | np.eye(n, dtype=bool)) / (deg + 1.0)[:, None]
    else:
        raise InvalidParameterError(f"unknown normalization {normalize!r}")
    return w


def state_dep_sigma(centers) -> np.ndarray:
    """Distance of each node's center from the network mean."""
    c = np.asarray(centers, dtype=float)
    if c.ndim == 1:
        return np.abs(c - c.mean())
    return np.linalg.norm(c - c.mean(axis=0), axis=-1)


def decay_rate(series, lo: float = 1e-11, hi: float = 1e-3) -> float:
    """Per-step geometric rate of a decaying positive series.

    Fits ``log(series)`` linearly over the samples lying in ``[lo, hi]``.
    """
    s = np.asarray(series, dtype=float)
    t = np.arange(s.size)
    mask = (s >= lo) & (s <= hi)
    if mask.sum() < 3:
        raise InvalidParameterError("series has too few samples inside the fit window")
    slope = np.polyfit(t[mask], np.log(s[mask]), 1)[0]
    return float(np.exp(slope))


@dataclass
class RingReport:
    mean_x0: float
    consensus: float
    center_error: float
    max_sigma: float
    sdv_spread: float
    sdv_limit: float
    lambda2: float
    empirical_rate: Optional[float]
    converged: bool
    steps: int
    seed: int
    status: str = field(default="converged")

    def as_dict(self):
        return asdict(self)


def ring_run(n: int = 30, x0=None, sigma0=None, t_max: int = 100_000, tol: float = 1e-8,
             w=None, seed: int = DEFAULT_SEED):
    """Ring (or any symmetric stochastic W) with sdv input ``|c_i - mean(c)|``.

    Initial centers default to uniform draws on [0, 1] from ``seed``; initial
    sdvs default to ones. Stops once centers move less than 1e-10 for 10
    consecutive steps, every sigma is below ``tol`` and the sdvs agree within
    ``tol`` and have stopped drifting; otherwise reports a timeout.
    Returns ``(trajectory, report)``.
    """
    w = ring_weights(n) if w is None else check_stochastic(w)
    n = w.shape[0]
    rng = np.random.default_rng(seed)
    x0 = rng.uniform(0.0, 1.0, n) if x0 is None else np.asarray(x0, dtype=float)
    sigma0 = np.ones(n) if sigma0 is None else np.asarray(sigma0, dtype=float)

    centers, sdvs, sig_hist = [x0], [sigma0], [np.zeros(n)]
    quiet = 0
    converged = False
    c, s = x0, sigma0
    for t in range(1, t_max + 1):
        sig = state_dep_sigma(c)
        c_new = w @ c
        s_new = w @ s + sig
        moved = np.max(np.abs(c_new - c))
        drift = np.max(np.abs(s_new - s))
        c, s = c_new, s_new
        centers.append(c)
        sdvs.append(s)
        sig_hist.append(sig)
        quiet = quiet + 1 if moved < SETTLE_DELTA else 0
        if (quiet >= SETTLE_STEPS and sig.max() < tol and np.ptp(s) < tol
                and drift < SETTLE_DELTA):
            converged = True
            break

    traj = Trajectory(np.array(centers), np.array(sdvs), seed=seed)
    eig, _ = jacobi_eigensym(0.5 * (w + w.T))
    sig_max = np.array(sig_hist).max(axis=1)[1:]
    try:
        rate = decay_rate(sig_max)
    except InvalidParameterError:
        rate = None
    mean_x0 = float(x0.mean())
    report = RingReport(
        mean_x0=mean_x0,
        consensus=float(c.mean()),
        center_error=float(np.max(np.abs(c - mean_x0))),
        max_sigma=float(sig_hist[-1].max()),
        sdv_spread=float(np.ptp(s)),
        sdv_limit=float(s.mean()),
        lambda2=float(abs(eig[1])) if n > 1 else 0.0,
        empirical_rate=rate,
        converged=converged,
        steps=traj.steps,
        seed=seed,
        status="converged" if converged else "timeout",
    )
    return traj, report


# --- smart versus stubborn student -----------------------------------------

def student_weights(h: float, t: int):
    """Professor's weights at iteration t: (self, smart, stubborn).

    The professor keeps half the weight on their own opinion and starts each student
    at a quarter; every iteration the stubborn student's share is multiplied
    by ``h`` and the removed weight moves to the smart student.
    """
    w3 = 0.25 * h**t
    return 0.5, 0.5 - w3, w3


@dataclass
class StudentReport:
    h: float
    limit: float
    midpoint: float
    winner: str
    steps: int

    def as_dict(self):
        return asdict(self)


def competing_students(h: float, x_prof0: float = 2.0, x2_1: float = 2.0, x3_1: float = 10.0,
                       t_max: int = 1000, sigma_prof: float = 1.0, sdv_smart: float = 1.0,
                       sdv_stubborn: float = 1.0):
    """Professor choosing between a smart student who echoes the professor's
    last opinion and a stubborn one who repeats their first opinion.

    Nodes are (professor, smart, stubborn). Returns ``(trajectory, report)``;
    the winner is whichever student's first opinion is nearer the
    professor's limiting center.
    """
    if not 0 < h < 1:
        raise InvalidParameterError("h must lie in (0, 1)")
    if int(t_max) != t_max or t_max < 1:
        raise InvalidParameterError("t_max must be a positive integer")
    centers = np.empty((t_max + 1, 3))
    sdvs = np.empty((t_max + 1, 3))
    centers[0] = (x_prof0, x2_1, x3_1)
    sdvs[0] = (sigma_prof, sdv_smart, sdv_stubborn)
    for t in range(1, t_max + 1):
        prev_c, prev_s = centers[t - 1], sdvs[t - 1]
        if t == 1:
            smart_c, smart_s = x2_1, sdv_smart
        else:
            smart_c, smart_s = prev_c[0], prev_s[0]
        w1, w2, w3 = student_weights(h, t)
        centers[t] = (w1 * prev_c[0] + w2 * smart_c + w3 * x3_1, smart_c, x3_1)
        sdvs[t] = (w1 * prev_s[0] + w2 * smart_s + w3 * sdv_stubborn + sigma_prof,
                   smart_s, sdv_stubborn)
    limit = float(centers[-1, 0])
    midpoint = 0.5 * (x2_1 + x3_1)
    # "Smart" sits on the side of x2_1 relative to the midpoint
    smart_side = np.sign(x2_1 - midpoint)
    winner = "smart" if np.sign(limit - midpoint) == smart_side else "stubborn"
    report = StudentReport(h=h, limit=limit, midpoint=midpoint, winner=winner, steps=t_max)
    return Trajectory(centers, sdvs), report


def student_threshold(x_prof0: float = 2.0, x2_1: float = 2.0, x3_1: float = 10.0,
                      lo: float = 1e-3, hi: float = 1 - 1e-3, tol: float = 1e-6,
                      t_max: int = 4000) -> float:
    """Bisect on h for the value where the winner flips."""
    def winner(h):
        return competing_students(h, x_prof0, x2_1, x3_1, t_max=t_max)[1].winner

    w_lo, w_hi = winner(lo), winner(hi)
    if w_lo == w_hi:
        raise InvalidParameterError("winner does not change over the bracket")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if winner(mid) == w_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
