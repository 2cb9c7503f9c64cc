"""Brute-force oracle set-ups shared by the connection and acceptance tests.

Each builds the conditional family straight from the node definition (a
Gaussian whose center or sdv is the free variable) and never calls the
closed-form connection code.
"""
import numpy as np

from gfon.membership import Gaussian, GridSpec, Sampled
from gfon.oracles import supmin_compose_oracle

V_STEPS = 20000


def center_oracle(c2, sigma1, sigma2, x):
    v = GridSpec.around(c2, sigma2, steps=V_STEPS)
    return supmin_compose_oracle(lambda u: Gaussian(u, sigma1), Gaussian(c2, sigma2), v, x), v.step


def sdv_oracle(c1, c2, sigma2, x):
    # sdv values live on (0, inf); the tiny floor keeps the conditional proper
    v = GridSpec.around(c2, sigma2, steps=V_STEPS, lo_clip=1e-12)
    return supmin_compose_oracle(lambda s: Gaussian(c1, s), Gaussian(c2, sigma2), v, x), v.step


def center_sdv_oracle(c2, sigma2, c3, sigma3, x):
    """Sup over the sdv input ``v`` of a node whose center input is the fuzzy
    (c2, sigma2): for fixed ``v`` that node is the center connection, a
    Gaussian of sdv ``v + sigma2`` (itself oracle-checked separately)."""
    v = GridSpec.around(c3, sigma3, steps=V_STEPS, lo_clip=0.0)
    cond = lambda s: Gaussian(c2, s + sigma2)
    return supmin_compose_oracle(cond, Gaussian(c3, sigma3), v, x), v.step


def nested_center_sdv_oracle(c2, sigma2, c3, sigma3, x, s_steps=2000, u_steps=4000):
    """Same quantity with the inner center sup brute-forced too (slow)."""
    s_grid = GridSpec.around(c3, sigma3, steps=s_steps, lo_clip=0.0)
    u = GridSpec.around(c2, sigma2, steps=u_steps)
    pts = s_grid.points
    inner = np.empty((pts.size, np.size(x)))
    for k, s in enumerate(pts):
        cond = (lambda uu, s=s: Gaussian(uu, max(s, 1e-12)))
        inner[k] = supmin_compose_oracle(cond, Gaussian(c2, sigma2), u, x, refine=False).values
    w = Gaussian(c3, sigma3)(pts)
    return np.max(np.minimum(inner, w[:, None]), axis=0), max(s_grid.step, u.step)


def beijing_profile_oracle(sigma1, sigma3, c4, sigma4, r, steps=V_STEPS, stage1_points=1001):
    """Person A's membership along a ray from the recommended place.

    Stage 1: the recommended location is a Gaussian of sdv ``sigma3`` whose
    sdv input is the wife's fuzzy sdv (c4, sigma4). It is symmetric, so it
    is brute-forced on a half line and mirrored.
    Stage 2: person A's node takes that fuzzy location as its center input.
    Returns the sampled result and the coarsest sup-grid step.
    """
    half = 8.0 * (c4 + sigma3 + sigma4 + sigma1)
    s = GridSpec.around(c4, sigma4, steps=steps, lo_clip=0.0)
    r1 = np.linspace(0.0, half, stage1_points)
    y1 = supmin_compose_oracle(lambda v: Gaussian(0.0, v + sigma3), Gaussian(c4, sigma4), s, r1).values
    stage1 = Sampled(np.concatenate([-r1[:0:-1], r1]), np.concatenate([y1[:0:-1], y1]))
    line = GridSpec(-half, half, 2 * half / steps)
    stage2 = supmin_compose_oracle(lambda u: Gaussian(u, sigma1), stage1, line, r)
    return stage2, max(line.step, s.step)
