"""Thirty people on a ring, each averaging with two neighbors and feeling
less sure the further they sit from the crowd's mean.

Centers reach the initial mean, perceived doubt vanishes at the rate of
the second eigenvalue, and everyone's sdv flattens to one finite value.
"""
from gfon import dynamics as dyn

traj, rep = dyn.ring_run(n=30, seed=42)
for key in ("steps", "mean_x0", "consensus", "max_sigma", "sdv_limit", "sdv_spread",
            "lambda2", "empirical_rate"):
    print(f"{key:>15}: {getattr(rep, key)}")

# A few shortcuts (small world) speed things up.
w = dyn.ring_weights(30, shortcuts=5, seed=42)
_, sw = dyn.ring_run(30, w=w, seed=42)
print(f"with 5 shortcuts: {sw.steps} steps, |lambda2| {sw.lambda2:.4f}")
