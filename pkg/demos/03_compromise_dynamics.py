"""Two people updating opinions over time.

Alone, doubt grows without bound. Next to a stubborn partner it settles.
Two compromising partners agree on a center but their doubt still grows
linearly, unless their perceived doubt shrinks geometrically.
"""
import numpy as np

from gfon import dynamics as dyn

print("self feedback, sigma=1, t=10:", dyn.self_feedback(0.0, 1.0, 10).sdv)
print("   ... with harmonic decline:", round(dyn.self_feedback(0.0, 1.0, 10, "harmonic").sdv, 4))

sol = dyn.one_sided_closed(x0=0.0, sigma1=1.0, c2=10.0, sigma2=0.5, w1=0.8, w2=0.2, t=50)
print(f"husband vs persistent wife at t=50: center {sol.center:.6f} -> {sol.center_limit}, "
      f"sdv {sol.sdv:.6f} -> {sol.sdv_limit}")

w = np.array([[0.7, 0.3], [0.6, 0.4]])
m = dyn.mutual_asymptotics(w, [0.0, 1.0], [1.0, 1.0], t=1000)
print(f"mutual compromise: consensus {m.consensus:.6f}, sdv at t=1000 {m.sdvs.round(3)}, "
      f"slope {m.sdv_slope}")

_, geo = dyn.time_varying_run(w, [0.0, 1.0], [1.0, 1.0], "geometric", h=0.5, t_max=200)
_, har = dyn.time_varying_run(w, [0.0, 1.0], [1.0, 1.0], "harmonic", t_max=200)
print("geometric decline sdv limit:", geo["sdv_limit"], "| harmonic:", har["sdv_limit"],
      "with final increment", np.round(har["final_sdv_increment"], 5))
