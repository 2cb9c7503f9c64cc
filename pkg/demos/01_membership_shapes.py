"""How the curve families differ: the same sdv, very different tails.

Every family is described by three level crossings: the e^-1 distance
(sdv), the e^-4 / e^-1 ratio (kurtosis, tail heaviness) and the
e^-1 / e^-1/4 ratio (sharpness at the peak).
"""
import numpy as np

from gfon import Gaussian, RootExp, StretchedExp, Triangular, shape_stats

curves = {
    "gaussian": Gaussian(0.0, 1.0),
    "triangular": Triangular(0.0, 1.0 / (1 - np.exp(-1))),   # sdv 1
    "exponential": RootExp(0.0, 0.0, 1.0),
    "root-exp A=B=0.5": RootExp(0.0, 0.5, 0.5),
    "stretched p=1/2": StretchedExp(0.0, 1.0, 0.5),
}

print(f"{'family':<20}{'sdv':>8}{'kurtosis':>10}{'sharpness':>11}{'mu(4)':>12}")
for name, mf in curves.items():
    s = shape_stats(mf)
    print(f"{name:<20}{s.sdv:8.4f}{s.kurtosis:10.4f}{s.sharpness:11.4f}{mf(4.0):12.3e}")

# All share sdv 1, yet membership four sdvs out ranges over many orders of
# magnitude: the heavier the tail, the larger the kurtosis.
