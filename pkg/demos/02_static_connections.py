"""Static networks: what happens to a Gaussian opinion as fuzzy inputs feed it.

Each closed form is checked against a brute-force sup-min evaluation on a
grid, which is how the library's formulas are tested.
"""
import numpy as np

from gfon import GridSpec, beijing_network, center_connection, chain_in_sdv_zero, sdv_connection
from gfon.membership import Gaussian
from gfon.oracles import supmin_compose_oracle

# A fuzzy center just adds sdvs.
r = center_connection(c2=3.0, sigma1=1.0, sigma2=0.5)
print("center connection:", r.record())

# A fuzzy sdv keeps the center but fattens the tails.
for c2 in (0.0, 1.0, 2.0):
    r = sdv_connection(c1=4.0, c2=c2, sigma2=1.0)
    print(f"sdv connection c2={c2}:", {k: round(v, 4) for k, v in r.record().items() if k != "provenance"})

# Brute force: sup over the sdv value of min(node membership, sdv membership).
x = np.linspace(-6, 14, 201)
v = GridSpec.around(1.0, 1.0, lo_clip=1e-12)
brute = supmin_compose_oracle(lambda s: Gaussian(4.0, s), Gaussian(1.0, 1.0), v, x)
print("grid oracle vs closed form, max |diff|:",
      float(np.max(np.abs(brute.values - sdv_connection(4.0, 1.0, 1.0).curve(x)))))

# Chains through sdvs: kurtosis doubles with every link.
for n in range(2, 6):
    print(f"sdv chain of {n}: kurtosis {chain_in_sdv_zero(0.0, 1.0, n).stats.kurtosis:g}")

# Person A's Beijing visit: everything funnels into a 2-D radial curve.
trip = beijing_network(sigma1=1.0, c3=[2.0, 1.0], sigma3=0.5, c4=0.0, sigma4=1.0)
print("Beijing:", trip.record())
