"""Bounded confidence: people only listen to opinions that overlap their own.

With a local reference the twelve agents split into groups; with a global
reference they end in one consensus. How many groups form depends on the
random initial sdvs, so the seed matters.
"""
from collections import Counter

from gfon import BcfonConfig, bcfon_run

for reference in ("local", "global"):
    traj, rep, snaps = bcfon_run(BcfonConfig(n=12, d=0.95, a=0.1, reference=reference, seed=42))
    print(f"{reference:>6}: {rep.n_clusters} cluster(s) {rep.clusters} after {rep.steps} steps; "
          f"{len(snaps)} topology changes")

counts = Counter(bcfon_run(BcfonConfig(n=12, seed=s))[1].n_clusters for s in range(100))
print("local-reference cluster counts over seeds 0..99:", dict(sorted(counts.items())))

_, big, _ = bcfon_run(BcfonConfig(n=100, reference="global"))
print(f"n=100 global: {big.n_clusters} cluster at {big.cluster_centers[0]:.6f}")
