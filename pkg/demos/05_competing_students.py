"""A professor, an echoing student and a stubborn one.

The stubborn student's weight shrinks by a factor h every round. Below a
critical h the echo wins; above it the stubborn opinion pulls the
professor across the midpoint.
"""
from gfon import dynamics as dyn

for h in (0.5, 0.6, 0.7, 0.8, 0.9):
    _, rep = dyn.competing_students(h)
    print(f"h={h}: professor settles at {rep.limit:.4f} -> {rep.winner}")
print("winner flips at h =", round(dyn.student_threshold(), 5))
