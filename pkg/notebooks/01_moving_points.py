"""
Moving points and their worst-case distance
===========================================

Each point travels on a straight line from p0 at t=0 to p1 at t=1.  The
distance between two such points is a convex function of t, so its maximum
over the whole interval is found at one of the two ends.
"""
import numpy as np

from embst import generate, pair_max_dist, position
from embst.geometry import dist

# %%
# Two points from a uniform instance, sampled along their trajectories.
pts = generate("uniform", 2, seed=3)
p, q = pts
ts = np.linspace(0, 1, 11)
for t in ts:
    print(f"t={t:.1f}  distance={dist(position(p, t), position(q, t)):.4f}")

# %%
# The largest sample is the larger endpoint distance.
print("pair max distance:", pair_max_dist(p, q))
print("endpoints:", dist(p.p0, q.p0), dist(p.p1, q.p1))
