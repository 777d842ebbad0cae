"""
Deletion-only disk range emptiness
==================================

A UdreStructure answers "is some live point within lambda of q?" and names
one such point.  The usual customer is a breadth-first search that deletes
each point the moment it is discovered.
"""
import numpy as np

from embst import UdreStructure
from embst.baseline import linear_scan_udre

rng = np.random.default_rng(4)
pts = rng.random((2000, 2))
lam = 0.03
s = UdreStructure(pts, lam)

# %%
q = np.array([0.5, 0.5])
while (hit := s.query(q)) is not None:
    print("hit", hit, "at distance", float(np.hypot(*(pts[hit] - q))))
    s.delete(hit)
alive = np.ones(len(pts), bool)
alive[[i for i in range(len(pts)) if i not in s.alive]] = False
print("linear scan agrees:", linear_scan_udre(pts, q, lam, alive) is None)
print(s.counters())
