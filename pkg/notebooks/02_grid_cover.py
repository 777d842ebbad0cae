"""
Grid cells and the biclique cover
=================================

Cells of side lambda/sqrt(2) have diameter below lambda, so two points
within lambda of each other sit at most two cells apart.  Grouping points by
cell turns "all pairs within lambda" into a small family of complete
bipartite groups that together list every such pair exactly once.
"""
import numpy as np

from embst import build_cover, build_grid, verify_cover
from embst.cover import count_pairs_within

rng = np.random.default_rng(0)
xy = rng.random((400, 2))
lam = 0.08

# %%
grid = build_grid(xy, lam)
print(f"{len(grid)} occupied cells, side {grid.side:.4f}")

# %%
# The cover pairs each cell with itself, and each point with its
# neighbours in the surrounding cells.
cover = build_cover(xy, lam)
report = verify_cover(cover, xy, lam)
print(report.summary())

# %%
# Counting pairs uses the same cell walk without building bicliques.
print("pairs within lambda:", count_pairs_within(xy, lam))
