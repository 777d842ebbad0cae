"""
Optimal bottleneck tree
=======================

The optimum equals some pair's distance at t=0 or at t=1.  solve() searches
both sorted distance lists with decide() as the oracle, after a cheap
nearest-neighbour bracket has narrowed the ranks.  The quadratic Prim
baseline confirms the value.
"""
import time

from embst import baseline_solve, distance_select, generate, solve
from embst.geometry import as_arrays

pts = generate("uniform", 4000, seed=7)
t = time.perf_counter()
sol = solve(pts)
print(f"solve: {sol.bottleneck!r} in {time.perf_counter() - t:.2f}s, rounds {sol.stats['rounds']}")
t = time.perf_counter()
ref = baseline_solve(pts)
print(f"baseline: {ref.bottleneck!r} in {time.perf_counter() - t:.2f}s")

# %%
# Rank selection among the C(n, 2) distances at t=0.
p0, _ = as_arrays(pts)
for k in (1, 1000, 10 ** 6):
    print(k, distance_select(p0, k), distance_select(p0, k, method="narrow"))
