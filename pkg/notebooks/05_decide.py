"""
Deciding a bottleneck threshold
===============================

For a threshold lambda, two points may be joined when they stay within
lambda for the whole motion, i.e. at both t=0 and t=1.  decide() searches
that graph without listing its edges and returns a spanning tree when one
exists.
"""
import math

from embst import connectivity_oracle, decide, generate, solve

pts = generate("clustered", 1500, seed=2)
best = solve(pts).bottleneck
# The answer flips exactly at the optimum.
for lam in (best / 4, best / 2, math.nextafter(best, 0), best, 2 * best):
    out = decide(pts, lam)
    print(f"lambda={lam:.6f} connected={out.connected!s:<5} oracle={connectivity_oracle(pts, lam)!s:<5}"
          f" queries={out.stats['queries']} layers={len(out.layers)}")
