"""Quadratic reference solver and brute-force oracles.

Every minimum spanning tree is also a minimum bottleneck spanning tree, so
a dense Prim over all pairs under the pair-maximum-distance weight gives
the exact optimum in O(n^2) time and O(n) extra memory.
"""
import math

import numpy as np

from .geometry import Edge, SpanningTree, as_arrays
from .optimizer import Solution


def baseline_solve(P):
    p0, p1 = as_arrays(P)
    n = len(p0)
    if n < 1:
        raise ValueError("need at least one point")
    x0, y0 = p0[:, 0].copy(), p0[:, 1].copy()
    x1, y1 = p1[:, 0].copy(), p1[:, 1].copy()
    # Vertices outside the tree, kept in ascending id order, with their
    # cheapest known link into the tree.
    rem = np.arange(1, n)
    best = np.full(n - 1, np.inf)
    link = np.zeros(n - 1, dtype=np.int64)
    edges = []
    v = 0
    while len(rem):
        dx0 = x0[rem] - x0[v]
        dy0 = y0[rem] - y0[v]
        dx1 = x1[rem] - x1[v]
        dy1 = y1[rem] - y1[v]
        w = np.maximum(np.sqrt(dx0 * dx0 + dy0 * dy0), np.sqrt(dx1 * dx1 + dy1 * dy1))
        better = w < best
        best = np.where(better, w, best)
        link = np.where(better, v, link)
        # argmin returns the first minimum: ties go to the smallest id.
        k = int(np.argmin(best))
        v = int(rem[k])
        edges.append(Edge(int(link[k]), v, float(best[k])))
        rem = np.delete(rem, k)
        best = np.delete(best, k)
        link = np.delete(link, k)
    bottleneck = max((e.weight for e in edges), default=0.0)
    return Solution(bottleneck, SpanningTree(tuple(edges), 0), {})


def brute_lower_envelope(arcs, xs):
    """Pointwise-lowest arc and its height at each x; (inf, None) where no arc is defined."""
    out = []
    for x in xs:
        best, owner = math.inf, None
        for a in arcs:
            if a.alive and a.lo <= x <= a.hi:
                y = a.y(x)
                if y < best:
                    best, owner = y, a.id
        out.append((best, owner))
    return out


def linear_scan_udre(Q, p, lam, alive=None):
    """Some alive point of ``Q`` within ``lam`` of ``p``, or None."""
    q = np.asarray(Q, dtype=float).reshape(-1, 2)
    if len(q) == 0:
        return None
    dx = q[:, 0] - p[0]
    dy = q[:, 1] - p[1]
    ok = np.sqrt(dx * dx + dy * dy) <= lam
    if alive is not None:
        ok &= np.asarray(alive, dtype=bool)
    hit = np.flatnonzero(ok)
    return int(hit[0]) if len(hit) else None
