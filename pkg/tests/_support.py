"""Shared generators and brute-force references for the test suite."""
import math
import random

import numpy as np

from embst.envelope import Arc, clip_arc
from embst.geometry import MovingPoint, Point

SIDE = 1.0
LAM = math.sqrt(2.0)


def random_arcs(rng, m, side=SIDE, lam=LAM):
    """m arcs clipped to the unit cell from centres above it, ids in input order."""
    arcs = []
    pid = 0
    while len(arcs) < m:
        qx = rng.uniform(-2 * side, 3 * side)
        qy = rng.uniform(side, 3 * side)
        a = clip_arc(qx, qy, side, lam, pid)
        pid += 1
        if isinstance(a, Arc):
            arcs.append(a)
    return arcs


def arc_table(arcs):
    return (np.array([a.cx for a in arcs]), np.array([a.cy for a in arcs]),
            np.array([a.lo for a in arcs]), np.array([a.hi for a in arcs]), arcs[0].lam)


def arc_heights(table, xs, rows=None):
    """Matrix of arc heights at xs; inf where an arc is undefined."""
    cx, cy, lo, hi, lam = table
    if rows is not None:
        cx, cy, lo, hi = cx[rows], cy[rows], lo[rows], hi[rows]
    d = xs[None, :] - cx[:, None]
    r = np.maximum(lam * lam - d * d, 0.0)
    y = cy[:, None] - np.sqrt(r)
    inside = (xs[None, :] >= lo[:, None]) & (xs[None, :] <= hi[:, None])
    return np.where(inside, y, np.inf)


def brute_envelope(arcs, x):
    return min((a.y(x) for a in arcs if a.alive and a.lo <= x <= a.hi), default=math.inf)


def random_moving(rng, n, spread=1.0):
    return [MovingPoint(i, Point(rng.uniform(0, spread), rng.uniform(0, spread)),
                        Point(rng.uniform(0, spread), rng.uniform(0, spread)))
            for i in range(n)]


def candidate_values(pts):
    """Every pair maximum distance, ascending (with repeats)."""
    from embst.geometry import pair_max_dist
    return sorted(pair_max_dist(p, q) for i, p in enumerate(pts) for q in pts[i + 1:])


def py_rng(seed):
    return random.Random(seed)


def sign_changes(f, g, tol=1e-12):
    """Sign changes of f - g along samples, with inf for undefined points.

    Samples where both are undefined or the two agree within ``tol`` carry
    no sign and are skipped.
    """
    with np.errstate(invalid="ignore"):
        diff = f - g
    sign = np.where(np.isnan(diff), 0, np.sign(diff))
    sign[np.abs(diff) <= tol] = 0
    s = sign[sign != 0]
    return int((s[1:] != s[:-1]).sum())


def child_crossings(tree, table, xs, finite_only=False):
    """Largest crossing count between the two child envelopes of any node."""
    worst = 0
    for v in tree.nodes():
        if v.left is None or v.right is None:
            continue
        rows_l = [a.pos for a in tree.subtree_arcs(v.left)]
        rows_r = [a.pos for a in tree.subtree_arcs(v.right)]
        if not rows_l or not rows_r:
            continue
        f = arc_heights(table, xs, rows_l).min(axis=0)
        g = arc_heights(table, xs, rows_r).min(axis=0)
        if finite_only:
            keep = np.isfinite(f) & np.isfinite(g)
            f, g = f[keep], g[keep]
        worst = max(worst, sign_changes(f, g))
    return worst
