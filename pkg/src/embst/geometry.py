"""Planar primitives for linearly moving points.

All distance comparisons in the package go through :func:`dist` (scalar) or
:func:`dist_arrays` (vectorized).  Both evaluate ``sqrt(dx*dx + dy*dy)`` with
the same operation order, so a value computed by one is bit-identical to
the value computed by the other.
"""
import math
from typing import NamedTuple, Sequence

import numpy as np


class Point(NamedTuple):
    x: float
    y: float


class MovingPoint(NamedTuple):
    id: int
    p0: Point
    p1: Point


class Edge(NamedTuple):
    a: int
    b: int
    weight: float


class SpanningTree(NamedTuple):
    edges: tuple
    root: int = 0


def _check_finite(*vals):
    for v in vals:
        if not math.isfinite(v):
            raise ValueError(f"non-finite coordinate {v!r}")


def make_point(x, y):
    x, y = float(x), float(y)
    _check_finite(x, y)
    return Point(x, y)


def make_moving(pid, x0, y0, x1, y1):
    return MovingPoint(int(pid), make_point(x0, y0), make_point(x1, y1))


def position(mp, t):
    """Location of ``mp`` at time ``t`` in [0, 1]."""
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t={t} outside [0, 1]")
    return Point((1.0 - t) * mp.p0.x + t * mp.p1.x,
                 (1.0 - t) * mp.p0.y + t * mp.p1.y)


def dist(a, b):
    dx = a[0] - b[0]
    dy = a[1] - b[1]
    return math.sqrt(dx * dx + dy * dy)


def dist_arrays(a, b):
    """Row-wise distances between two broadcastable (..., 2) arrays."""
    dx = a[..., 0] - b[..., 0]
    dy = a[..., 1] - b[..., 1]
    return np.sqrt(dx * dx + dy * dy)


def pair_max_dist(p, q):
    """Largest distance between ``p`` and ``q`` over t in [0, 1].

    Distance between two linearly moving points is convex in t, so the
    maximum sits at an endpoint of the time interval.
    """
    return max(dist(p.p0, q.p0), dist(p.p1, q.p1))


def endpoint_arrays(points):
    """Return ``(P0, P1)`` as float arrays of shape (n, 2).

    Also checks that ids are exactly 0..n-1 in order.
    """
    n = len(points)
    p0 = np.empty((n, 2))
    p1 = np.empty((n, 2))
    for i, mp in enumerate(points):
        if mp.id != i:
            raise ValueError(f"point ids must be 0..n-1 in order (got {mp.id} at {i})")
        p0[i] = mp.p0
        p1[i] = mp.p1
    if not (np.isfinite(p0).all() and np.isfinite(p1).all()):
        raise ValueError("non-finite coordinates")
    return p0, p1


def as_arrays(points):
    """Accept a list of MovingPoint or a ``(P0, P1)`` pair of (n, 2) arrays."""
    if isinstance(points, tuple) and len(points) == 2 and isinstance(points[0], np.ndarray):
        p0 = np.asarray(points[0], dtype=float).reshape(-1, 2)
        p1 = np.asarray(points[1], dtype=float).reshape(-1, 2)
        if p0.shape != p1.shape:
            raise ValueError("endpoint arrays differ in shape")
        if not (np.isfinite(p0).all() and np.isfinite(p1).all()):
            raise ValueError("non-finite coordinates")
        return p0, p1
    return endpoint_arrays(points)


def moving_points_from_arrays(p0, p1):
    p0 = np.asarray(p0, dtype=float)
    p1 = np.asarray(p1, dtype=float)
    return [MovingPoint(i, Point(*map(float, a)), Point(*map(float, b)))
            for i, (a, b) in enumerate(zip(p0, p1))]


def validate_tree(tree, n):
    """Raise ``ValueError`` unless ``tree`` spans ids 0..n-1 without cycles."""
    edges = tree.edges
    if n == 0:
        raise ValueError("empty point set")
    if len(edges) != n - 1:
        raise ValueError(f"tree has {len(edges)} edges, expected {n - 1}")
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for e in edges:
        a, b = e[0], e[1]
        if a == b or not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"bad edge {e}")
        ra, rb = find(a), find(b)
        if ra == rb:
            raise ValueError(f"edge {e} closes a cycle")
        parent[ra] = rb


def tree_bottleneck(tree, pts: Sequence[MovingPoint]):
    """Bottleneck of a moving spanning tree: its heaviest pair_max_dist edge."""
    validate_tree(tree, len(pts))
    best = 0.0
    for e in tree.edges:
        best = max(best, pair_max_dist(pts[e[0]], pts[e[1]]))
    return best
