"""Minimum bottleneck moving spanning tree by search over candidate distances.

The optimal bottleneck is some pair's maximum distance, which is that
pair's distance at t=0 or at t=1.  So it appears among the interpoint
distances at one of the two endpoint times.  For each t the search keeps
a rank interval (lo, hi] of those distances sorted ascending, with the value at lo
infeasible and the value at hi feasible, and halves it with one
:func:`~embst.decision.decide` call per step.  The answer is the smaller of
the two final feasible values.

By default each rank interval is first shrunk with two certified bounds on
the optimum: every point needs some tree edge, and any spanning tree bounds
the optimum from above.  Both come from a k-nearest-neighbor graph on the 4D points
(x0, y0, x1, y1), whose Euclidean norm is within a factor sqrt(2) of the
pair maximum distance.
"""
import functools
import math
import time
from typing import NamedTuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components, minimum_spanning_tree
from scipy.spatial import cKDTree
from scipy.spatial.distance import pdist

from .cover import count_pairs_within, rank_window
from .decision import decide
from .geometry import Edge, SpanningTree, as_arrays

FULL_SORT_MAX = 1500
SAMPLE_PAIRS = 20000


class SearchInterval(NamedTuple):
    lo: float
    hi: float
    lo_feasible: bool = False
    hi_feasible: bool = True
    rounds: int = 0


class Solution(NamedTuple):
    bottleneck: float
    tree: SpanningTree
    stats: dict


def _xy(points):
    if isinstance(points, np.ndarray):
        return np.asarray(points, dtype=float).reshape(-1, 2)
    return np.array([(p[0], p[1]) for p in points], dtype=float).reshape(-1, 2)


@functools.lru_cache(maxsize=4)
def _sorted_cached(key, n):
    xy = np.frombuffer(key, dtype=float).reshape(n, 2)
    # pdist evaluates sqrt(dx*dx + dy*dy), the same formula as geometry.dist.
    d = pdist(xy)
    d.sort()
    d.flags.writeable = False
    return d


def _sorted_all(xy):
    """All C(n, 2) distances ascending; repeated calls on equal input share one array."""
    xy = np.ascontiguousarray(xy, dtype=float)
    return _sorted_cached(xy.tobytes(), len(xy))


def _check_rank(n, k):
    total = n * (n - 1) // 2
    if not 1 <= k <= total:
        raise ValueError(f"rank {k} outside 1..{total}")
    return total


def _count_below_or_at(xy, r):
    if r < 0:
        return 0
    if r == 0:
        return rank_window(xy, 0.0, 0.0)[0]
    return count_pairs_within(xy, r)


def distance_select(points, k, method="auto", seed=0):
    """The k-th smallest of the C(n, 2) interpoint distances (1-based).

    ``method="sort"`` sorts all distances (the ``"auto"`` choice up to
    FULL_SORT_MAX points).  ``method="narrow"`` samples pairs to guess a
    value bracket around rank k, confirms it with an exact pair count, and
    sorts only the distances inside the bracket.
    """
    xy = _xy(points)
    n = len(xy)
    total = _check_rank(n, k)
    if method not in ("auto", "sort", "narrow"):
        raise ValueError(f"unknown method {method!r}")
    if method == "sort" or (method == "auto" and n <= FULL_SORT_MAX):
        return float(_sorted_all(xy)[k - 1])
    rng = np.random.default_rng(seed)
    i = rng.integers(0, n, SAMPLE_PAIRS)
    j = rng.integers(0, n - 1, SAMPLE_PAIRS)
    j = j + (j >= i)
    dx = xy[i, 0] - xy[j, 0]
    dy = xy[i, 1] - xy[j, 1]
    sample = np.sort(np.sqrt(dx * dx + dy * dy))
    m = len(sample)
    spread = 3.0
    while True:
        center = k / total * m
        half = spread * math.sqrt(m) + 1
        a = int(math.floor(center - half))
        b = int(math.ceil(center + half))
        lo = sample[a] if a >= 0 else -1.0
        if b < m:
            hi = float(sample[b])
        else:
            span = xy.max(axis=0) - xy.min(axis=0)
            hi = float(math.hypot(*span)) * (1 + 1e-12) + 1e-300
        below, window = rank_window(xy, lo, hi)
        if below < k <= below + len(window):
            return float(window[k - below - 1])
        spread *= 2.0


class _Ranks:
    """Endpoint-time distances by rank: sorted outright when small, otherwise selected on demand.

    Values learned along the way are cached by rank.
    """

    def __init__(self, xy):
        self.xy = xy
        n = len(xy)
        self.total = n * (n - 1) // 2
        self.sorted = _sorted_all(xy) if n <= FULL_SORT_MAX else None
        self.known = {}

    def value(self, k):
        if k <= 0:
            return 0.0
        if k > self.total:
            return math.inf
        if self.sorted is not None:
            return float(self.sorted[k - 1])
        v = self.known.get(k)
        if v is None:
            v = self.known[k] = distance_select(self.xy, k)
        return v

    def count_le(self, r):
        if self.sorted is not None:
            return int(np.searchsorted(self.sorted, r, side="right"))
        return _count_below_or_at(self.xy, r)

    def rank_after(self, r, need=3):
        """Return count(d <= r) and cache the ranks just below and above it."""
        if self.sorted is not None:
            return self.count_le(r)
        width = max(r, 1e-300) * 1e-3
        while True:
            lo, hi = r - width, r + width
            below, vals = rank_window(self.xy, lo, hi)
            at = below + int(np.searchsorted(vals, r, side="right"))
            enough_below = at - below >= need or lo < 0
            enough_above = below + len(vals) - at >= 1 or below + len(vals) == self.total
            if enough_below and enough_above:
                for i, v in enumerate(vals.tolist()):
                    self.known[below + i + 1] = v
                return at
            width *= 4.0


def certified_bounds(p0, p1, k=10):
    """``(L, U)`` with L <= optimum <= U, from a 4D nearest-neighbor graph.

    U is the bottleneck of a spanning tree of the kNN graph, or inf when that
    graph is disconnected.
    """
    n = len(p0)
    if n < 2:
        return 0.0, 0.0
    z = np.hstack([p0, p1])
    kk = min(k, n - 1) + 1
    d4, nb = cKDTree(z).query(z, k=kk)
    d4, nb = d4[:, 1:], nb[:, 1:]
    rows = np.repeat(np.arange(n), kk - 1)
    cols = nb.ravel()
    w = _pmd(p0, p1, rows, cols)
    best = w.reshape(n, kk - 1).min(axis=1)
    # Any point outside the kNN list is at 4D distance >= the last one, so its
    # pair maximum distance is at least that over sqrt(2).
    if kk - 1 < n - 1:
        best = np.minimum(best, d4[:, -1] / math.sqrt(2.0))
    lower = float(best.max())
    g = coo_matrix((w + 1.0, (rows, cols)), shape=(n, n)).tocsr()
    ncomp, _ = connected_components(g, directed=False)
    if ncomp != 1:
        return lower, math.inf
    t = minimum_spanning_tree(g).tocoo()
    upper = float(_pmd(p0, p1, t.row, t.col).max())
    return lower, upper


def _pmd(p0, p1, a, b):
    dx0 = p0[a, 0] - p0[b, 0]
    dy0 = p0[a, 1] - p0[b, 1]
    dx1 = p1[a, 0] - p1[b, 0]
    dy1 = p1[a, 1] - p1[b, 1]
    return np.maximum(np.sqrt(dx0 * dx0 + dy0 * dy0), np.sqrt(dx1 * dx1 + dy1 * dy1))


class _Decider:
    """decide() memoized by value; zero is handled without a grid."""

    def __init__(self, P, decider=decide):
        self.P = P
        self.decider = decider
        self.memo = {}
        self.calls = 0

    def __call__(self, lam):
        out = self.memo.get(lam)
        if out is None:
            self.calls += 1
            if lam == 0.0:
                p0, p1 = self.P
                same = bool((p0 == p0[0]).all() and (p1 == p1[0]).all())
                out = _ZeroOutcome(same)
            else:
                out = self.decider(self.P, lam)
            self.memo[lam] = out
        return out


class _ZeroOutcome(NamedTuple):
    connected: bool


def search_endpoint_set(P, t, bounds=None, decider=None):
    """Narrow the optimum among the time-t distances to (lo, hi].

    No time-t distance lies strictly inside the returned interval.

    Without ``bounds`` this is plain halving over ranks 1..C(n, 2).  With a
    certified ``(L, U)`` pair the rank interval starts at
    (count(d < L), count(d <= U) + 1] instead.
    """
    p0, p1 = as_arrays(P)
    n = len(p0)
    if n < 2:
        raise ValueError("need at least two points")
    if t not in (0, 1):
        raise ValueError("t must be 0 or 1")
    dec = decider if decider is not None else _Decider((p0, p1))
    ranks = _Ranks(p0 if t == 0 else p1)
    total = ranks.total
    lo, hi = 0, total + 1
    low, probes = 0.0, 0
    if bounds is not None:
        low, up = bounds
        if math.isfinite(up):
            hi = ranks.rank_after(up) + 1
        # The spanning-tree bound is usually tight, so first test the rank
        # just below hi (twice at most).  Only done while the interval is at
        # most half the rank space, which keeps rounds within log2(total) + 1.
        if hi <= max(2, total // 2):
            probes = 2
        lo = None if low > 0 else 0
    rounds = 0
    while True:
        if probes:
            probes -= 1
            v = ranks.value(hi - 1) if hi > 1 else -1.0
            if v < low or hi <= 1:
                # Rank hi-1 already lies at or below the lower bound.
                lo = hi - 1
                break
            rounds += 1
            if dec(v).connected:
                hi -= 1
                continue
            lo = hi - 1
            break
        if lo is None:
            lo = ranks.count_le(float(np.nextafter(low, 0.0)))
        if hi - lo <= 1:
            break
        mid = (lo + hi) // 2
        rounds += 1
        if dec(ranks.value(mid)).connected:
            hi = mid
        else:
            lo = mid
    return SearchInterval(ranks.value(lo), ranks.value(hi), rounds=rounds)


def solve(P, bracket=True):
    """Minimum bottleneck moving spanning tree of ``P``.

    ``stats["timings"]`` splits wall time into the decide phases summed over
    all decide calls, plus ``select`` for everything else (bounds, rank
    counting, distance selection).
    """
    started = time.perf_counter()
    p0, p1 = as_arrays(P)
    n = len(p0)
    if n < 1:
        raise ValueError("need at least one point")
    if n == 1:
        return Solution(0.0, SpanningTree((), 0), {"rounds": [0, 0], "decide_calls": 0})
    dec = _Decider((p0, p1))
    bounds = certified_bounds(p0, p1) if bracket else None
    iv0 = search_endpoint_set((p0, p1), 0, bounds, dec)
    iv1 = search_endpoint_set((p0, p1), 1, bounds, dec)
    best = min(iv0.hi, iv1.hi)
    out = dec(best)
    if best == 0.0:
        tree = SpanningTree(tuple(_zero_edges(n)), 0)
    else:
        tree = out.tree
    stats = {
        "rounds": [iv0.rounds, iv1.rounds],
        "decide_calls": dec.calls,
        "intervals": [[iv0.lo, iv0.hi], [iv1.lo, iv1.hi]],
    }
    if bounds is not None:
        stats["bounds"] = list(bounds)
    if best != 0.0:
        stats.update({k: v for k, v in out.stats.items() if k != "timings"})
    total = time.perf_counter() - started
    phases = dict.fromkeys(("cover-build", "udre-build", "bfs"), 0.0)
    for o in dec.memo.values():
        for k, v in getattr(o, "stats", {}).get("timings", {}).items():
            phases[k] += v
    phases["select"] = max(0.0, total - sum(phases.values()))
    phases["total"] = total
    stats["timings"] = phases
    return Solution(float(best), tree, stats)


def _zero_edges(n):
    return [Edge(0, i, 0.0) for i in range(1, n)]
