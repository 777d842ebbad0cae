"""Biclique covers of the pairs within distance lambda.

A cover is a list of bicliques (X, Y) such that every ordered pair (p, q),
p != q, with |pq| <= lambda has exactly one biclique with p in X and q in
Y, and no pair farther apart is covered.

The builder here is grid based.  Each occupied cell contributes the
biclique of its points with themselves; all its pairs qualify because the cell diagonal is at
most lambda.  Self pairs (p, p) ride along and are flagged.  Each point p
then gets one more biclique {p} x Y, where Y holds the points of the other
24 neighbor cells within lambda of p.

The heavy lifting is :func:`cross_pair_chunks`, a numpy kernel that walks
the neighbor cell offsets and yields candidate pairs chunk by chunk, so the
quadratic-looking dense case never needs all pairs in memory at once.
"""
from typing import NamedTuple

import numpy as np
from scipy.spatial import cKDTree

from .grid import NEIGHBOR_OFFSETS, cell_indices, cell_side

CROSS_OFFSETS = tuple(o for o in NEIGHBOR_OFFSETS if o != (0, 0))
# One offset from each +/- pair: visiting these finds every unordered pair once.
HALF_OFFSETS = tuple(o for o in CROSS_OFFSETS if o > (0, 0))
DEFAULT_CHUNK = 1 << 21


class GridRangeError(ValueError):
    """Cell indices for this radius would not fit in 64-bit integers."""


class CellLayout:
    """Points of one array sorted by grid cell, with per-cell runs.

    ``order[k]`` is the original row of the k-th point in cell order;
    ``cell_of_sorted[k]`` indexes into ``keys``/``starts``/``counts``.
    """

    def __init__(self, xy, lam):
        xy = np.asarray(xy, dtype=float).reshape(-1, 2)
        if not np.isfinite(xy).all():
            raise ValueError("non-finite coordinates")
        self.lam = float(lam)
        self.side = cell_side(self.lam)
        self.n = len(xy)
        if self.n == 0:
            self.order = np.zeros(0, np.int64)
            self.keys = self.starts = self.counts = np.zeros(0, np.int64)
            self.cell_of_sorted = np.zeros(0, np.int64)
            self.width = 1
            self.ij = np.zeros((0, 2), np.int64)
            return
        reach = float(np.abs(xy).max()) / self.side
        if not reach < 2.0 ** 52:
            raise GridRangeError(f"lambda {lam!r} is too small for coordinates of size "
                                 f"{float(np.abs(xy).max())!r}")
        ij = cell_indices(xy, self.side)
        lo = ij.min(axis=0)
        span = ij.max(axis=0) - lo
        self.width = int(span[1]) + 5
        if (int(span[0]) + 5) * self.width >= (1 << 62):
            raise ValueError("point spread too large for lambda; rescale the input")
        key = (ij[:, 0] - lo[0] + 2) * self.width + (ij[:, 1] - lo[1] + 2)
        self.order = np.argsort(key, kind="stable")
        skey = key[self.order]
        self.keys, self.starts, self.counts = np.unique(
            skey, return_index=True, return_counts=True)
        self.cell_of_sorted = np.repeat(np.arange(len(self.keys)), self.counts)
        self.ij = ij[self.order[self.starts]]
        self.sorted_key = skey

    def cells(self):
        """Yield (CellCoord, row ids) per occupied cell, ids ascending."""
        for c in range(len(self.keys)):
            s = self.starts[c]
            rows = np.sort(self.order[s:s + self.counts[c]])
            yield (int(self.ij[c, 0]), int(self.ij[c, 1])), rows

    def offset_targets(self, di, dj):
        """Per occupied cell: index of the cell at offset (di, dj), or -1."""
        want = self.keys + di * self.width + dj
        idx = np.searchsorted(self.keys, want)
        idx = np.minimum(idx, len(self.keys) - 1)
        hit = self.keys[idx] == want
        return np.where(hit, idx, -1)


def cross_pair_chunks(xy, lam, layout=None, chunk=DEFAULT_CHUNK, offsets=CROSS_OFFSETS):
    """Yield ``(p, q, d)`` arrays of ordered cross-cell pairs with d <= lam.

    ``p`` and ``q`` are original row indices; every ordered pair of points
    in distinct neighbor cells at distance at most ``lam`` appears exactly
    once across all chunks.  With ``offsets=HALF_OFFSETS`` each unordered
    pair appears once instead, in one of its two orientations.  The offset
    (0, 0) adds the same-cell pairs, again once per unordered pair.
    """
    xy = np.asarray(xy, dtype=float).reshape(-1, 2)
    lay = layout if layout is not None else CellLayout(xy, lam)
    if lay.n == 0:
        return
    sx = xy[lay.order, 0]
    sy = xy[lay.order, 1]
    lam = float(lam)
    for di, dj in offsets:
        if (di, dj) == (0, 0):
            # Same cell, later members only: each unordered pair once.
            live = np.arange(lay.n)
            cell_end = lay.starts + lay.counts
            cnt = cell_end[lay.cell_of_sorted] - live - 1
            first = live + 1
        else:
            tgt = lay.offset_targets(di, dj)
            cell_tgt = tgt[lay.cell_of_sorted]
            live = np.flatnonzero(cell_tgt >= 0)
            if len(live) == 0:
                continue
            ct = cell_tgt[live]
            cnt = lay.counts[ct]
            first = lay.starts[ct]
        csum = np.cumsum(cnt)
        b = 0
        while b < len(live):
            base = csum[b - 1] if b else 0
            e = int(np.searchsorted(csum, base + chunk, side="right"))
            e = max(e, b + 1)
            c = cnt[b:e]
            tot = int(c.sum())
            ps = np.repeat(live[b:e], c)
            starts = np.repeat(first[b:e] - (np.cumsum(c) - c), c)
            qs = starts + np.arange(tot)
            dx = sx[ps] - sx[qs]
            dy = sy[ps] - sy[qs]
            d = np.sqrt(dx * dx + dy * dy)
            keep = d <= lam
            if keep.any():
                yield lay.order[ps[keep]], lay.order[qs[keep]], d[keep]
            b = e


class Biclique(NamedTuple):
    id: int
    X: tuple
    Y: tuple


class BicliqueCover:
    """Bicliques plus per-point indices: ``n_index[p]`` lists bicliques with p
on the X side, ``m_index[p]`` those with p on the Y side."""

    def __init__(self, bicliques, n, includes_self_pairs=True):
        self.bicliques = list(bicliques)
        self.n = n
        self.includes_self_pairs = includes_self_pairs
        self.n_index = {i: [] for i in range(n)}
        self.m_index = {i: [] for i in range(n)}
        for b in self.bicliques:
            for p in b.X:
                self.n_index[p].append(b.id)
            for q in b.Y:
                self.m_index[q].append(b.id)

    def __len__(self):
        return len(self.bicliques)

    def __iter__(self):
        return iter(self.bicliques)

    def sum_x(self):
        return sum(len(b.X) for b in self.bicliques)

    def sum_y(self):
        return sum(len(b.Y) for b in self.bicliques)

    def covered_pairs(self):
        return sum(len(b.X) * len(b.Y) for b in self.bicliques)

    def self_pair_count(self):
        if not self.includes_self_pairs:
            return 0
        return sum(len(set(b.X) & set(b.Y)) for b in self.bicliques)


def build_cover(points, lam, chunk=DEFAULT_CHUNK):
    """Grid biclique cover of the ordered pairs of ``points`` within ``lam``."""
    xy = np.asarray(points, dtype=float).reshape(-1, 2)
    lay = CellLayout(xy, lam)
    bicliques = []
    for _, rows in lay.cells():
        members = tuple(int(r) for r in rows)
        bicliques.append(Biclique(len(bicliques), members, members))
    parts_p, parts_q = [], []
    for p, q, _ in cross_pair_chunks(xy, lam, lay, chunk):
        parts_p.append(p)
        parts_q.append(q)
    if parts_p:
        p = np.concatenate(parts_p)
        q = np.concatenate(parts_q)
        o = np.lexsort((q, p))
        p, q = p[o], q[o]
        cut = np.flatnonzero(np.diff(p)) + 1
        for ps, qs in zip(np.split(p, cut), np.split(q, cut)):
            bicliques.append(Biclique(len(bicliques), (int(ps[0]),), tuple(qs.tolist())))
    return BicliqueCover(bicliques, len(xy))


def count_pairs_within(points, r, chunk=DEFAULT_CHUNK):
    """Number of unordered pairs at distance at most ``r``.

    Equals (sum over bicliques of |X||Y| minus self pairs) / 2 for the grid
    cover, computed without materializing it.
    """
    xy = np.asarray(points, dtype=float).reshape(-1, 2)
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r}")
    try:
        lay = CellLayout(xy, r)
    except GridRangeError:
        return len(_tiny_pairs(xy, r))
    same = int((lay.counts * (lay.counts - 1)).sum())
    cross = sum(len(p) for p, _, _ in cross_pair_chunks(xy, r, lay, chunk, HALF_OFFSETS))
    return same // 2 + cross


def _duplicate_pairs(xy):
    if len(xy) < 2:
        return 0
    _, cnt = np.unique(xy, axis=0, return_counts=True)
    return int((cnt * (cnt - 1) // 2).sum())


def _tiny_pairs(xy, r):
    """Distances <= r for radii too small for the grid (kd-tree, then exact recheck)."""
    pairs = cKDTree(xy).query_pairs(r * (1 + 1e-6) + 1e-300, output_type="ndarray")
    if len(pairs) == 0:
        return np.zeros(0)
    dx = xy[pairs[:, 0], 0] - xy[pairs[:, 1], 0]
    dy = xy[pairs[:, 0], 1] - xy[pairs[:, 1], 1]
    d = np.sqrt(dx * dx + dy * dy)
    return d[d <= r]


def rank_window(points, lo, hi, chunk=DEFAULT_CHUNK):
    """One pass at radius ``hi``: ``(#pairs with d <= lo, sorted d in (lo, hi])``."""
    xy = np.asarray(points, dtype=float).reshape(-1, 2)
    if hi < 0 or hi < lo:
        raise ValueError("need 0 <= hi and lo <= hi")
    if hi == 0:
        dup = _duplicate_pairs(xy)
        return (dup, np.zeros(0)) if lo >= 0 else (0, np.zeros(dup))
    try:
        lay = CellLayout(xy, hi)
    except GridRangeError:
        d = _tiny_pairs(xy, hi)
        inside = d > lo
        return len(d) - int(inside.sum()), np.sort(d[inside])
    below = 0
    out = []
    for _, _, d in cross_pair_chunks(xy, hi, lay, chunk, ((0, 0),) + HALF_OFFSETS):
        inside = d > lo
        below += len(d) - int(inside.sum())
        out.append(d[inside])
    res = np.concatenate(out) if out else np.zeros(0)
    res.sort()
    return below, res


def pairs_in_window(points, lo, hi, chunk=DEFAULT_CHUNK):
    """Distances d of unordered pairs with lo < d <= hi, as a sorted array."""
    return rank_window(points, lo, hi, chunk)[1]


class CoverReport(NamedTuple):
    ok: bool
    false_pairs: int
    missing_pairs: int
    duplicate_pairs: int
    bicliques: int
    sum_x: int
    sum_y: int
    size_target: float

    def summary(self):
        state = "pass" if self.ok else "FAIL"
        return (f"{state}: {self.bicliques} bicliques, sum|X|={self.sum_x}, "
                f"sum|Y|={self.sum_y} (n^(4/3) log n = {self.size_target:.0f}); "
                f"false={self.false_pairs} missing={self.missing_pairs} "
                f"duplicate={self.duplicate_pairs}")


def verify_cover(cover, points, lam):
    """Exhaustively check a cover against all O(n^2) ordered pairs."""
    xy = np.asarray(points, dtype=float).reshape(-1, 2)
    n = len(xy)
    dx = xy[:, None, 0] - xy[None, :, 0]
    dy = xy[:, None, 1] - xy[None, :, 1]
    within = np.sqrt(dx * dx + dy * dy) <= lam
    hits = np.zeros((n, n), np.int64)
    false_pairs = 0
    for b in cover.bicliques:
        X = np.asarray(b.X, np.int64)
        Y = np.asarray(b.Y, np.int64)
        if len(X) == 0 or len(Y) == 0:
            continue
        sub = within[np.ix_(X, Y)]
        false_pairs += int((~sub).sum())
        np.add.at(hits, (np.repeat(X, len(Y)), np.tile(Y, len(X))), 1)
    off = ~np.eye(n, dtype=bool)
    missing = int((within & off & (hits == 0)).sum())
    dup = int((off & (hits > 1)).sum())
    if not cover.includes_self_pairs:
        dup += int(np.diag(hits).astype(bool).sum())
    target = n ** (4.0 / 3.0) * max(1.0, np.log2(max(n, 2)))
    return CoverReport(false_pairs == 0 and missing == 0 and dup == 0,
                       false_pairs, missing, dup, len(cover),
                       cover.sum_x(), cover.sum_y(), float(target))
