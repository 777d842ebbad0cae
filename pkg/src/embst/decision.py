"""Is there a moving spanning tree with bottleneck at most lambda?

Such a tree exists exactly when the graph joining p and q whenever they are
within lambda at both t=0 and t=1 is connected.  :func:`decide` answers this
by breadth-first search without building that graph: a biclique cover of the
t=0 pairs tells each frontier point p which groups to look in, and a
deletion-only range-emptiness structure over each group's t=1 positions
hands out undiscovered points within lambda of p's t=1 position one at a
time.  Every newly discovered point is
deleted from the structures it belongs to, so each query either pays for a
discovery or ends the scan of one group.
"""
import time
from collections import deque
from typing import NamedTuple, Optional

import numpy as np

from .cover import HALF_OFFSETS, CellLayout, build_cover, cross_pair_chunks
from .geometry import Edge, SpanningTree, as_arrays
from .udre import UdreStructure


class DecisionOutcome(NamedTuple):
    connected: bool
    tree: Optional[SpanningTree]
    layers: list
    stats: dict
    depth: np.ndarray


def _tree_from_parents(parent, order, p0, p1):
    child = np.asarray(order[1:], dtype=np.int64)
    par = parent[child]
    dx0 = p0[child, 0] - p0[par, 0]
    dy0 = p0[child, 1] - p0[par, 1]
    dx1 = p1[child, 0] - p1[par, 0]
    dy1 = p1[child, 1] - p1[par, 1]
    d0 = np.sqrt(dx0 * dx0 + dy0 * dy0)
    d1 = np.sqrt(dx1 * dx1 + dy1 * dy1)
    w = np.maximum(d0, d1)
    edges = tuple(Edge(int(a), int(b), float(x)) for a, b, x in zip(par, child, w))
    return SpanningTree(edges, int(order[0]))


class _Bfs:
    """Shared BFS bookkeeping: discovered flags, parents, layers, counters."""

    def __init__(self, n, start):
        self.discovered = np.zeros(n, dtype=bool)
        self.parent = np.full(n, -1, dtype=np.int64)
        self.depth = np.full(n, -1, dtype=np.int64)
        self.order = [start]
        self.layers = [1]
        self.queries = 0
        self.deletions = 0
        self.discovered[start] = True
        self.depth[start] = 0

    def found(self, q, p, nxt):
        self.discovered[q] = True
        self.parent[q] = p
        self.depth[q] = self.depth[p] + 1
        self.order.append(q)
        nxt.append(q)


def decide_with_cover(P, lam, cover=None):
    """Reference decision procedure over an explicit biclique cover.

    Builds one range-emptiness structure per biclique, exactly as the
    textbook procedure does.  Fine for small inputs and for auditing covers
    from other builders; :func:`decide` is the fast path.
    """
    p0, p1 = as_arrays(P)
    n = len(p0)
    lam = _check(n, lam)
    if cover is None:
        cover = build_cover(p0, lam)
    bfs = _Bfs(n, 0)
    structs = {}
    p1_list = p1.tolist()

    def structure(r):
        if r not in structs:
            ys = [q for q in cover.bicliques[r].Y if not bfs.discovered[q]]
            structs[r] = UdreStructure(p1[ys], lam, ids=ys) if ys else None
        return structs[r]

    def delete(q):
        for r in cover.m_index[q]:
            s = structs.get(r)
            if s is not None and s.delete(q):
                bfs.deletions += 1

    delete(0)
    frontier = [0]
    while frontier:
        nxt = []
        for p in frontier:
            for r in cover.n_index[p]:
                s = structure(r)
                if s is None:
                    continue
                while True:
                    bfs.queries += 1
                    q = s.query(p1_list[p])
                    if q is None:
                        break
                    bfs.found(q, p, nxt)
                    delete(q)
        if nxt:
            bfs.layers.append(len(nxt))
        frontier = nxt
    stats = {
        "queries": bfs.queries,
        "deletions": bfs.deletions,
        "cover_bicliques": len(cover),
        "cover_sum_x": cover.sum_x(),
        "cover_sum_y": cover.sum_y(),
        "moved_up": sum(s.counters()["moved_up"] for s in structs.values() if s is not None),
    }
    return _outcome(bfs, n, p0, p1, stats)


def _check(n, lam):
    if n < 1:
        raise ValueError("need at least one point")
    lam = float(lam)
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    return lam


def _outcome(bfs, n, p0, p1, stats):
    connected = len(bfs.order) == n
    tree = _tree_from_parents(bfs.parent, bfs.order, p0, p1) if connected else None
    return DecisionOutcome(connected, tree, bfs.layers, stats, bfs.depth)


def cross_adjacency(p0, p1, lam, layout=None):
    """CSR lists of cross-cell t=0 neighbors that are also within lam at t=1.

    Returns ``(indptr, nbrs, t0_counts)`` where ``t0_counts[p]`` is the size
    of p's singleton group before the t=1 filter.
    """
    n = len(p0)
    lay = layout if layout is not None else CellLayout(p0, lam)
    t0_counts = np.zeros(n, dtype=np.int64)
    keep_p, keep_q = [], []
    for p, q, _ in cross_pair_chunks(p0, lam, lay, offsets=HALF_OFFSETS):
        t0_counts += np.bincount(p, minlength=n)
        t0_counts += np.bincount(q, minlength=n)
        dx = p1[p, 0] - p1[q, 0]
        dy = p1[p, 1] - p1[q, 1]
        ok = np.sqrt(dx * dx + dy * dy) <= lam
        keep_p += [p[ok], q[ok]]
        keep_q += [q[ok], p[ok]]
    if keep_p:
        kp = np.concatenate(keep_p)
        kq = np.concatenate(keep_q)
        o = np.lexsort((kq, kp))
        kp, kq = kp[o], kq[o]
    else:
        kp = kq = np.zeros(0, np.int64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(kp, minlength=n), out=indptr[1:])
    return indptr, kq, t0_counts


def decide(P, lam):
    """Decide whether some moving spanning tree has bottleneck at most ``lam``.

    The cover is the grid cover: one group pairing each occupied t=0 cell with itself
    and one singleton group {p} x Y(p) per point.  Same-cell groups get a real
    range-emptiness structure over their t=1 positions.  A singleton group
    is only ever queried by its own point, so its structure would answer
    with exactly the members within lam of p at t=1; those are precomputed in
    bulk and the deletions are replayed through the discovered flags.
    """
    p0, p1 = as_arrays(P)
    n = len(p0)
    lam = _check(n, lam)
    timings = {}
    t = time.perf_counter()
    lay = CellLayout(p0, lam)
    cell = np.empty(n, dtype=np.int64)
    cell[lay.order] = lay.cell_of_sorted
    indptr, nbrs, t0_counts = cross_adjacency(p0, p1, lam, lay)
    timings["cover-build"] = time.perf_counter() - t

    t = time.perf_counter()
    bfs = _Bfs(n, 0)
    structs = {}
    udre_time = 0.0
    p1_list = p1.tolist()
    cell_list = cell.tolist()
    discovered = bfs.discovered

    def structure(c):
        nonlocal udre_time
        s = structs.get(c)
        if s is None and c not in structs:
            t1 = time.perf_counter()
            st = lay.starts[c]
            rows = lay.order[st:st + lay.counts[c]]
            rows = np.sort(rows[~discovered[rows]])
            s = UdreStructure(p1[rows], lam, ids=rows.tolist()) if len(rows) else None
            structs[c] = s
            udre_time += time.perf_counter() - t1
        return s

    def delete(q):
        s = structs.get(cell_list[q])
        if s is not None and s.delete(q):
            bfs.deletions += 1

    frontier = [0]
    while frontier:
        nxt = []
        for p in frontier:
            s = structure(cell_list[p])
            if s is not None:
                while True:
                    bfs.queries += 1
                    q = s.query(p1_list[p])
                    if q is None:
                        break
                    bfs.found(q, p, nxt)
                    delete(q)
            if t0_counts[p]:
                bfs.queries += 1
                for q in nbrs[indptr[p]:indptr[p + 1]].tolist():
                    if not discovered[q]:
                        bfs.queries += 1
                        bfs.found(q, p, nxt)
                        delete(q)
        if nxt:
            bfs.layers.append(len(nxt))
        frontier = nxt
    lazy_build = sum(s.build_time for s in structs.values() if s is not None)
    timings["udre-build"] = udre_time + lazy_build
    timings["bfs"] = time.perf_counter() - t - timings["udre-build"]
    singles = int((t0_counts > 0).sum())
    stats = {
        "queries": bfs.queries,
        "deletions": bfs.deletions,
        "cover_bicliques": len(lay.keys) + singles,
        "cover_sum_x": n + singles,
        "cover_sum_y": n + int(t0_counts.sum()),
        "moved_up": sum(s.counters()["moved_up"] for s in structs.values() if s is not None),
        "udre_structures": sum(1 for s in structs.values() if s is not None),
        "timings": timings,
    }
    return _outcome(bfs, n, p0, p1, stats)


def connectivity_oracle(P, lam):
    """Brute-force referee: union-find over all pairs with max distance <= lam."""
    p0, p1 = as_arrays(P)
    n = len(p0)
    if n == 0:
        raise ValueError("need at least one point")
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    comps = n
    for i in range(n - 1):
        dx0 = p0[i + 1:, 0] - p0[i, 0]
        dy0 = p0[i + 1:, 1] - p0[i, 1]
        dx1 = p1[i + 1:, 0] - p1[i, 0]
        dy1 = p1[i + 1:, 1] - p1[i, 1]
        ok = (np.sqrt(dx0 * dx0 + dy0 * dy0) <= lam) & (np.sqrt(dx1 * dx1 + dy1 * dy1) <= lam)
        for j in (np.flatnonzero(ok) + i + 1).tolist():
            a, b = find(i), find(j)
            if a != b:
                parent[a] = b
                comps -= 1
    return comps == 1


def oracle_depths(P, lam):
    """BFS depth of every point from id 0 in the explicit graph (-1 if unreachable)."""
    p0, p1 = as_arrays(P)
    n = len(p0)
    depth = np.full(n, -1, dtype=np.int64)
    depth[0] = 0
    dq = deque([0])
    while dq:
        i = dq.popleft()
        dx0 = p0[:, 0] - p0[i, 0]
        dy0 = p0[:, 1] - p0[i, 1]
        dx1 = p1[:, 0] - p1[i, 0]
        dy1 = p1[:, 1] - p1[i, 1]
        ok = (np.sqrt(dx0 * dx0 + dy0 * dy0) <= lam) & (np.sqrt(dx1 * dx1 + dy1 * dy1) <= lam)
        for j in np.flatnonzero(ok & (depth < 0)).tolist():
            depth[j] = depth[i] + 1
            dq.append(j)
    return depth
