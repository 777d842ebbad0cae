"""Deletion-only unit-disk range emptiness over a planar point set.

A query asks for some stored point within distance lambda of p.  Points are
bucketed into a grid of side lambda/sqrt(2).  For a query cell C and each
occupied neighbor cell C2 there is one pair structure:

* C2 == C: every point in C is a hit, so a plain set suffices;
* C2 != C: the disks of the points in C2 are clipped to C (after rotating
  so that C2 lies above C) and kept in an :class:`~embst.envelope.EnvelopeTree`; points
  whose disk swallows all of C go to a plain set instead.

Structures are built the first time a query lands in C, over the points
still alive at that moment.  Hits are always confirmed with the plain
Euclidean distance in the original coordinates.
"""
import math
import time

import numpy as np

from .envelope import FULL, Arc, EnvelopeTree, clip_arc
from .grid import build_grid, cell_of, neighbors


class SimpleSet:
    """Unordered id set with O(1) delete and O(1) arbitrary-member lookup."""

    __slots__ = ("items", "where")

    def __init__(self, ids=()):
        self.items = list(ids)
        self.where = {pid: k for k, pid in enumerate(self.items)}

    def remove(self, pid):
        k = self.where.pop(pid, None)
        if k is None:
            return False
        last = self.items.pop()
        if last != pid:
            self.items[k] = last
            self.where[last] = k
        return True

    def any(self):
        return self.items[-1] if self.items else None

    def __contains__(self, pid):
        return pid in self.where

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)


def _rotation(offset):
    """Rotation index that puts the neighbor cell above the query cell."""
    di, dj = offset
    if dj >= 1:
        return 0
    if dj <= -1:
        return 2
    return 1 if di >= 1 else 3


def to_local(x, y, cell, side, rot):
    """Map (x, y) into the rotated frame where ``cell`` is [0, side]^2."""
    u = x - cell[0] * side
    v = y - cell[1] * side
    if rot == 0:
        return u, v
    if rot == 1:
        return side - v, u
    if rot == 2:
        return side - u, side - v
    return v, side - u


class PairStructure:
    """The points of one neighbor cell as seen from a query cell."""

    __slots__ = ("cell", "source", "rot", "full", "tree")

    def __init__(self, cell, source, rot, full, tree):
        self.cell = cell
        self.source = source
        self.rot = rot
        self.full = full
        self.tree = tree

    def remove(self, pid):
        if self.full is not None and self.full.remove(pid):
            return True
        return self.tree is not None and self.tree.delete(pid)

    def __len__(self):
        n = len(self.full) if self.full is not None else 0
        return n + (self.tree.live_count if self.tree is not None else 0)


class UdreStructure:
    """Deletion-only range emptiness for disks of radius ``lam``.

    ``points`` is an (m, 2) array; ``ids`` labels its rows (default 0..m-1).
    With ``lazy=False`` every pair structure is built up front.
    """

    def __init__(self, points, lam, ids=None, lazy=True):
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        ids = list(range(len(pts))) if ids is None else [int(i) for i in ids]
        if len(ids) != len(pts):
            raise ValueError("ids and points differ in length")
        self.lam = float(lam)
        self.grid = build_grid(pts, self.lam, ids)
        self.side = self.grid.side
        self.coords = dict(zip(ids, map(tuple, pts.tolist())))
        if len(self.coords) != len(ids):
            raise ValueError("duplicate ids")
        self.alive = set(ids)
        self.self_sets = {c: SimpleSet(q) for c, q in self.grid.cells.items()}
        self.home = {}
        for c, q in self.grid.cells.items():
            for pid in q:
                self.home[pid] = c
        # query cell -> list of PairStructure
        self.pair_structs = {}
        self.membership = {}
        self.queries = 0
        self.deletions = 0
        self.builds = 0
        self.build_time = 0.0
        if not lazy:
            for c in list(self.grid.domain):
                self._probes(c)

    # -- construction -------------------------------------------------

    def _build_pair(self, c, c2):
        s, lam = self.side, self.lam
        rot = _rotation((c2[0] - c[0], c2[1] - c[1]))
        full, arcs = [], []
        for pid in self.self_sets[c2]:
            x, y = self.coords[pid]
            qx, qy = to_local(x, y, c, s, rot)
            a = clip_arc(qx, qy, s, lam, pid, c2)
            if a is FULL:
                full.append(pid)
            elif isinstance(a, Arc):
                arcs.append(a)
        if not full and not arcs:
            return None
        ps = PairStructure(c, c2, rot, SimpleSet(full) if full else None,
                           EnvelopeTree(arcs) if arcs else None)
        for pid in full:
            self.membership.setdefault(pid, []).append(ps)
        for a in arcs:
            self.membership.setdefault(a.id, []).append(ps)
        self.builds += 1
        return ps

    def _probes(self, c):
        probes = self.pair_structs.get(c)
        if probes is None:
            t0 = time.perf_counter()
            probes = []
            for c2 in neighbors(c):
                if c2 == c or c2 not in self.self_sets:
                    continue
                ps = self._build_pair(c, c2)
                if ps is not None:
                    probes.append(ps)
            self.pair_structs[c] = probes
            self.build_time += time.perf_counter() - t0
        return probes

    # -- operations ---------------------------------------------------

    def _hit(self, pid, px, py):
        x, y = self.coords[pid]
        dx = px - x
        dy = py - y
        return math.sqrt(dx * dx + dy * dy) <= self.lam

    def query(self, p):
        """Return the id of a live point within lambda of ``p``, or None."""
        self.queries += 1
        px, py = float(p[0]), float(p[1])
        c = cell_of(px, py, self.side)
        own = self.self_sets.get(c)
        if own is not None and own.items:
            return own.items[-1]
        if not self.grid.in_domain(c):
            return None
        s = self.side
        for ps in self._probes(c):
            if ps.full is not None and ps.full.items:
                for pid in ps.full.items:
                    if self._hit(pid, px, py):
                        return pid
            tree = ps.tree
            if tree is not None and tree.live_count:
                lx, _ = to_local(px, py, c, s, ps.rot)
                for a in tree.candidates(lx):
                    if a.alive and self._hit(a.id, px, py):
                        return a.id
        return None

    def delete(self, pid):
        """Remove ``pid``; returns False if it was not live."""
        if pid not in self.alive:
            return False
        self.alive.discard(pid)
        self.deletions += 1
        self.self_sets[self.home[pid]].remove(pid)
        for ps in self.membership.pop(pid, ()):
            ps.remove(pid)
        return True

    # -- inspection ---------------------------------------------------

    def structures(self):
        """All built structures as ``((query_cell, source_cell), structure)``, self sets included."""
        out = [((c, c), ss) for c, ss in self.self_sets.items()]
        for c, probes in self.pair_structs.items():
            for ps in probes:
                out.append(((c, ps.source), ps))
        return out

    def stored_entries(self):
        total = sum(len(ss) for ss in self.self_sets.values())
        for probes in self.pair_structs.values():
            total += sum(len(ps) for ps in probes)
        return total

    def trees(self):
        for probes in self.pair_structs.values():
            for ps in probes:
                if ps.tree is not None:
                    yield ps.tree

    def counters(self):
        return {
            "queries": self.queries,
            "deletions": self.deletions,
            "moved_up": sum(t.moved_up_counter for t in self.trees()),
            "builds": self.builds,
        }

    def __len__(self):
        return len(self.alive)


def udre_build(points, lam, ids=None, lazy=True):
    return UdreStructure(points, lam, ids=ids, lazy=lazy)


def udre_query(structure, p):
    return structure.query(p)


def udre_delete(structure, pid):
    return structure.delete(pid)
