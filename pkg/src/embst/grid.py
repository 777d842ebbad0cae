"""Sparse grid of square cells of side about lambda/sqrt(2).

Only occupied cells are stored.  The neighborhood N(C) of a cell is the
5x5 block centred on it, which is exactly the set of cells whose closed
squares come within lambda of C.
"""
import math
from collections import defaultdict

import numpy as np

# Shrinks the cell side a hair so that the computed distance of two points
# sharing a cell never rounds above lambda.
_SIDE_SHRINK = 1.0 - 1e-14

NEIGHBOR_OFFSETS = tuple((di, dj) for di in range(-2, 3) for dj in range(-2, 3))


def cell_side(lam):
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    return lam / math.sqrt(2.0) * _SIDE_SHRINK


def cell_of(x, y, side):
    return (math.floor(x / side), math.floor(y / side))


def cell_indices(xy, side):
    """Vectorized cell coordinates, returned as an (n, 2) int64 array."""
    return np.floor(np.asarray(xy, dtype=float) / side).astype(np.int64)


def neighbors(cell):
    i, j = cell
    return [(i + di, j + dj) for di, dj in NEIGHBOR_OFFSETS]


class Grid:
    """Occupied cells with their point ids, plus neighbor lookups for a fixed lambda."""

    def __init__(self, lam, cells, side):
        self.lam = lam
        self.side = side
        self.cells = cells
        self._domain = None

    @property
    def domain(self):
        """Occupied cells and all their neighbors (materialized on first use)."""
        if self._domain is None:
            dom = set()
            for c in self.cells:
                dom.update(neighbors(c))
            self._domain = dom
        return self._domain

    @property
    def neighbor_lists(self):
        return {c: neighbors(c) for c in self.domain}

    def in_domain(self, cell):
        if self._domain is not None:
            return cell in self._domain
        i, j = cell
        cells = self.cells
        for di, dj in NEIGHBOR_OFFSETS:
            if (i + di, j + dj) in cells:
                return True
        return False

    def cell_square(self, cell):
        s = self.side
        return (cell[0] * s, cell[1] * s, (cell[0] + 1) * s, (cell[1] + 1) * s)

    def __len__(self):
        return len(self.cells)


def build_grid(points, lam, ids=None):
    """Bucket ``points`` (an (n, 2) array-like) into grid cells.

    ``ids`` labels the rows; it defaults to ``range(n)``.
    """
    side = cell_side(lam)
    cells = defaultdict(list)
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts):
        if not np.isfinite(pts).all():
            raise ValueError("non-finite coordinates")
        idx = cell_indices(pts, side).tolist()
        labels = range(len(pts)) if ids is None else ids
        for (i, j), pid in zip(idx, labels):
            cells[(i, j)].append(pid)
    return Grid(lam, dict(cells), side)


def locate(grid, p):
    """Return ``(cell, N(cell))`` if ``p`` falls in the grid's domain, else None."""
    c = cell_of(p[0], p[1], grid.side)
    if grid.in_domain(c):
        return c, neighbors(c)
    return None
