import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from embst.baseline import linear_scan_udre
from embst.udre import SimpleSet, UdreStructure, _rotation, to_local


def test_simple_set():
    s = SimpleSet([3, 1, 4])
    assert len(s) == 3 and 1 in s
    s.remove(1)
    assert 1 not in s and len(s) == 2
    s.remove(1)
    assert sorted(s) == [3, 4] and s.any() in (3, 4)


@pytest.mark.parametrize("off", [(di, dj) for di in range(-2, 3) for dj in range(-2, 3)
                                 if (di, dj) != (0, 0)])
def test_rotation_puts_source_cell_above(off):
    side = 1.0
    rot = _rotation(off)
    # Every point of the source cell maps to local y >= side.
    for fx in (0.0, 0.3, 0.999):
        for fy in (0.0, 0.6, 0.999):
            x, y = (off[0] + fx) * side, (off[1] + fy) * side
            _, ly = to_local(x, y, (0, 0), side, rot)
            assert ly >= side - 1e-12


def test_rotation_preserves_distance():
    rng = random.Random(0)
    for rot in range(4):
        for _ in range(100):
            a = (rng.uniform(-3, 3), rng.uniform(-3, 3))
            b = (rng.uniform(-3, 3), rng.uniform(-3, 3))
            la, lb = to_local(*a, (1, -2), 0.7, rot), to_local(*b, (1, -2), 0.7, rot)
            assert math.dist(a, b) == pytest.approx(math.dist(la, lb), abs=1e-12)


def _run(pts, lam, ops, rng, lazy=True):
    s = UdreStructure(pts, lam, lazy=lazy)
    alive = np.ones(len(pts), dtype=bool)
    for _ in range(ops):
        if rng.random() < 0.3 and alive.any():
            pid = int(rng.choice(np.flatnonzero(alive)))
            assert s.delete(pid)
            assert not s.delete(pid)
            alive[pid] = False
        else:
            p = pts[rng.integers(len(pts))] + rng.normal(0, lam, 2)
            got = s.query(p)
            ref = linear_scan_udre(pts, p, lam, alive)
            assert (got is None) == (ref is None)
            if got is not None:
                assert alive[got]
                d = pts[got] - p
                assert math.sqrt(d[0] * d[0] + d[1] * d[1]) <= lam
    return s


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 300), st.floats(0.01, 0.5), st.integers(0, 2 ** 32), st.booleans())
def test_udre_matches_linear_scan(m, lam, seed, lazy):
    rng = np.random.default_rng(seed)
    pts = rng.random((m, 2))
    _run(pts, lam, 150, rng, lazy)


def test_counters_and_storage():
    rng = np.random.default_rng(3)
    pts = rng.random((500, 2))
    s = UdreStructure(pts, 0.05, lazy=False)
    # Each point sits in its own set plus at most 24 neighbor structures.
    assert s.stored_entries() <= 25 * len(pts)
    for pid in range(len(pts)):
        s.delete(pid)
    c = s.counters()
    assert c["deletions"] == 500 and c["builds"] == len(s.structures()) - len(s.self_sets)
    assert s.query((0.5, 0.5)) is None and len(s) == 0


def test_ids_and_duplicates():
    s = UdreStructure([[0, 0], [0, 0], [5, 5]], 1.0, ids=[10, 11, 12])
    assert s.query((0.1, 0)) in (10, 11)
    s.delete(10)
    assert s.query((0.1, 0)) == 11
    s.delete(11)
    assert s.query((0.1, 0)) is None
    assert s.query((5.5, 5.5)) == 12
    with pytest.raises(ValueError):
        UdreStructure([[0, 0], [1, 1]], 1.0, ids=[1, 1])
