import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from embst.cover import (build_cover, count_pairs_within, pairs_in_window, rank_window,
                         verify_cover)
from embst.io import generate
from embst.geometry import as_arrays


def _brute(xy):
    return np.array([np.sqrt(((a - b) ** 2).sum()) for a, b in itertools.combinations(xy, 2)])


point_sets = st.builds(lambda n, seed, scale: np.random.default_rng(seed).random((n, 2)) * scale,
                       st.integers(2, 150), st.integers(0, 2 ** 32), st.sampled_from([1.0, 10.0, 1e-3]))


@settings(max_examples=60, deadline=None)
@given(point_sets, st.floats(0.001, 2.0))
def test_cover_is_exact(xy, frac):
    lam = frac * float(np.ptp(xy, axis=0).max() or 1.0)
    rep = verify_cover(build_cover(xy, lam), xy, lam)
    assert rep.ok, rep.summary()


@settings(max_examples=60, deadline=None)
@given(point_sets, st.floats(0.001, 2.0))
def test_counts_and_windows(xy, frac):
    d = np.sort(_brute(xy))
    r = frac * float(d.max() or 1.0)
    assert count_pairs_within(xy, r) == int((d <= r).sum())
    lo = r / 2
    below, win = rank_window(xy, lo, r)
    assert below == int((d <= lo).sum())
    assert np.array_equal(win, d[(d > lo) & (d <= r)])
    assert np.array_equal(pairs_in_window(xy, lo, r), win)


def test_duplicates_and_tiny_radii():
    xy = np.array([[0.0, 0.0], [0.0, 0.0], [1e-300, 0.0], [1.0, 1.0], [1.0, 1.0]])
    assert rank_window(xy, 0.0, 0.0) == (2, pytest.approx(np.zeros(0)))
    assert count_pairs_within(xy, 1e-290) == 4
    with pytest.raises(ValueError):
        count_pairs_within(xy, 0.0)


def test_adversarial_cover_sizes():
    p0, _ = as_arrays(generate("two_cluster_adversarial", 400, 1))
    rep = verify_cover(build_cover(p0, 0.25), p0, 0.25)
    assert rep.ok
    # Each point appears once in its own cell's X side and at most once as a singleton.
    assert rep.sum_x <= 2 * len(p0)


def test_verify_cover_detects_errors():
    from embst.cover import Biclique, BicliqueCover
    xy = np.array([[0.0, 0.0], [0.1, 0.0], [5.0, 0.0]])
    bad = BicliqueCover([Biclique(0, (0,), (2,))], 3)
    rep = verify_cover(bad, xy, 0.5)
    assert not rep.ok and rep.false_pairs == 1 and rep.missing_pairs == 2
