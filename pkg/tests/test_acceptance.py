"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""
import math
import random
import time

import numpy as np
import pytest

from embst.baseline import baseline_solve, linear_scan_udre
from embst.bench import fit_slope, run_scaling
from embst.cover import build_cover, verify_cover
from embst.decision import connectivity_oracle, decide
from embst.envelope import EnvelopeTree
from embst.geometry import as_arrays, dist, pair_max_dist, position
from embst.io import generate
from embst.optimizer import distance_select, solve
from embst.udre import UdreStructure

from _support import (SIDE, arc_heights, arc_table, child_crossings, random_arcs,
                      random_moving)


def test_c1_solve_matches_baseline(criterion):
    rng = random.Random(101)
    kinds = ["uniform", "clustered", "static", "collinear"]
    bad = []
    start = time.perf_counter()
    for i in range(200):
        kind = kinds[i % 4]
        n = rng.randint(2, 300)
        P = as_arrays(generate(kind, n, 1000 + i))
        got, ref = solve(P).bottleneck, baseline_solve(P).bottleneck
        if got != ref:
            bad.append((kind, n, got, ref))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 120
    criterion.report(1, ok, f"200 instances, {len(bad)} mismatches, {elapsed:.1f}s (< 120s)")
    assert ok, bad[:5]


def test_c2_decide_matches_oracle(criterion):
    rng = np.random.default_rng(202)
    kinds = ["uniform", "clustered", "static", "collinear", "two_cluster_adversarial"]
    bad = trials = 0
    for i in range(200):
        n = int(rng.integers(2, 201))
        P = as_arrays(generate(kinds[i % 5], n, 2000 + i))
        p0, p1 = P
        a, b = rng.integers(0, n, 2)
        if a == b:
            b = (a + 1) % n
        c = max(dist(p0[a], p0[b]), dist(p1[a], p1[b]))
        if c == 0.0:
            c = 1.0
        lams = [c, math.nextafter(c, 0), math.nextafter(c, math.inf),
                c * (1 - 1e-9), c * (1 + 1e-9)]
        for lam in lams:
            trials += 1
            # The oracle is the reference; a mismatch is a decide bug.
            bad += decide(P, lam).connected != connectivity_oracle(P, lam)
    ok = bad == 0 and trials == 1000
    criterion.report(2, ok, f"{trials} (instance, lambda) pairs, {bad} disagreements")
    assert ok


def test_c3_udre_matches_linear_scan(criterion):
    rng = np.random.default_rng(303)
    sizes = [1, 16, 128, 1024, 4096]
    trials = bad = bad_witness = 0
    for run in range(20):
        m = sizes[run % len(sizes)]
        lam = float(rng.choice([0.005, 0.02, 0.08, 0.3]))
        pts = rng.random((m, 2))
        s = UdreStructure(pts, lam)
        alive = np.ones(m, dtype=bool)
        for _ in range(520):
            trials += 1
            if rng.random() < 0.35 and alive.any():
                pid = int(rng.choice(np.flatnonzero(alive)))
                s.delete(pid)
                alive[pid] = False
                continue
            if rng.random() < 0.7:
                p = pts[rng.integers(m)] + rng.normal(0, lam, 2)
            else:
                p = rng.random(2) * 1.2 - 0.1
            got = s.query(p)
            ref = linear_scan_udre(pts, p, lam, alive)
            bad += (got is None) != (ref is None)
            if got is not None and not (alive[got] and dist(pts[got], p) <= lam):
                bad_witness += 1
    ok = bad == 0 and bad_witness == 0 and trials >= 10 ** 4
    criterion.report(3, ok, f"{trials} interleaved operations (m up to 4096), "
                            f"{bad} disagreements, {bad_witness} bad witnesses")
    assert ok


def test_c4_envelope_structure(criterion):
    rng = random.Random(404)
    xs = np.random.default_rng(404).random(10 ** 4) * SIDE
    dense = np.linspace(0.0, SIDE, 2049)
    worst_err = 0.0
    order_bad = dup_bad = worst_cross = 0
    for _ in range(500):
        m = rng.randint(1, 256)
        arcs = random_arcs(rng, m)
        tree = EnvelopeTree(arcs)
        table = arc_table(tree.arcs)
        ref = arc_heights(table, xs).min(axis=0)
        got = np.array([y for y, _ in tree.evaluate(xs.tolist())])
        both_inf = np.isinf(ref) & np.isinf(got)
        finite = ~both_inf
        if (np.isinf(ref) != np.isinf(got)).any():
            worst_err = math.inf
        elif finite.any():
            worst_err = max(worst_err, float(np.abs(ref[finite] - got[finite]).max()))
        pieces = tree.root_pieces()
        ids = [a.id for a, _, _ in pieces]
        dup_bad += len(ids) != len(set(ids))
        ends = [a.right_end for a, _, _ in pieces]
        order_bad += not all(e1 < e2 for e1, e2 in zip(ends, ends[1:]))
        if m >= 2:
            worst_cross = max(worst_cross, child_crossings(tree, table, dense))
    ok = worst_err <= 1e-9 and order_bad == 0 and dup_bad == 0 and worst_cross <= 1
    criterion.report(4, ok, f"500 arc sets, max |error| {worst_err:.2e} (<= 1e-9), "
                            f"{order_bad} misordered chains, {dup_bad} repeated arcs, "
                            f"max child crossings {worst_cross} (<= 1)")
    assert ok


def test_c5_moved_up_bound(criterion):
    rng = random.Random(505)
    details, ok = [], True
    for m in (256, 1024, 4096):
        worst = 0
        for _ in range(3):
            arcs = random_arcs(rng, m)
            tree = EnvelopeTree(arcs)
            order = [a.id for a in arcs]
            rng.shuffle(order)
            for pid in order:
                tree.delete(pid)
            worst = max(worst, tree.moved_up_counter)
        bound = m * math.ceil(math.log2(m))
        ok &= worst <= bound
        details.append(f"m={m}: {worst} <= {bound}")
    criterion.report(5, ok, "moved-up counts " + ", ".join(details))
    assert ok


def test_c6_cover_exact(criterion):
    rng = np.random.default_rng(606)
    kinds = ["uniform", "clustered", "static", "two_cluster_adversarial"]
    failures, largest = [], None
    for i in range(100):
        n = int(rng.integers(2, 501))
        p0, _ = as_arrays(generate(kinds[i % 4], n, 3000 + i))
        a, b = rng.integers(0, n, 2)
        lam = dist(p0[a], p0[b]) if a != b else 0.0
        lam = lam if lam > 0 else 0.1
        lam *= float(rng.choice([0.25, 1.0, 2.0]))
        rep = verify_cover(build_cover(p0, lam), p0, lam)
        if not rep.ok:
            failures.append(rep.summary())
        if largest is None or rep.sum_x + rep.sum_y > largest.sum_x + largest.sum_y:
            largest = rep
    ok = not failures
    criterion.report(6, ok, f"100 covers, {len(failures)} with false/missing/duplicate pairs; "
                            f"largest {largest.summary()}")
    assert ok, failures[:3]


def test_c7_distance_select(criterion):
    rng = np.random.default_rng(707)
    bad = calls = 0
    for i in range(50):
        n = int(rng.integers(100, 201))
        xy = rng.random((n, 2)) * float(rng.choice([1.0, 1e3]))
        if i % 5 == 0:
            xy[: n // 4] = xy[0]
        pts = xy.tolist()
        ref = sorted(dist(pts[a], pts[b]) for a in range(n) for b in range(a + 1, n))
        for k in range(1, len(ref) + 1):
            calls += 1
            bad += distance_select(xy, k) != ref[k - 1]
        for k in range(1, len(ref) + 1, 499):
            calls += 1
            bad += distance_select(xy, k, method="narrow") != ref[k - 1]
    ok = bad == 0
    criterion.report(7, ok, f"50 instances, {calls} ranks checked, {bad} mismatches")
    assert ok


def test_c8_pair_max_distance(criterion):
    rng = random.Random(808)
    ts = np.linspace(0.0, 1.0, 10 ** 4)
    worst = 0.0
    exact_bad = 0
    pts = random_moving(rng, 2 * 10 ** 4, spread=100.0)
    for k in range(0, len(pts), 2):
        p, q = pts[k], pts[k + 1]
        pm = pair_max_dist(p, q)
        exact_bad += pm != max(dist(position(p, 0.0), position(q, 0.0)),
                               dist(position(p, 1.0), position(q, 1.0)))
        a = (1 - ts)[:, None] * np.array(p.p0) + ts[:, None] * np.array(p.p1)
        b = (1 - ts)[:, None] * np.array(q.p0) + ts[:, None] * np.array(q.p1)
        d = a - b
        sampled = float(np.sqrt(d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1]).max())
        worst = max(worst, sampled - pm)
    ok = worst <= 1e-9 and exact_bad == 0
    criterion.report(8, ok, f"10^4 pairs x 10^4 times, max excess {worst:.1e} (<= 1e-9), "
                            f"{exact_bad} endpoint mismatches")
    assert ok


@pytest.mark.slow
def test_c9_scaling_slope(criterion):
    ns = [2 ** e for e in range(10, 17)]
    rows = run_scaling(["uniform"], ns, [0], reps=3)
    slope = fit_slope(rows, solver="embst", kind="uniform")
    base = run_scaling(["uniform"], ns, [0], reps=1, solver="baseline")
    base_slope = fit_slope(base, solver="baseline", kind="uniform")
    times = {r["n"]: r["wall_time"] for r in rows if r["phase"] == "total"}
    btimes = {r["n"]: r["wall_time"] for r in base if r["phase"] == "total"}
    ok = slope <= 1.75 and slope < base_slope
    criterion.report(9, ok, f"solve slope {slope:.3f} (<= 1.75 and below baseline), "
                            f"baseline slope {base_slope:.3f}; "
                            f"n=65536 solve {times[65536]:.1f}s, baseline {btimes[65536]:.1f}s")
    assert ok
