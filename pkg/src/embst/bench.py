"""Scaling runs and log-log slope fits.

:func:`run_scaling` solves a deterministic grid of instances and emits one
CSV row per (instance, phase).  Each instance is solved ``reps`` times and
the repetition with the median total time is reported, so phase times in a
row set always come from the same run.
"""
import csv
import io
import math
import statistics
import time

import numpy as np

from .baseline import baseline_solve
from .geometry import as_arrays
from .io import generate
from .optimizer import solve

PHASES = ("cover-build", "udre-build", "bfs", "select", "total")
FIELDS = ("solver", "kind", "n", "seed", "phase", "wall_time", "queries", "deletions",
          "moved_up", "cover_bicliques", "cover_sum_sizes", "cover_sum_x")


def _instance(kind, n, seed):
    return as_arrays(generate(kind, n, seed))


def _one(solver, P):
    if solver == "baseline":
        t = time.perf_counter()
        sol = baseline_solve(P)
        return sol, {"total": time.perf_counter() - t}
    sol = solve(P)
    return sol, sol.stats.get("timings", {"total": 0.0})


def run_scaling(kinds, n_list, seeds, reps=3, solver="embst", out=None):
    """Solve every (kind, n, seed) and return BenchRow dicts (sorted).

    With ``out`` (a path or text stream) the rows are also written as CSV.
    """
    if solver not in ("embst", "baseline"):
        raise ValueError(f"unknown solver {solver!r}")
    rows = []
    for kind in kinds:
        for n in n_list:
            for seed in seeds:
                P = _instance(kind, n, seed)
                runs = [_one(solver, P) for _ in range(max(1, reps))]
                totals = [r[1]["total"] for r in runs]
                med = statistics.median_low(totals)
                sol, phases = runs[totals.index(med)]
                st = sol.stats
                counters = {
                    "queries": st.get("queries", 0),
                    "deletions": st.get("deletions", 0),
                    "moved_up": st.get("moved_up", 0),
                    "cover_bicliques": st.get("cover_bicliques", 0),
                    "cover_sum_sizes": st.get("cover_sum_x", 0) + st.get("cover_sum_y", 0),
                    "cover_sum_x": st.get("cover_sum_x", 0),
                }
                for phase in PHASES:
                    if phase not in phases:
                        continue
                    rows.append(dict(solver=solver, kind=kind, n=int(n), seed=int(seed),
                                     phase=phase, wall_time=float(phases[phase]), **counters))
    rows.sort(key=lambda r: (r["solver"], r["kind"], r["n"], r["seed"], PHASES.index(r["phase"])))
    if out is not None:
        write_csv(rows, out)
    return rows


def write_csv(rows, out):
    def emit(fh):
        w = csv.DictWriter(fh, fieldnames=FIELDS, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: (f"{r[k]:.6f}" if k == "wall_time" else r[k]) for k in FIELDS})

    if hasattr(out, "write"):
        emit(out)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            emit(fh)


def read_csv(src):
    if hasattr(src, "read"):
        text = src.read()
    elif isinstance(src, str) and "\n" in src:
        text = src
    else:
        with open(src, encoding="utf-8") as fh:
            text = fh.read()
    rows = []
    for r in csv.DictReader(io.StringIO(text)):
        r["n"] = int(r["n"])
        r["wall_time"] = float(r["wall_time"])
        rows.append(r)
    return rows


def fit_slope(rows, phase="total", solver=None, kind=None):
    """Least-squares slope of log(time) against log(n).

    ``rows`` is a list of row dicts, a CSV path or CSV text.  Times at equal
    n (several seeds) are combined by their median first.
    """
    if not isinstance(rows, list):
        rows = read_csv(rows)
    by_n = {}
    for r in rows:
        if r.get("phase", "total") != phase:
            continue
        if solver is not None and r.get("solver") != solver:
            continue
        if kind is not None and r.get("kind") != kind:
            continue
        by_n.setdefault(int(r["n"]), []).append(float(r["wall_time"]))
    if len(by_n) < 4:
        raise ValueError(f"need at least 4 distinct n values, got {len(by_n)}")
    ns = sorted(by_n)
    ts = [statistics.median(by_n[n]) for n in ns]
    if min(ts) <= 0 or not all(math.isfinite(t) for t in ts):
        raise ValueError("times must be positive and finite")
    slope, _ = np.polyfit(np.log(ns), np.log(ts), 1)
    return float(slope)


def counter_audit(rows):
    """Rows whose counters exceed the cover bounds (expected none).

    Queries may not exceed the X-side total plus n, deletions the Y-side total.
    """
    bad = []
    for r in rows:
        if r.get("solver") != "embst" or r.get("phase") != "total":
            continue
        q, d, n = int(r["queries"]), int(r["deletions"]), int(r["n"])
        sum_x = int(r["cover_sum_x"])
        sum_y = int(r["cover_sum_sizes"]) - sum_x
        if q > sum_x + n or d > sum_y:
            bad.append(r)
    return bad
