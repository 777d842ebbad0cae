"""Instance files, generators, result records and SVG snapshots.

Instance format: a header line holding n, then n lines ``id x0 y0 x1 y1``
with ids 0..n-1 in order.  Coordinates are written with 17 significant
digits so a write/parse round trip reproduces every double exactly.
"""
import json
import math

import numpy as np

from .geometry import MovingPoint, Point, as_arrays, position

KINDS = ("uniform", "clustered", "two_cluster_adversarial", "static", "collinear")


class InstanceError(ValueError):
    """Malformed instance file; the message names the offending line."""


def _fmt(x):
    return format(float(x), ".17g")


def parse_instance(path):
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    return parse_instance_text(lines, str(path))


def parse_instance_text(lines, name="<string>"):
    if isinstance(lines, str):
        lines = lines.splitlines()
    body = [(k + 1, ln) for k, ln in enumerate(lines) if ln.strip()]
    if not body:
        raise InstanceError(f"{name}: empty file, expected a header line with n")
    lineno, head = body[0]
    try:
        n = int(head.strip())
    except ValueError:
        raise InstanceError(f"{name}:{lineno}: header must be an integer n, got {head!r}") from None
    if n < 0:
        raise InstanceError(f"{name}:{lineno}: n must be nonnegative")
    rows = body[1:]
    if len(rows) != n:
        raise InstanceError(f"{name}: header says {n} points but {len(rows)} lines follow")
    seen = set()
    points = []
    for k, (lineno, ln) in enumerate(rows):
        parts = ln.split()
        if len(parts) != 5:
            raise InstanceError(f"{name}:{lineno}: expected 'id x0 y0 x1 y1', got {ln!r}")
        try:
            pid = int(parts[0])
            vals = [float(v) for v in parts[1:]]
        except ValueError:
            raise InstanceError(f"{name}:{lineno}: cannot parse {ln!r}") from None
        if not all(math.isfinite(v) for v in vals):
            raise InstanceError(f"{name}:{lineno}: non-finite coordinate")
        if pid in seen:
            raise InstanceError(f"{name}:{lineno}: duplicate id {pid}")
        if pid != k:
            raise InstanceError(f"{name}:{lineno}: expected id {k}, got {pid}")
        seen.add(pid)
        points.append(MovingPoint(pid, Point(vals[0], vals[1]), Point(vals[2], vals[3])))
    return points


def format_instance(points):
    out = [str(len(points))]
    for mp in points:
        out.append(" ".join([str(mp.id), _fmt(mp.p0[0]), _fmt(mp.p0[1]),
                             _fmt(mp.p1[0]), _fmt(mp.p1[1])]))
    return "\n".join(out) + "\n"


def write_instance(path, points):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_instance(points))


def generate(kind, n, seed=0):
    """Deterministic synthetic instance as a list of MovingPoint."""
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; choose from {', '.join(KINDS)}")
    n = int(n)
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    if kind == "uniform":
        p0 = rng.random((n, 2))
        p1 = rng.random((n, 2))
    elif kind == "static":
        p0 = rng.random((n, 2))
        p1 = p0.copy()
    elif kind == "collinear":
        p0 = np.column_stack([np.arange(n, dtype=float), np.zeros(n)])
        p1 = p0.copy()
    elif kind == "clustered":
        k = max(1, int(round(math.sqrt(n) / 2)))
        c0 = rng.random((k, 2))
        c1 = rng.random((k, 2))
        lab = rng.integers(0, k, n)
        p0 = c0[lab] + rng.normal(0.0, 0.02, (n, 2))
        p1 = c1[lab] + rng.normal(0.0, 0.02, (n, 2))
    else:
        # Two tight disks of radius r whose centres sit 4r apart; the groups
        # drift only slightly, so at the optimum nearly every cross pair is
        # a candidate and the cell-pair load is quadratic.
        r = 0.05
        side = rng.integers(0, 2, n)
        ang = rng.random(n) * 2 * math.pi
        rad = r * np.sqrt(rng.random(n))
        cx = np.where(side == 0, 0.5 - 2 * r, 0.5 + 2 * r)
        p0 = np.column_stack([cx + rad * np.cos(ang), 0.5 + rad * np.sin(ang)])
        p1 = p0 + rng.normal(0.0, r / 10, (n, 2))
    return [MovingPoint(i, Point(float(a[0]), float(a[1])), Point(float(b[0]), float(b[1])))
            for i, (a, b) in enumerate(zip(p0, p1))]


class ResultRecord:
    """Machine-readable solve result; serializes with a fixed key order."""

    def __init__(self, bottleneck, edges, stats=None, n=None):
        self.bottleneck = float(bottleneck)
        self.edges = [(int(a), int(b)) for a, b in edges]
        self.stats = dict(stats or {})
        self.n = len(self.edges) + 1 if n is None else int(n)

    @classmethod
    def from_solution(cls, sol, n):
        return cls(sol.bottleneck, [(e.a, e.b) for e in sol.tree.edges], sol.stats, n)

    def to_dict(self):
        return {
            "n": self.n,
            "bottleneck": self.bottleneck,
            "edges": [list(e) for e in self.edges],
            "stats": _plain(self.stats),
        }

    def to_json(self):
        """One line per top-level key, keys in a fixed order, stats sorted."""
        d = self.to_dict()
        d["stats"] = dict(sorted(d["stats"].items()))
        body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in d.items())
        return "{\n" + body + "\n}"

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        return cls(d["bottleneck"], d["edges"], d.get("stats"), d.get("n"))


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj


def svg_snapshot(points, tree, t, size=600, margin=20):
    """SVG of the points at time t with tree edges; the heaviest edge in red."""
    p0, p1 = as_arrays(points)
    xy = (1.0 - t) * p0 + t * p1
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must lie in [0, 1]")
    lo = xy.min(axis=0) if len(xy) else np.zeros(2)
    span = float(max((xy.max(axis=0) - lo).max(), 1e-12)) if len(xy) else 1.0
    scale = (size - 2 * margin) / span

    def sx(v):
        return margin + (v[0] - lo[0]) * scale, size - margin - (v[1] - lo[1]) * scale

    heavy = max(tree.edges, key=lambda e: e.weight) if tree.edges else None
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
             f'viewBox="0 0 {size} {size}">',
             f'<rect width="{size}" height="{size}" fill="white"/>',
             f'<text x="{margin}" y="{margin - 6}" font-size="12">t = {t:g}</text>']
    for e in tree.edges:
        (x1, y1), (x2, y2) = sx(xy[e.a]), sx(xy[e.b])
        colour, width = ("#d62728", 2.5) if e is heavy else ("#555555", 1.0)
        parts.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                     f'stroke="{colour}" stroke-width="{width}"/>')
    for v in xy:
        x, y = sx(v)
        parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="2" fill="#1f77b4"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_svg(path, points, tree, t):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(svg_snapshot(points, tree, t))


def positions_at(points, t):
    """Locations of all points at time t, as Point tuples."""
    return [position(mp, t) for mp in points]
