"""Minimum bottleneck spanning trees of linearly moving points.

Typical use::

    from embst import generate, solve
    pts = generate("uniform", 500, seed=1)
    sol = solve(pts)
    sol.bottleneck, len(sol.tree.edges)
"""
from .baseline import baseline_solve, brute_lower_envelope, linear_scan_udre
from .cover import BicliqueCover, build_cover, count_pairs_within, verify_cover
from .decision import DecisionOutcome, connectivity_oracle, decide
from .envelope import EnvelopeTree, build_envelope_tree, clip_arc, envelope_delete, envelope_query
from .geometry import (Edge, MovingPoint, Point, SpanningTree, dist, pair_max_dist, position,
                       tree_bottleneck)
from .grid import Grid, build_grid, locate
from .io import ResultRecord, generate, parse_instance, write_instance
from .optimizer import Solution, distance_select, search_endpoint_set, solve
from .udre import UdreStructure, udre_build, udre_delete, udre_query

__all__ = [
    "BicliqueCover", "DecisionOutcome", "Edge", "EnvelopeTree", "Grid", "MovingPoint", "Point",
    "ResultRecord", "Solution", "SpanningTree", "UdreStructure", "baseline_solve",
    "brute_lower_envelope", "build_cover", "build_envelope_tree", "build_grid", "clip_arc",
    "connectivity_oracle", "count_pairs_within", "decide", "distance_select", "dist",
    "envelope_delete", "envelope_query", "generate", "linear_scan_udre", "locate",
    "pair_max_dist", "parse_instance", "position", "search_endpoint_set", "solve",
    "tree_bottleneck", "udre_build", "udre_delete", "udre_query", "verify_cover",
    "write_instance",
]
