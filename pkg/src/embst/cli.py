"""Command line entry point: ``embst gen | decide | solve | verify | bench``.

Exit status: 0 on success, 1 on a usage error, 2 when verify finds a
disagreement, 3 on an I/O or instance-format error.
"""
import argparse
import sys

from .baseline import baseline_solve
from .bench import fit_slope, run_scaling, write_csv
from .decision import decide
from .io import KINDS, InstanceError, ResultRecord, generate, parse_instance, write_instance, \
    write_svg, format_instance
from .optimizer import solve

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _record_text(sol, n):
    stats = {k: v for k, v in sol.stats.items() if k != "timings"}
    rec = ResultRecord(sol.bottleneck, [(e.a, e.b) for e in sol.tree.edges], stats, n)
    return rec.to_json() + "\n"


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_gen(a):
    pts = generate(a.kind, a.n, a.seed)
    if a.out:
        write_instance(a.out, pts)
    else:
        sys.stdout.write(format_instance(pts))
    return EXIT_OK


def cmd_decide(a):
    pts = parse_instance(a.instance)
    if a.lam is None or not a.lam > 0:
        raise UsageError("decide needs --lambda with a positive value")
    res = decide(pts, a.lam)
    lines = ["connected" if res.connected else "not connected"]
    if res.connected:
        lines += [f"{e.a} {e.b} {e.weight!r}" for e in res.tree.edges]
    _emit("\n".join(lines) + "\n", a.out)
    return EXIT_OK


def cmd_solve(a):
    pts = parse_instance(a.instance)
    sol = solve(pts, bracket=not a.no_bracket)
    _emit(_record_text(sol, len(pts)), a.out)
    if a.snapshot_t is not None:
        if not 0.0 <= a.snapshot_t <= 1.0:
            raise UsageError("--snapshot-t must lie in [0, 1]")
        svg = a.svg or (str(a.out or a.instance) + f".t{a.snapshot_t:g}.svg")
        write_svg(svg, pts, sol.tree, a.snapshot_t)
    return EXIT_OK


def cmd_verify(a):
    if a.instance:
        cases = [(a.instance, parse_instance(a.instance))]
    else:
        cases = [(f"{a.kind} n={a.n} seed={s}", generate(a.kind, a.n, s))
                 for s in range(a.seed, a.seed + a.count)]
    bad = 0
    for name, pts in cases:
        fast = solve(pts).bottleneck
        ref = baseline_solve(pts).bottleneck
        ok = fast == ref
        bad += not ok
        print(f"{'agree' if ok else 'MISMATCH'} {name}: solve={fast!r} baseline={ref!r}")
    print(f"{len(cases) - bad}/{len(cases)} agree")
    return EXIT_OK if bad == 0 else EXIT_MISMATCH


def cmd_bench(a):
    rows = run_scaling(a.kind, a.n, a.seed, reps=a.reps, solver=a.solver)
    if a.out:
        write_csv(rows, a.out)
    else:
        write_csv(rows, sys.stdout)
    if len(set(a.n)) >= 4:
        for kind in a.kind:
            s = fit_slope(rows, solver=a.solver, kind=kind)
            print(f"# {a.solver} {kind}: log-log slope {s:.3f}", file=sys.stderr)
    return EXIT_OK


def build_parser():
    p = _Parser(prog="embst", description="Minimum bottleneck moving spanning trees.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    g = sub.add_parser("gen", help="write a synthetic instance")
    g.add_argument("--kind", choices=KINDS, default="uniform")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    d = sub.add_parser("decide", help="is there a tree with bottleneck <= lambda?")
    d.add_argument("instance")
    d.add_argument("--lambda", dest="lam", type=float, required=True)
    d.add_argument("--out")
    d.set_defaults(func=cmd_decide)

    s = sub.add_parser("solve", help="compute the optimal tree")
    s.add_argument("instance")
    s.add_argument("--out")
    s.add_argument("--snapshot-t", type=float)
    s.add_argument("--svg", help="SVG path for --snapshot-t")
    s.add_argument("--no-bracket", action="store_true",
                   help="search the full (0, inf] rank range")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="compare solve with the quadratic baseline")
    v.add_argument("instance", nargs="?")
    v.add_argument("--kind", choices=KINDS, default="uniform")
    v.add_argument("--n", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--count", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="scaling CSV")
    b.add_argument("--kind", choices=KINDS, nargs="+", default=["uniform"])
    b.add_argument("--n", type=int, nargs="+", default=[1024, 2048, 4096, 8192])
    b.add_argument("--seed", type=int, nargs="+", default=[0])
    b.add_argument("--reps", type=int, default=3)
    b.add_argument("--solver", choices=("embst", "baseline"), default="embst")
    b.add_argument("--out")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except (InstanceError, OSError) as e:
        print(f"embst: {e}", file=sys.stderr)
        return EXIT_IO
    except ValueError as e:
        print(f"embst: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
