"""Command-line entry point exposing every operation as a subcommand.

Output is machine readable: JSON objects (sorted keys) or CSV tables with a
header row, written to stdout or to ``--output``.  Identical invocations
produce byte-identical output.  Exit codes: 0 success, 1 operation error,
2 computed fine but a verification did not pass, 64 bad usage.
"""

import argparse
import csv
import io
import json
import os
import sys

from . import __version__
from .estimate import MeasureEstimate
from .extremal import GridPoset, layer_construct, layer_size, max_antichain, middle_layer_index, wn_construct
from .gridcover import covering_bound, grid_cover
from .lattice import Order, PointSet, classify, load_point_set
from .partition import (
    exhaustive_gap_scan,
    greedy_partition,
    projection_gap,
    random_gap_scan,
)
from .shear import ShearParams, shear_points
from .surfaces import (
    Hyperplane,
    LinearGraph,
    LpSphere,
    SingularStaircase,
    TabulatedMonotone,
    parse_surface_descriptor,
    projection_measure,
    skew_measures_2d,
    slab_volume,
    staircase_polyline,
    surface_measure,
    verify_projection_inequality,
)

USAGE_EXIT = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"bad integer list {text!r}") from exc


def _parse_float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"bad number list {text!r}") from exc


def _surface_from_args(args) -> object:
    """Build a surface from --surface: a family name plus flags, or a descriptor path.

    Invalid inline parameters are usage errors; a broken descriptor file is
    a data problem and surfaces as an operation error instead.
    """
    name = args.surface
    try:
        if name == "hyperplane":
            if args.n is None:
                raise UsageError("hyperplane needs --n")
            return Hyperplane(n=args.n)
        if name == "lpsphere":
            if args.n is None or args.p is None:
                raise UsageError("lpsphere needs --n and --p")
            return LpSphere(n=args.n, p=args.p)
        if name == "linear":
            if not args.gradient:
                raise UsageError("linear needs --gradient")
            gradient = tuple(_parse_float_list(args.gradient))
            boxes = []
            for spec in args.box or []:
                box = []
                for axis in spec.split(","):
                    try:
                        lo, hi = axis.split(":")
                        box.append((float(lo), float(hi)))
                    except ValueError:
                        raise UsageError(f"bad box axis {axis!r}") from None
                boxes.append(tuple(box))
            return LinearGraph(
                gradient=gradient, base=tuple(boxes) or None, offset=args.offset
            )
        if name == "tabulated":
            if args.n is None or not args.sample:
                raise UsageError("tabulated needs --n and at least one --sample")
            samples = []
            for spec in args.sample:
                nums = _parse_float_list(spec)
                if len(nums) != args.n:
                    raise UsageError(
                        f"sample {spec!r} needs {args.n - 1} coordinates and a value"
                    )
                samples.append((tuple(nums[:-1]), nums[-1]))
            return TabulatedMonotone(dim=args.n, samples=tuple(samples))
        if name == "staircase":
            if args.depth is None:
                raise UsageError("staircase needs --depth")
            return SingularStaircase(depth=args.depth)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    # otherwise treat as a descriptor file path
    try:
        with open(name, "r", encoding="utf-8") as fh:
            return parse_surface_descriptor(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read surface descriptor {name!r}: {exc}") from exc


def _estimate_json(est: MeasureEstimate) -> dict:
    return {
        "value": est.value,
        "errorBound": est.error_bound,
        "method": est.method,
        "upperBoundOnly": est.upper_bound_only,
    }


def _emit(args, payload, rows=None, header=None) -> None:
    """Write JSON (default) or CSV when rows are available and csv was requested."""
    if args.format == "csv":
        if rows is None:
            raise UsageError("csv output is not available for this subcommand")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        text = buf.getvalue()
    else:
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _points_arg(args) -> PointSet:
    return load_point_set(args.points)


# ---------------------------------------------------------------------------
# subcommand handlers: return (payload, rows, header, ok)


def _cmd_check(args):
    ps = _points_arg(args)
    cls = classify(ps)
    payload = {
        "dim": ps.dim,
        "size": len(ps),
        "is_antichain": cls.is_antichain,
        "is_weak_antichain": cls.is_weak_antichain,
    }
    ok = True
    if args.expect == "antichain":
        ok = cls.is_antichain
    elif args.expect == "weak-antichain":
        ok = cls.is_weak_antichain
    return payload, None, None, ok


def _cmd_partition(args):
    ps = _points_arg(args)
    cert = greedy_partition(ps)
    cert.validate()
    payload = {
        "dim": ps.dim,
        "size": len(ps),
        "part_sizes": [len(p) for p in cert.parts],
        "projection_sizes_per_part": list(cert.per_part_projection_sizes),
        "parts": [[list(pt) for pt in part] for part in cert.parts],
    }
    return payload, None, None, True


def _cmd_gap(args):
    ps = _points_arg(args)
    report = projection_gap(ps)
    payload = {
        "size": report.set_size,
        "projections": list(report.projection_sizes),
        "gap": report.gap,
    }
    ok = True if args.min_gap is None else report.gap >= args.min_gap
    return payload, None, None, ok


def _cmd_gap_scan(args):
    sizes = _parse_int_list(args.size_list) if args.size_list else [args.size]
    if sizes == [None]:
        raise UsageError("gap-scan needs --size or --size-list")
    results = []
    for size in sizes:
        if args.sample:
            res = random_gap_scan(args.n, args.k, size, args.sample, seed=args.seed)
        else:
            res = exhaustive_gap_scan(args.n, args.k, size, budget=args.budget)
        results.append(res)
    reference = args.n - 1
    payload = {
        "n": args.n,
        "k": args.k,
        "mode": "random" if args.sample else "exhaustive",
        "reference_gap": reference,
        "rows": [
            {
                "size": r.size,
                "min_gap": r.min_gap,
                "weak_count": r.weak_count,
                "witness": [list(p) for p in r.witness] if r.witness is not None else None,
            }
            for r in results
        ],
    }
    header = ["size", "min_gap", "reference_gap", "weak_count", "witness"]
    rows = [
        [
            r.size,
            "" if r.min_gap is None else r.min_gap,
            reference,
            r.weak_count,
            "" if r.witness is None else ";".join(",".join(map(str, p)) for p in r.witness),
        ]
        for r in results
    ]
    ok = all(r.min_gap is None or r.min_gap >= reference for r in results)
    return payload, rows, header, ok


def _cmd_width(args):
    order = Order.STRONG if args.order == "weak" else Order.STRICT
    ns = _parse_int_list(args.n_list) if args.n_list else [args.n]
    ms = _parse_int_list(args.m_list) if args.m_list else [args.m]
    if None in ns or None in ms:
        raise UsageError("width needs --n/--m or --n-list/--m-list")
    results = []
    for n in ns:
        for m in ms:
            res = max_antichain(GridPoset(n, m, order), budget=args.budget)
            results.append((n, m, res))
    if len(results) == 1:
        n, m, result = results[0]
        payload = {
            "n": n,
            "m": m,
            "order": args.order,
            "width": result.width,
            "method": result.method,
            "witness": [list(p) for p in result.witness],
        }
    else:
        payload = {
            "order": args.order,
            "rows": [
                {"n": n, "m": m, "width": r.width, "method": r.method}
                for n, m, r in results
            ],
        }
    header = ["n", "m", "order", "width", "method"]
    rows = [[n, m, args.order, r.width, r.method] for n, m, r in results]
    return payload, rows, header, True


def _cmd_layer(args):
    ell = middle_layer_index(args.n, args.m) if args.ell is None else args.ell
    points = layer_construct(args.n, args.m, ell)
    payload = {
        "n": args.n,
        "m": args.m,
        "ell": ell,
        "size": layer_size(args.n, args.m, ell),
        "points": [list(p) for p in points],
    }
    return payload, None, None, True


def _cmd_wn(args):
    points = wn_construct(args.n, args.m)
    payload = {
        "n": args.n,
        "m": args.m,
        "size": len(points),
        "points": [list(p) for p in points],
    }
    return payload, None, None, True


def _cover_target(args):
    if args.points:
        ps = load_point_set(args.points)
        k = max((max(p) for p in ps), default=0) + 1
        from .gridcover import PointCloud

        return PointCloud(ps.dim, tuple(tuple(c / k for c in p) for p in ps))
    if args.surface:
        return _surface_from_args(args)
    raise UsageError("cover needs --points or --surface")


def _cmd_cover(args):
    target = _cover_target(args)
    ms = _parse_int_list(args.m_list) if args.m_list else [args.m]
    if ms == [None]:
        raise UsageError("cover needs --m or --m-list")
    entries = []
    for m in ms:
        cov = grid_cover(target, m, budget=args.budget)
        bound = covering_bound(cov).value if cov.dim >= 2 else None
        entries.append(
            {
                "m": m,
                "count": len(cov),
                "ratio": len(cov) / m**cov.dim,
                "bound": bound,
                "exact": cov.exact,
            }
        )
    payload = entries[0] if len(entries) == 1 else {"curve": entries}
    header = ["m", "count", "ratio", "bound", "exact"]
    rows = [
        [e["m"], e["count"], e["ratio"], "" if e["bound"] is None else e["bound"], e["exact"]]
        for e in entries
    ]
    return payload, rows, header, True


def _cmd_measure(args):
    surface = _surface_from_args(args)
    if args.axis is not None:
        est = projection_measure(surface, args.axis, args.tol)
    else:
        est = surface_measure(surface, args.tol)
    return _estimate_json(est), None, None, True


def _cmd_verify(args):
    surface = _surface_from_args(args)
    report = verify_projection_inequality(surface, args.tol)
    payload = {
        "dim": report.dim,
        "surface": _estimate_json(report.surface),
        "projections": [_estimate_json(p) for p in report.projections],
        "right_total": report.right_total,
        "tolerance": report.tolerance,
        "passes": report.passes,
        "left_within_dim_bound": report.left_within_dim_bound,
        "right_within_dim_bound": report.right_within_dim_bound,
    }
    return payload, None, None, report.passes


def _cmd_skew2d(args):
    surface = _surface_from_args(args)
    report = skew_measures_2d(surface, args.tol)
    payload = {
        "surface": _estimate_json(report.surface),
        "delta1": _estimate_json(report.delta_parts[0]),
        "delta2": _estimate_json(report.delta_parts[1]),
        "delta_total": report.delta_total,
        "tolerance": report.tolerance,
        "passes": report.passes,
    }
    return payload, None, None, report.passes


def _cmd_shear(args):
    ps = _points_arg(args)
    scale = args.scale
    if scale is None:
        scale = max((max(p) for p in ps), default=0) + 1
    try:
        params = ShearParams(n=ps.dim, epsilon=args.epsilon)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    unit = [tuple(c / scale for c in p) for p in ps]
    image = shear_points(unit, params)
    cls = classify(image) if image else None
    payload = {
        "n": ps.dim,
        "epsilon": args.epsilon,
        "scale": scale,
        "inverse_lipschitz": params.inverse_lipschitz,
        "points": [list(p) for p in image],
        "is_antichain": cls.is_antichain if cls else True,
    }
    return payload, None, None, True


def _cmd_slab(args):
    value = slab_volume(args.n, args.c)
    return {"n": args.n, "c": args.c, "volume": value}, None, None, True


def _cmd_staircase(args):
    verts = staircase_polyline(args.depth)
    est = surface_measure(SingularStaircase(depth=args.depth))
    payload = {"depth": args.depth, "length": est.value, "vertices": len(verts)}
    if args.vertices:
        payload["polyline"] = [list(v) for v in verts]
    header = ["x", "y"]
    rows = [[x, y] for x, y in verts]
    return payload, rows, header, True


def _cmd_p_sweep(args):
    ps = _parse_float_list(args.p_list)
    if not ps:
        raise UsageError("p-sweep needs a non-empty --p-list")
    entries = []
    for p in ps:
        try:
            sphere = LpSphere(n=args.n, p=p)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        est = surface_measure(sphere, args.tol)
        entries.append({"p": p, "value": est.value, "errorBound": est.error_bound})
    payload = {"n": args.n, "rows": entries}
    header = ["p", "value", "error_bound"]
    rows = [[e["p"], e["value"], e["errorBound"]] for e in entries]
    return payload, rows, header, True


# ---------------------------------------------------------------------------
# parser


def build_parser() -> _Parser:
    parser = _Parser(prog="antichains", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")

    def common(p, fmt_default="json"):
        p.add_argument("--output", help="write to this path instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default=fmt_default)
        p.add_argument(
            "--threads",
            type=int,
            default=int(os.environ.get("ANTICHAINS_THREADS", "1")),
            help="worker cap (current operations run single-threaded)",
        )

    p = sub.add_parser("check", help="classify a point set")
    p.add_argument("--points", required=True)
    p.add_argument("--expect", choices=("antichain", "weak-antichain"))
    common(p)
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("partition", help="greedy partition certificate of a weak antichain")
    p.add_argument("--points", required=True)
    common(p)
    p.set_defaults(handler=_cmd_partition)

    p = sub.add_parser("gap", help="projection sizes and gap of a point set")
    p.add_argument("--points", required=True)
    p.add_argument("--min-gap", type=int, dest="min_gap")
    common(p)
    p.set_defaults(handler=_cmd_gap)

    p = sub.add_parser("gap-scan", help="minimum gap over weak antichains in a box")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--size", type=int)
    p.add_argument("--size-list", dest="size_list")
    p.add_argument("--budget", type=int, default=2_000_000)
    p.add_argument("--sample", type=int, help="sample this many random weak antichains instead")
    p.add_argument("--seed", type=int, default=0)
    common(p, fmt_default="csv")
    p.set_defaults(handler=_cmd_gap_scan)

    p = sub.add_parser("width", help="maximum antichain of a grid poset")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--n-list", dest="n_list", help="sweep dimensions (CSV output)")
    p.add_argument("--m-list", dest="m_list", help="sweep chain lengths (CSV output)")
    p.add_argument("--order", choices=("antichain", "weak"), default="antichain")
    p.add_argument("--budget", type=int, default=4096)
    common(p)
    p.set_defaults(handler=_cmd_width)

    p = sub.add_parser("layer", help="a constant-coordinate-sum layer of the grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--ell", type=int)
    common(p)
    p.set_defaults(handler=_cmd_layer)

    p = sub.add_parser("wn", help="the zero-coordinate maximum weak antichain of the grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    common(p)
    p.set_defaults(handler=_cmd_wn)

    p = sub.add_parser("cover", help="grid cells meeting a point set or surface")
    p.add_argument("--points")
    p.add_argument("--surface")
    p.add_argument("--m", type=int)
    p.add_argument("--m-list", dest="m_list")
    p.add_argument("--budget", type=int, default=2_000_000)
    _surface_flags(p)
    common(p)
    p.set_defaults(handler=_cmd_cover)

    p = sub.add_parser("measure", help="surface or projection measure of a surface")
    p.add_argument("--surface", required=True)
    p.add_argument("--axis", type=int, help="projection axis; omit for the surface measure")
    p.add_argument("--tol", type=float)
    _surface_flags(p)
    common(p)
    p.set_defaults(handler=_cmd_measure)

    p = sub.add_parser("verify", help="check the projection inequality for a surface")
    p.add_argument("--surface", required=True)
    p.add_argument("--tol", type=float)
    _surface_flags(p)
    common(p)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("skew2d", help="skewed-projection measures in the plane")
    p.add_argument("--surface", required=True)
    p.add_argument("--tol", type=float)
    _surface_flags(p)
    common(p)
    p.set_defaults(handler=_cmd_skew2d)

    p = sub.add_parser("shear", help="shear a point set into an antichain")
    p.add_argument("--points", required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--scale", type=int, help="divide coordinates by this (default: max+1)")
    common(p)
    p.set_defaults(handler=_cmd_shear)

    p = sub.add_parser("slab", help="volume of the centred coordinate-sum slab")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=float, required=True)
    common(p)
    p.set_defaults(handler=_cmd_slab)

    p = sub.add_parser("staircase", help="singular staircase approximation and its length")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--vertices", action="store_true", help="include the polyline in JSON")
    common(p)
    p.set_defaults(handler=_cmd_staircase)

    p = sub.add_parser("p-sweep", help="sphere measures for a list of p values")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--p-list", dest="p_list", required=True)
    p.add_argument("--tol", type=float)
    common(p, fmt_default="csv")
    p.set_defaults(handler=_cmd_p_sweep)

    return parser


def _surface_flags(p) -> None:
    p.add_argument("--n", type=int, help="surface dimension (hyperplane/lpsphere/tabulated)")
    p.add_argument("--p", type=float, help="sphere exponent")
    p.add_argument("--gradient", help="comma-separated gradient of a linear graph")
    p.add_argument("--offset", type=float, default=0.0, help="linear graph offset")
    p.add_argument(
        "--box", action="append", help="base box lo:hi per axis, comma separated; repeatable"
    )
    p.add_argument(
        "--sample", action="append", help="tabulated sample: coordinates then value"
    )
    p.add_argument("--depth", type=int, help="staircase depth")


def _validate_preconditions(args) -> None:
    """Range checks before dispatch, so bad parameters are usage errors."""
    if getattr(args, "threads", 1) < 1:
        raise UsageError("--threads must be >= 1")
    if getattr(args, "tol", None) is not None and args.tol <= 0:
        raise UsageError("--tol must be positive")
    if args.command == "slab" and not 0 <= args.c <= args.n:
        raise UsageError(f"--c must lie in [0, {args.n}]")
    if args.command == "shear":
        if args.epsilon <= 0:
            raise UsageError("--epsilon must be positive")
        if args.scale is not None and args.scale < 1:
            raise UsageError("--scale must be >= 1")
    if args.command == "staircase" and not 0 <= args.depth <= 20:
        raise UsageError("--depth must lie in 0..20")
    if args.command == "measure" and args.axis is not None and args.axis < 1:
        raise UsageError("--axis must be >= 1")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("a subcommand is required")
        _validate_preconditions(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return USAGE_EXIT
    try:
        payload, rows, header, ok = args.handler(args)
        _emit(args, payload, rows, header)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0 if ok else 2


if __name__ == "__main__":
    sys.exit(main())
