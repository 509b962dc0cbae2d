"""Command-line experiment runner.

Subcommands generate node rows, tabulate operator norms, audit separation
and equidistribution, build field models with level-curve exports, and run
the one-shot report pipeline.  All outputs are deterministic for identical
configs and seeds; floats are serialized with 17 significant digits.

Exit codes: 0 success, 2 config error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .conformal import discrete_green, exact_green, green_to_json, level_curve
from .geometry import build_mesh, spec_from_json, spec_to_json
from .kernels import backend as kernel_backend
from .lebesgue import DELTA_LADDER, lebesgue_constant, min_s_root
from .nodes import make_scheme
from .potential import (
    counting_measure,
    equilibrium_for,
    holder_statistic,
    kolmogorov_distance,
    spacing_statistic,
)
from .separation import separation_ratios
from .svgplot import line_plot_svg

REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "leja-lab report",
    "type": "object",
    "required": ["schema", "version", "config", "rows"],
    "properties": {
        "schema": {"const": "leja-lab-report/1"},
        "version": {"type": "string"},
        "kernel_backend": {"type": "string"},
        "config": {"type": "object"},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["n", "lambda", "lambda_root", "min_ratio", "kolmogorov"],
                "properties": {
                    "n": {"type": "integer"},
                    "lambda": {"type": "number"},
                    "lambda_root": {"type": "number"},
                    "lambda_argmax": {
                        "type": "array", "items": {"type": "number"},
                        "minItems": 2, "maxItems": 2,
                    },
                    "lambda_uncertain": {"type": "boolean"},
                    "min_ratio": {"type": "number"},
                    "separation_pair": {
                        "type": "array", "items": {"type": "integer"},
                        "minItems": 2, "maxItems": 2,
                    },
                    "kolmogorov": {"type": "number"},
                    "spacing_stat": {"type": ["number", "null"]},
                    "holder_stat": {"type": ["number", "null"]},
                    "s_roots": {"type": "object"},
                },
            },
        },
    },
}


def main(argv=None) -> int:
    _apply_thread_cap()
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
        return 0
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        _emit_error(exc, 2)
        return 2
    except (RuntimeError, ArithmeticError) as exc:
        _emit_error(exc, 3)
        return 3


def main_exit():
    sys.exit(main())


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="leja-lab",
        description="Node schemes, operator norms, and level-curve audits "
        "on plane compact sets.",
    )
    p.add_argument("--version", action="version", version=f"leja-lab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add_set(sp):
        sp.add_argument("--set", required=True,
                        help="set spec: a JSON file path or an inline JSON object")

    sp = sub.add_parser("nodes", help="generate a node row and write nodes.json")
    add_set(sp)
    sp.add_argument("--kind", default="leja",
                    choices=["leja", "chebyshev", "equispaced", "random"])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--candidates", type=int, default=None,
                    help="candidate mesh size for greedy generation")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--start", default="auto",
                    help="'auto', a mesh index, or 'x,y' coordinates")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_nodes)

    sp = sub.add_parser("lebesgue", help="operator norm of a node row")
    sp.add_argument("--nodes", required=True, help="nodes.json from the nodes command")
    sp.add_argument("--mesh-factor", type=int, default=10)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_lebesgue)

    sp = sub.add_parser("separation", help="pairwise separation audit of a node row")
    sp.add_argument("--nodes", required=True)
    sp.add_argument("--green", default="exact", choices=["exact", "discrete"])
    sp.add_argument("--charges", type=int, default=256)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_separation)

    sp = sub.add_parser("equilibrium", help="equidistribution statistics of a row")
    sp.add_argument("--nodes", required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_equilibrium)

    sp = sub.add_parser("green", help="build a field model and export level curves")
    add_set(sp)
    sp.add_argument("--green", default="exact", choices=["exact", "discrete"])
    sp.add_argument("--charges", type=int, default=256)
    sp.add_argument("--delta-ladder", default="0.4,0.2,0.1,0.05")
    sp.add_argument("--resolution", type=int, default=512)
    sp.add_argument("--out", required=True, help="output directory")
    sp.set_defaults(func=cmd_green)

    sp = sub.add_parser("report", help="full pipeline: nodes, norms, audits, plots")
    add_set(sp)
    sp.add_argument("--kind", default="leja",
                    choices=["leja", "chebyshev", "equispaced", "random"])
    sp.add_argument("--ns", required=True, help="comma-separated row sizes, ascending")
    sp.add_argument("--mesh-factor", type=int, default=10)
    sp.add_argument("--delta-ladder", default=",".join(str(d) for d in DELTA_LADDER))
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--green", default="exact", choices=["exact", "discrete"])
    sp.add_argument("--charges", type=int, default=256)
    sp.add_argument("--candidates", type=int, default=None)
    sp.add_argument("--out", required=True, help="output directory")
    sp.set_defaults(func=cmd_report)

    return p


# ---------------------------------------------------------------------------
# subcommands

def cmd_nodes(args):
    spec = _load_spec(args.set)
    start = _parse_start(args.start)
    scheme = make_scheme(spec, args.kind, args.n, seed=args.seed,
                         candidates=args.candidates, start=start)
    row = scheme.row(args.n)
    doc = {
        "set": spec_to_json(spec),
        "kind": args.kind,
        "n": args.n,
        "candidates": scheme.candidates,
        "start": args.start,
        "seed": args.seed,
        "points": [[z.real, z.imag] for z in row],
    }
    _write_text(args.out, dumps17(doc))


def cmd_lebesgue(args):
    spec, row, meta = _load_nodes(args.nodes)
    res = lebesgue_constant(row, spec, args.mesh_factor)
    _write_csv(
        args.out,
        ["n", "lambda", "lambda_root", "argmax_re", "argmax_im", "mesh_size"],
        [[res.n, res.lam, res.lam_root, res.argmax.real, res.argmax.imag,
          res.mesh_size]],
    )


def cmd_separation(args):
    spec, row, meta = _load_nodes(args.nodes)
    green = _make_green(spec, args.green, args.charges)
    rep = separation_ratios(row, green, len(row))
    _write_csv(
        args.out,
        ["n", "min_ratio", "k", "j", "rule", "delta"],
        [[rep.n, rep.min_ratio, rep.k, rep.j, rep.rule, rep.delta]],
    )


def cmd_equilibrium(args):
    spec, row, meta = _load_nodes(args.nodes)
    model = equilibrium_for(spec)
    nu = counting_measure(spec, row)
    kol = kolmogorov_distance(nu, model)
    if spec.closed:
        # spacing/Holder statistics are defined on open arcs only
        spacing = None
        holder = None
    else:
        spacing = spacing_statistic(row, model, len(row))
        mesh = build_mesh(spec, 1024, "endpoint_clustered")
        holder = holder_statistic(model, mesh)
    _write_csv(
        args.out,
        ["n", "kolmogorov", "spacing_stat", "holder_stat"],
        [[len(row), kol, spacing, holder]],
    )


def cmd_green(args):
    spec = _load_spec(args.set)
    green = _make_green(spec, args.green, args.charges)
    deltas = _parse_floats(args.delta_ladder)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    _write_text(outdir / "green.json", dumps17(green_to_json(green)))
    for d in deltas:
        curve = level_curve(green, d, args.resolution)
        rows = [[z.real, z.imag] for z in curve.points]
        _write_csv(outdir / f"level_{d:g}.csv", ["re", "im"], rows)
        poly = {
            "delta": d,
            "closed": True,
            "tolerance": curve.tolerance,
            "points": rows,
        }
        _write_text(outdir / f"level_{d:g}.json", dumps17(poly))


def cmd_report(args):
    spec = _load_spec(args.set)
    ns = [int(s) for s in args.ns.split(",") if s.strip()]
    if not ns or ns != sorted(ns) or len(set(ns)) != len(ns):
        raise ValueError("--ns must be a strictly ascending list of row sizes")
    deltas = _parse_floats(args.delta_ladder)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)

    scheme = make_scheme(spec, args.kind, max(ns), seed=args.seed,
                         candidates=args.candidates)
    green = _make_green(spec, args.green, args.charges)
    eq_model = equilibrium_for(spec)
    holder = None
    if not spec.closed:
        holder = holder_statistic(eq_model, build_mesh(spec, 1024, "endpoint_clustered"))

    rows = []
    leb_rows, sep_rows, eq_rows, sprod_rows = [], [], [], []
    for n in ns:
        pts = scheme.row(n)
        res = lebesgue_constant(pts, spec, args.mesh_factor)
        sep = separation_ratios(pts, green, n)
        nu = counting_measure(spec, pts)
        kol = kolmogorov_distance(nu, eq_model)
        spacing = None if spec.closed else spacing_statistic(pts, eq_model, n)
        s_roots = {}
        for d in deltas:
            rep = min_s_root(pts, d)
            s_roots[f"{d:g}"] = rep.s_root
            sprod_rows.append([n, rep.k, d, rep.card, rep.log_value, rep.s_root])
        rows.append({
            "n": n,
            "lambda": res.lam,
            "lambda_root": res.lam_root,
            "lambda_argmax": [res.argmax.real, res.argmax.imag],
            "lambda_uncertain": res.uncertain,
            "min_ratio": sep.min_ratio,
            "separation_pair": [sep.k, sep.j],
            "kolmogorov": kol,
            "spacing_stat": spacing,
            "holder_stat": holder,
            "s_roots": s_roots,
        })
        leb_rows.append([n, res.lam, res.lam_root, res.argmax.real,
                         res.argmax.imag, res.mesh_size])
        sep_rows.append([n, sep.min_ratio, sep.k, sep.j, sep.rule, sep.delta])
        eq_rows.append([n, kol, spacing, holder])

    _write_csv(outdir / "leb.csv",
               ["n", "lambda", "lambda_root", "argmax_re", "argmax_im", "mesh_size"],
               leb_rows)
    _write_csv(outdir / "sep.csv",
               ["n", "min_ratio", "k", "j", "rule", "delta"], sep_rows)
    _write_csv(outdir / "eq.csv",
               ["n", "kolmogorov", "spacing_stat", "holder_stat"], eq_rows)
    _write_csv(outdir / "sprod.csv",
               ["n", "k", "delta", "card_A", "log_S", "s_root"], sprod_rows)

    report = {
        "schema": "leja-lab-report/1",
        "version": __version__,
        "kernel_backend": kernel_backend,
        "config": {
            "set": spec_to_json(spec),
            "kind": args.kind,
            "ns": ns,
            "mesh_factor": args.mesh_factor,
            "delta_ladder": deltas,
            "seed": args.seed,
            "green": args.green,
            "charges": args.charges,
            "candidates": scheme.candidates,
        },
        "rows": rows,
    }
    _write_text(outdir / "report.json", dumps17(report))

    xs = [float(n) for n in ns]
    _write_text(outdir / "lambda_root.svg", line_plot_svg(
        [("lambda_root", xs, [r["lambda_root"] for r in rows])],
        "Operator norm growth", "n", "lambda_n^(1/n)"))
    _write_text(outdir / "separation.svg", line_plot_svg(
        [("min_ratio", xs, [r["min_ratio"] for r in rows])],
        "Separation audit", "n", "min ratio"))
    _write_text(outdir / "kolmogorov.svg", line_plot_svg(
        [("kolmogorov", xs, [r["kolmogorov"] for r in rows])],
        "Equidistribution distance", "n", "sup CDF distance"))


# ---------------------------------------------------------------------------
# helpers

def _apply_thread_cap():
    cap = os.environ.get("LEJA_LAB_THREADS", "").strip()
    if cap:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, cap)


def _emit_error(exc, code: int):
    doc = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
    print(json.dumps(doc), file=sys.stderr)


def _load_spec(arg: str):
    text = arg
    if not arg.lstrip().startswith("{"):
        text = Path(arg).read_text()
    return spec_from_json(text)


def _parse_start(s: str):
    if s == "auto":
        return "auto"
    if "," in s:
        x, y = s.split(",")
        return complex(float(x), float(y))
    return int(s)


def _parse_floats(s: str):
    vals = [float(x) for x in s.split(",") if x.strip()]
    if not vals:
        raise ValueError("empty float list")
    return vals


def _load_nodes(path: str):
    doc = json.loads(Path(path).read_text())
    spec = spec_from_json(doc["set"])
    row = np.asarray([complex(p[0], p[1]) for p in doc["points"]])
    if len(row) != int(doc["n"]):
        raise ValueError("nodes.json point count does not match its 'n' field")
    return spec, row, doc


def _make_green(spec, method: str, charges: int):
    if method == "exact":
        if spec.kind in ("segment", "circle"):
            return exact_green(spec)
        return discrete_green(spec, charges)
    return discrete_green(spec, charges)


def _write_text(path, text: str):
    Path(path).write_text(text)


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_csv_cell(v) for v in row])


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return format(v, ".17g")
    return v


def dumps17(obj, indent: int = 2) -> str:
    """Deterministic JSON with floats at 17 significant digits."""
    return _emit(obj, indent, 0) + "\n"


def _emit(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    endpad = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f"{pad}{json.dumps(str(k))}: {_emit(v, indent, level + 1)}"
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + endpad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}{_emit(v, indent, level + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + endpad + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        if obj != obj or obj in (float("inf"), float("-inf")):
            raise ValueError("non-finite float in JSON output")
        return format(obj, ".17g")
    if isinstance(obj, (int, str)):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")
