"""slicereg command line.

Every subcommand reads function files (JSON, see RegularSeries.to_json_dict)
and writes JSON to stdout.  Exit codes: 0 success / all checks passed,
1 a checked contract was violated or a numeric error occurred, 2 usage or
input-file error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import analysis, series, spheres, zeros
from .config import Config
from .errors import FunctionFileError, SliceRegError
from .quaternion import ImaginaryUnit, Quaternion
from .series import RegularSeries

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _floats(text: str, n: int, what: str) -> list:
    parts = text.split(",")
    if len(parts) != n:
        raise UsageError(f"{what}: expected {n} comma-separated numbers, got {text!r}")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise UsageError(f"{what}: not a number in {text!r}") from None
    if not all(math.isfinite(v) for v in vals):
        raise UsageError(f"{what}: numbers must be finite")
    return vals


def _quat(text: str, what: str = "--at") -> Quaternion:
    return Quaternion(*_floats(text, 4, what))


def _unit(text: str, what: str) -> ImaginaryUnit:
    try:
        return ImaginaryUnit(*_floats(text, 3, what))
    except ValueError as exc:
        raise UsageError(f"{what}: {exc}") from None


def load_function(path: str) -> RegularSeries:
    try:
        text = Path(path).read_text() if path != "-" else sys.stdin.read()
    except OSError as exc:
        raise FunctionFileError(f"{path}: {exc.strerror}") from None
    try:
        return RegularSeries.loads(text)
    except FunctionFileError as exc:
        raise FunctionFileError(f"{path}: {exc}") from None


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, sort_keys=True, indent=2))
    out.write("\n")


def _quat_json(q: Quaternion) -> dict:
    return {"format_version": 1, "value": q.to_list()}


def _write_function(f: RegularSeries, args, out) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(f.dumps() + "\n")
    else:
        _emit(f.to_json_dict(), out)


def _parse_region(text: str):
    kind, _, rest = text.partition(":")
    if kind == "ball":
        w, x, y, z, r = _floats(rest, 5, "--region ball")
        if r <= 0:
            raise UsageError("--region: radius must be > 0")
        return analysis.Ball(Quaternion(w, x, y, z), r)
    if kind == "circular":
        x, y, r = _floats(rest, 3, "--region circular")
        if r <= 0:
            raise UsageError("--region: radius must be > 0")
        return analysis.Circular(spheres.Sphere2(x, y), r)
    raise UsageError(f"--region: expected ball:W,X,Y,Z,R or circular:X,Y,R, got {text!r}")


# -- subcommands -----------------------------------------------------------------

def cmd_config(args, cfg, out):
    _emit({"format_version": 1, "config": cfg.as_dict()}, out)
    return EXIT_OK


def cmd_eval(args, cfg, out):
    f = load_function(args.file)
    _emit(_quat_json(series.evaluate(f, _quat(args.at))), out)
    return EXIT_OK


def cmd_product(args, cfg, out):
    _write_function(series.regular_product(load_function(args.file1), load_function(args.file2)), args, out)
    return EXIT_OK


def cmd_conjugate(args, cfg, out):
    _write_function(series.regular_conjugate(load_function(args.file)), args, out)
    return EXIT_OK


def cmd_symmetrize(args, cfg, out):
    _write_function(series.symmetrization(load_function(args.file), cfg.eps_eq), args, out)
    return EXIT_OK


def cmd_reciprocal(args, cfg, out):
    f = load_function(args.file)
    if args.order is not None:
        if args.order < 0:
            raise UsageError("--order must be >= 0")
        _write_function(series.reciprocal_series(f, args.order, cfg.eps_eq), args, out)
    else:
        _emit(_quat_json(series.reciprocal_pointwise(f, _quat(args.at), cfg.eps_eq)), out)
    return EXIT_OK


def cmd_zeros(args, cfg, out):
    f = load_function(args.file)
    radius = math.inf if args.radius is None else args.radius
    zs = zeros.zero_set(f, radius, cfg)
    _emit(zs.to_json(), out)
    return EXIT_OK


def cmd_split(args, cfg, out):
    f = load_function(args.file)
    x, y = _floats(args.sphere, 2, "--sphere")
    s = spheres.Sphere2(x, y)
    v = spheres.spherical_split(f, s)
    tol = cfg.degenerate_tol if args.tol is None else args.tol
    doc = {
        "format_version": 1,
        "sphere": s.to_json(),
        "b": v.b.to_list(),
        "c": v.c.to_list(),
        "degenerate": spheres.is_degenerate(f, s, tol) if s.y > 0 else None,
        "zero": spheres.sphere_zero(v, cfg.zero_tol, cfg.unit_tol).to_json(),
        "extrema": spheres.modulus_extrema_on_sphere(v).to_json(),
    }
    _emit(doc, out)
    return EXIT_OK


def cmd_scan(args, cfg, out):
    f = load_function(args.file)
    x0, x1, y0, y1, nx, ny = _floats(args.grid, 6, "--grid")
    if nx != int(nx) or ny != int(ny):
        raise UsageError("--grid: NX and NY must be integers")
    try:
        grid = analysis.GridSpec((x0, x1), (y0, y1), int(nx), int(ny))
    except ValueError as exc:
        raise UsageError(f"--grid: {exc}") from None
    tol = cfg.degenerate_tol if args.tol is None else args.tol
    scan = analysis.degenerate_scan(f, grid, tol, cfg)
    Path(args.csv).write_text(scan.to_csv())
    doc = scan.to_json()
    doc["csv"] = args.csv
    _emit(doc, out)
    return EXIT_OK


def cmd_check(args, cfg, out):
    kind = args.kind
    if kind == "counterexample":
        I = _unit(args.unit_i, "--unit-i")
        K = _unit(args.unit_k, "--unit-k")
        n = args.samples if args.samples is not None else 100_000
        report = analysis.counterexample_witness(I, K, n, cfg.seed, cfg.witness_tol)
    else:
        if args.file is None:
            raise UsageError(f"check {kind}: FILE is required")
        f = load_function(args.file)
        samples = cfg.samples if args.samples is None else args.samples
        if kind == "min-modulus":
            report = analysis.check_min_modulus(f, args.radius, samples, cfg.seed, cfg)
        elif kind == "max-modulus":
            report = analysis.check_max_modulus(f, args.radius, samples, cfg.seed, cfg)
        elif kind == "open-mapping":
            if args.region is None:
                raise UsageError("check open-mapping: --region is required")
            region = _parse_region(args.region)
            report = analysis.open_mapping_probe(f, region, cfg.epsilon, cfg.probes, cfg.seed, cfg=cfg).to_json()
        else:
            g = load_function(args.with_file) if args.with_file else None
            n = args.samples if args.samples is not None else 1000
            report = analysis.identity_suite(f, g, n, cfg.seed, cfg=cfg)
    report["format_version"] = 1
    _emit(report, out)
    return EXIT_OK if report.get("passed") else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="slicereg", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("config", help="print the effective configuration")
    s.set_defaults(func=cmd_config)

    s = sub.add_parser("eval", help="evaluate f at a quaternion")
    s.add_argument("file")
    s.add_argument("--at", required=True, metavar="W,X,Y,Z")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("product", help="regular product FILE1 * FILE2")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_product)

    for name, func, help_ in (
        ("conjugate", cmd_conjugate, "regular conjugate"),
        ("symmetrize", cmd_symmetrize, "symmetrization f * f^c"),
    ):
        s = sub.add_parser(name, help=help_)
        s.add_argument("file")
        s.add_argument("-o", "--output")
        s.set_defaults(func=func)

    s = sub.add_parser("reciprocal", help="reciprocal series (--order) or value (--at)")
    s.add_argument("file")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--order", type=int)
    g.add_argument("--at", metavar="W,X,Y,Z")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_reciprocal)

    s = sub.add_parser("zeros", help="zero set inside B(0, R)")
    s.add_argument("file")
    s.add_argument("--radius", type=float)
    s.set_defaults(func=cmd_zeros)

    s = sub.add_parser("split", help="b + Ic splitting on the sphere x + yS")
    s.add_argument("file")
    s.add_argument("--sphere", required=True, metavar="X,Y")
    s.add_argument("--tol", type=float)
    s.set_defaults(func=cmd_split)

    s = sub.add_parser("scan-degenerate", help="|c| on a grid and degenerate sphere candidates")
    s.add_argument("file")
    s.add_argument("--grid", required=True, metavar="X0,X1,Y0,Y1,NX,NY")
    s.add_argument("--tol", type=float)
    s.add_argument("--csv", default="degenerate_scan.csv", help="CSV output path (x,y,abs_c)")
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("check", help="run a verification harness")
    s.add_argument("kind", choices=["min-modulus", "max-modulus", "open-mapping", "counterexample", "identities"])
    s.add_argument("file", nargs="?")
    s.add_argument("--seed", type=int)
    s.add_argument("--samples", type=int)
    s.add_argument("--epsilon", type=float)
    s.add_argument("--probes", type=int)
    s.add_argument("--radius", type=float, default=1.0, help="ball radius for modulus checks")
    s.add_argument("--region", help="ball:W,X,Y,Z,R or circular:X,Y,R")
    s.add_argument("--with", dest="with_file", help="second function g for identities (default f^c)")
    s.add_argument("--unit-i", default="1,0,0")
    s.add_argument("--unit-k", default="0,1,0")
    s.set_defaults(func=cmd_check)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = Config.from_env().replace(
            seed=getattr(args, "seed", None),
            epsilon=getattr(args, "epsilon", None),
            probes=getattr(args, "probes", None),
        )
        return args.func(args, cfg, out)
    except (UsageError, FunctionFileError) as exc:
        print(f"slicereg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SliceRegError, ValueError) as exc:
        print(f"slicereg: error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
