"""Command line front end: ``equipoly <classify|build|sample|verify|deform|export>``.

Arguments may be given positionally (``equipoly verify 6 pi/2 48``) or with
flags (``--n 6 --theta pi/2 --res 48``). Exit status is 0 iff every requested
check passes.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import formats
from .geometry import residual
from .hexagon import (
    PI_3,
    ClassTag,
    TorusPoint,
    build_hexagon,
    classify,
    deformation_loop,
    named_configurations,
    near_angle,
)
from .oracle import solve_all, system_for
from .pi3 import VERTICES
from .small_n import SQUARE_ANGLE, classify_small, construct_small, fold_angle
from .topology import components
from .verification import verify

BUILD_TOL = 1e-10


class UsageError(Exception):
    pass


def _pick(args, name, position, required=True, convert=None):
    value = getattr(args, name)
    if value is None and position < len(args.pos):
        value = args.pos[position]
    if value is None:
        if required:
            raise UsageError(f"missing argument: {name}")
        return None
    return convert(value) if convert else value


def _theta(args, position):
    th = _pick(args, "theta", position, convert=formats.parse_theta)
    if not 0 <= th < math.pi:
        raise UsageError(f"theta must lie in [0, pi), got {th}")
    return th


def _n(args, position, allowed):
    n = _pick(args, "n", position, convert=int)
    if n not in allowed:
        raise UsageError(f"n must be one of {sorted(allowed)}, got {n}")
    return n


def _emit(text: str, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)


def _class_for(n, th):
    return classify(th) if n == 6 else classify_small(n, th)


def _signed(label, sign):
    return f"{label}{'+' if sign > 0 else '-'}"


def _configurations(n, th):
    """(family label, parameters or None, polygon) for every named configuration."""
    out = []
    if n == 6:
        if near_angle(th, PI_3):
            for name, t in VERTICES.items():
                out.append((f"planar-{name}", t, build_hexagon(th, t)))
        for fam, t in named_configurations(th):
            # Named points coinciding with a planar vertex of X keep the vertex label.
            if all(t.distance(u) > 1e-9 for _, u, _ in out):
                out.append((_signed(fam.kind.value, fam.sign), t, build_hexagon(th, t)))
        return out
    cls = _class_for(n, th)
    if cls.tag is ClassTag.Empty:
        return out
    if n == 4:
        delta = fold_angle(th)
        for sign in (1, -1) if cls.tag is ClassTag.TwoPoints else (1,):
            out.append((_signed("fold", sign), [sign * delta], construct_small(4, th, sign)))
    elif n == 5:
        out.append(("pentagon", [0.0, 0.0], construct_small(5, th)))
    else:
        out.append(("triangle", None, construct_small(3, th)))
    return out


def cmd_classify(args) -> int:
    n = _n(args, 0, {3, 4, 5, 6})
    th = _theta(args, 1)
    cls = _class_for(n, th)
    configs = _configurations(n, th)
    if args.format == "json":
        doc = {
            "n": n,
            "theta": th,
            "class": cls.tag.value,
            "detail": cls.detail,
            "configurations": [
                {"family": f, "torus_point": None if t is None else [float(x) for x in t]} for f, t, _ in configs
            ],
        }
        if n == 4:
            doc["note"] = _n4_note()
        _emit(formats.dumps(doc), args.out)
        return 0
    lines = [f"n = {n}", f"theta = {th:.12f}", f"class = {cls.tag.value}", f"detail = {cls.detail}"]
    for f, t, _ in configs:
        if t is None:
            lines.append(f"  {f}")
        else:
            lines.append(f"  {f}: (" + ", ".join(f"{x:.5f}" for x in t) + ")")
    if n == 4:
        lines.append(f"note = {_n4_note()}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _n4_note() -> str:
    return (
        f"fold-angle condition cos(delta) = 1 - 2 tan^2(theta/2) gives existence for 0 <= theta <= pi/2 "
        f"and the planar square at theta = {SQUARE_ANGLE:.6f}; a square threshold of pi/4 is inconsistent with this condition"
    )


def _write_frames(records, polygons, fmt, out):
    if fmt == "json":
        _emit(formats.dumps(records), out)
    elif fmt == "csv":
        _emit(formats.frames_csv(polygons), out)
    elif fmt == "obj":
        if out in (None, "-"):
            for k, poly in enumerate(polygons):
                sys.stdout.write(formats.polygon_obj(poly, f"frame {k}"))
        else:
            formats.write_obj_frames(polygons, out)
    else:
        raise UsageError(f"unknown format {fmt}")


def cmd_build(args) -> int:
    n = _n(args, 0, {3, 4, 5, 6})
    th = _theta(args, 1)
    configs = _configurations(n, th)
    if not configs:
        print(f"no configurations for n = {n} at theta = {th}", file=sys.stderr)
        return 1
    records = [formats.polygon_record(n, th, f, t, p) for f, t, p in configs]
    _write_frames(records, [p for *_, p in configs], args.format or "json", args.out)
    return 0 if all(r["residual"] < BUILD_TOL for r in records) else 1


def cmd_sample(args) -> int:
    n = _n(args, 0, {4, 5, 6})
    th = _theta(args, 1)
    res = _pick(args, "res", 2, required=False, convert=int) or 48
    if res < 16:
        raise UsageError("res must be at least 16")
    cloud = solve_all(system_for(n, th), res)
    eps = args.eps if args.eps is not None else 1.5 * cloud.grid_spacing
    report = components(cloud, eps)
    fmt = args.format or "json"
    if fmt == "csv":
        lines = ["index," + ",".join(system_for(n, th).labels) + ",residual"]
        for i, (p, r) in enumerate(zip(cloud.points, cloud.residuals)):
            lines.append(f"{i}," + ",".join(repr(float(x)) for x in p) + f",{float(r)!r}")
        _emit("\n".join(lines) + "\n", args.out)
    else:
        doc = {
            "n": n,
            "theta": th,
            "resolution": res,
            "dedupe_radius": cloud.dedupe_radius,
            "eps": eps,
            "points": cloud.points.tolist(),
            "residuals": cloud.residuals.tolist(),
            "identified": [list(p) for p in cloud.identified],
            "components": [{"kind": c.kind.value, "size": c.size, "diameter": c.diameter} for c in report.components],
        }
        _emit(formats.dumps(doc), args.out)
    return 0


def cmd_verify(args) -> int:
    n = _n(args, 0, {4, 5, 6})
    th = _theta(args, 1)
    res = _pick(args, "res", 2, required=False, convert=int) or 48
    if res < 16:
        raise UsageError("res must be at least 16")
    result = verify(n, th, res, args.eps)
    _emit(result.text(), args.out)
    return 0 if result.passed else 1


def cmd_deform(args) -> int:
    th = _theta(args, 0)
    loop_id = _pick(args, "loop", 1, required=False, convert=int) or 0
    steps = _pick(args, "steps", 2, required=False, convert=int) or 256
    fmt = _pick(args, "format", 3, required=False) or "json"
    out = _pick(args, "out", 4, required=False)
    try:
        loop = deformation_loop(th, loop_id, steps)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    polygons = [build_hexagon(th, t) for t in loop]
    if fmt == "json":
        doc = {
            "theta": th,
            "loop_id": loop_id,
            "steps": steps,
            "frames": [formats.polygon_record(6, th, "deformation", t, p) for t, p in zip(loop, polygons)],
        }
        _emit(formats.dumps(doc), out)
        ok = all(f["residual"] < 1e-8 for f in doc["frames"])
    else:
        _write_frames(None, polygons, fmt, out)
        ok = max(residual(p, th).max_residual for p in polygons) < 1e-8
    return 0 if ok else 1


def cmd_export(args) -> int:
    n = _n(args, 0, {3, 4, 5, 6})
    th = _theta(args, 1)
    fmt = args.format or "json"
    if n == 6 and args.torus:
        t = TorusPoint(*(formats.parse_theta(x) for x in args.torus.split(",")))
        label, poly = "torus", build_hexagon(th, t)
    else:
        configs = _configurations(n, th)
        wanted = args.family
        match = [c for c in configs if wanted is None or c[0] == wanted]
        if not match:
            names = ", ".join(c[0] for c in configs) or "none"
            print(f"no configuration {wanted!r}; available: {names}", file=sys.stderr)
            return 1
        label, t, poly = match[0]
    if fmt == "json":
        _emit(formats.dumps(formats.polygon_record(n, th, label, t, poly)), args.out)
    elif fmt == "obj":
        _emit(formats.polygon_obj(poly, label), args.out)
    else:
        _write_frames(None, [poly], fmt, args.out)
    return 0 if residual(poly, th).max_residual < BUILD_TOL else 1


COMMANDS = {
    "classify": cmd_classify,
    "build": cmd_build,
    "sample": cmd_sample,
    "verify": cmd_verify,
    "deform": cmd_deform,
    "export": cmd_export,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="equipoly", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("pos", nargs="*", help="positional form of the flags below")
        p.add_argument("--n", type=int)
        p.add_argument("--theta")
        p.add_argument("--res", type=int)
        p.add_argument("--eps", type=float)
        p.add_argument("--steps", type=int)
        p.add_argument("--loop", type=int)
        p.add_argument("--format", choices=["json", "csv", "obj", "text"])
        p.add_argument("--out")
        p.add_argument("--torus", help="phi1,phi3,phi5 for export (n = 6)")
        p.add_argument("--family", help="configuration label for export")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    np.seterr(all="ignore")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"equipoly {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
