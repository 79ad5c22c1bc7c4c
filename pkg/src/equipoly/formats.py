"""Bond-angle parsing and JSON / CSV / Wavefront OBJ serialization."""

from __future__ import annotations

import csv
import io
import json
import math
import re
from fractions import Fraction
from pathlib import Path

import mpmath

from .geometry import Polygon, residual

_PI_FRACTION = re.compile(
    r"^\s*(?P<sign>[+-]?)\s*(?P<num>\d+(?:\.\d*)?|\.\d+)?\s*\*?\s*(?:pi|π)\s*(?:/\s*(?P<den>\d+(?:\.\d*)?))?\s*$",
    re.IGNORECASE,
)


def parse_theta(text: str) -> float:
    """Parse '2pi/3', '2*pi/3', 'pi', '-pi/4' or a plain decimal into radians.

    Fractions of pi are evaluated at 40 significant digits and rounded once.
    """
    text = str(text).strip()
    m = _PI_FRACTION.match(text)
    if m:
        num = Fraction(m.group("num") or "1")
        den = Fraction(m.group("den") or "1")
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        coeff = num / den
        if m.group("sign") == "-":
            coeff = -coeff
        with mpmath.workdps(40):
            return float(mpmath.pi * coeff.numerator / coeff.denominator)
    try:
        value = float(text)
    except ValueError:
        raise ValueError(f"cannot parse bond angle {text!r}") from None
    if not math.isfinite(value):
        raise ValueError(f"bond angle must be finite, got {text!r}")
    return value


def polygon_record(n, theta, family, torus_point, polygon: Polygon) -> dict:
    """One configuration in the JSON schema."""
    return {
        "n": int(n),
        "theta": float(theta),
        "family": family,
        "torus_point": None if torus_point is None else [float(x) for x in torus_point],
        "vertices": [[float(x) for x in v] for v in polygon.vertices],
        "residual": residual(polygon, theta).max_residual,
    }


def record_polygon(record: dict) -> Polygon:
    return Polygon(record["vertices"])


def dumps(obj) -> str:
    # repr-based float output round-trips every double exactly.
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def write_json(obj, path) -> None:
    Path(path).write_text(dumps(obj))


def read_json(path):
    return json.loads(Path(path).read_text())


def frames_csv(polygons) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["frame", "vertex", "x", "y", "z"])
    for f, poly in enumerate(polygons):
        for i, v in enumerate(poly.vertices):
            w.writerow([f, i, repr(float(v[0])), repr(float(v[1])), repr(float(v[2]))])
    return buf.getvalue()


def read_frames_csv(text: str) -> list[Polygon]:
    rows = list(csv.DictReader(io.StringIO(text)))
    frames: dict[int, list] = {}
    for r in rows:
        frames.setdefault(int(r["frame"]), []).append((int(r["vertex"]), float(r["x"]), float(r["y"]), float(r["z"])))
    return [Polygon([v[1:] for v in sorted(frames[k])]) for k in sorted(frames)]


def polygon_obj(polygon: Polygon, comment: str = "") -> str:
    """Vertices plus one 'l' segment per edge, closing the cycle."""
    lines = [f"# {comment}"] if comment else []
    lines += [f"v {x!r} {y!r} {z!r}" for x, y, z in polygon.vertices.tolist()]
    n = polygon.n
    lines += [f"l {i + 1} {(i + 1) % n + 1}" for i in range(n)]
    return "\n".join(lines) + "\n"


def read_obj(text: str) -> Polygon:
    verts = [tuple(float(x) for x in line.split()[1:4]) for line in text.splitlines() if line.startswith("v ")]
    return Polygon(verts)


def write_obj_frames(polygons, directory, stem: str = "frame") -> list[Path]:
    out_dir = Path(directory)
    out_dir.mkdir(parents=True, exist_ok=True)
    width = max(4, len(str(len(polygons) - 1)))
    paths = []
    for k, poly in enumerate(polygons):
        p = out_dir / f"{stem}_{k:0{width}d}.obj"
        p.write_text(polygon_obj(poly, f"{stem} {k}"))
        paths.append(p)
    return paths
