"""
Hexagon configuration spaces across bond angles
===============================================

Walk the bond angle from 0 to 2pi/3 and print the topology of the space of
equilateral, equiangular hexagons, together with its named conformations.
"""

import math

from equipoly import admissible_phi1, build_hexagon, classify, named_configurations, residual

# A handful of representative angles, including the special ones.
for label, theta in [
    ("0", 0.0),
    ("pi/4", math.pi / 4),
    ("pi/3", math.pi / 3),
    ("tetrahedral", math.acos(-1 / 3)),
    ("pi/2", math.pi / 2),
    ("2pi/3", 2 * math.pi / 3),
    ("5pi/6", 5 * math.pi / 6),
]:
    cls = classify(theta)
    print(f"theta = {label:>11s}: {cls.tag.value} ({cls.detail})")
    arcs = ", ".join(f"[{lo:+.4f}, {hi:+.4f}]" for lo, hi in admissible_phi1(theta).arcs)
    print(f"    admissible phi1: {arcs or 'none'}")
    for fam, t in named_configurations(theta):
        r = residual(build_hexagon(theta, t), theta).max_residual
        print(
            f"    {fam.kind.value:>14s}{'+' if fam.sign > 0 else '-'} at ({t.phi1:+.5f}, {t.phi3:+.5f}, {t.phi5:+.5f}), residual {r:.1e}"
        )
