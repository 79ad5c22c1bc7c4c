"""
The exceptional angle pi/3
==========================

At pi/3 the generic circle breaks up. Besides the two chairs, every
configuration lies on one of six circles; those circles meet at four planar
hexagons and form a tetrahedron whose edges are all doubled.
"""

import math

from equipoly.pi3 import CHAIR_ANGLE, f_map, pi3_graph

print("the involution f pairs dihedral angles on the mixed circles:")
for phi in (0.0, math.pi / 4, math.pi / 2, CHAIR_ANGLE, math.pi):
    print(f"    f({phi:.5f}) = {f_map(phi):.5f}")
print(f"fixed point arccos(1/3) = {CHAIR_ANGLE:.5f} is the chair angle")

g = pi3_graph()
print("\nplanar vertices of X:")
for name, t in g.vertices.items():
    print(f"    {name}: ({t.phi1:.4f}, {t.phi3:.4f}, {t.phi5:.4f})")
print("\ncircles and the vertex pair each one joins:")
for fam, (a, b) in g.circles:
    print(f"    {fam.label():>22s}  {a} -- {b}")
mult = g.edge_multiplicity()
print(f"\n{len(mult)} vertex pairs, each joined by {set(mult.values())} arcs; connected: {g.connected}")
