"""
Deforming the boat
==================

Between pi/3 and 2pi/3 the boat sits on a circle of configurations that also
passes through its mirror image; the chair is stuck on its own. Trace that
circle, watch the bond-angle residual stay at round-off level, and export the
frames as OBJ polylines for a viewer.
"""

import math
import tempfile
from pathlib import Path

import numpy as np

from equipoly import boat, build_hexagon, chair, deformation_loop, residual, torus_distance
from equipoly.formats import write_obj_frames

theta = math.acos(-1 / 3)  # tetrahedral angle, as in cyclohexane
loop = deformation_loop(theta, steps=120)
pts = np.array([t.as_array() for t in loop])

# The loop passes through the boat and the mirror boat...
for sign in (1, -1):
    b = boat(theta, sign)[0].as_array()
    print(f"closest loop point to boat{'+' if sign > 0 else '-'}: {torus_distance(pts, b).min():.4f}")

# ...but stays far from the chair.
c = chair(theta)[0].as_array()
print(f"closest loop point to the chair: {torus_distance(pts, c).min():.4f}")

worst = max(residual(build_hexagon(theta, t), theta).max_residual for t in loop)
print(f"{len(loop)} frames, worst residual {worst:.1e}")

out = Path(tempfile.mkdtemp()) / "boat_loop"
paths = write_obj_frames([build_hexagon(theta, t) for t in loop], out)
print(f"wrote {len(paths)} OBJ frames to {out}")
