"""
Checking the closed forms with a blind solver
=============================================

The oracle knows nothing about boats or chairs: it scans a grid on the torus
of dihedral angles, refines every promising node with a damped Gauss-Newton
iteration and deduplicates. Its point cloud is then split into components and
compared with the closed-form families.
"""

import math

from equipoly import verify
from equipoly.oracle import pentagon_theta_roots
from equipoly.small_n import fold_cosine

for theta in (math.pi / 4, math.pi / 3, math.pi / 2):
    print(verify(6, theta, res=48).text())

# Pentagons only close up at two bond angles.
print("pentagon bond angles found by sweeping theta:", [f"{r:.6f}" for r in pentagon_theta_roots()])
print(f"(pi/5 = {math.pi / 5:.6f}, 3pi/5 = {3 * math.pi / 5:.6f})")

# Quadrilaterals fold until the planar square at pi/2.
for theta in (0.3, math.pi / 4, 1.2, math.pi / 2):
    print(f"quadrilateral at theta = {theta:.4f}: cos(fold) = {fold_cosine(theta):+.6f}")
