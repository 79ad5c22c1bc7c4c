"""Configuration spaces of equilateral, equiangular polygons in space.

Closed-form constructions for hexagons (double-cone parameterization), the
special bond angle pi/3, quadrilaterals and pentagons, plus an independent
grid-and-refine oracle and a point-cloud topology analyzer to check them.
"""

from .geometry import (
    BondAngle,
    DegenerateEdgeError,
    Polygon,
    ResidualReport,
    bond_angles,
    congruent,
    edge_lengths,
    mirror_z,
    residual,
    rigid_motion,
    torus_distance,
)
from .hexagon import (
    AdmissibleSet,
    ClassTag,
    CoeffTriple,
    ConfigSpaceClass,
    FamilyKind,
    NamedFamily,
    TorusPoint,
    admissible_phi1,
    boat,
    build_hexagon,
    chair,
    classify,
    coefficients,
    crown_companion,
    deformation_loop,
    inward_crown,
    isolated_configurations,
    named_configurations,
    solve_branch,
)
from .oracle import ResidualSystem, SolutionCloud, solve_all, system_for
from .pi3 import Pi3Family, Pi3Graph, f_map, pi3_families, pi3_graph
from .small_n import classify_small, construct_small, fold_angle
from .topology import ComponentKind, ComponentReport, components, isolation_radius, path_connected, trace_loop
from .verification import verify

__all__ = [
    "AdmissibleSet",
    "BondAngle",
    "ClassTag",
    "CoeffTriple",
    "ComponentKind",
    "ComponentReport",
    "ConfigSpaceClass",
    "DegenerateEdgeError",
    "FamilyKind",
    "NamedFamily",
    "Pi3Family",
    "Pi3Graph",
    "Polygon",
    "ResidualReport",
    "ResidualSystem",
    "SolutionCloud",
    "TorusPoint",
    "admissible_phi1",
    "boat",
    "bond_angles",
    "build_hexagon",
    "chair",
    "classify",
    "classify_small",
    "coefficients",
    "components",
    "congruent",
    "construct_small",
    "crown_companion",
    "deformation_loop",
    "edge_lengths",
    "f_map",
    "fold_angle",
    "inward_crown",
    "isolated_configurations",
    "isolation_radius",
    "mirror_z",
    "named_configurations",
    "path_connected",
    "pi3_families",
    "pi3_graph",
    "residual",
    "rigid_motion",
    "solve_all",
    "solve_branch",
    "system_for",
    "torus_distance",
    "trace_loop",
    "verify",
]
