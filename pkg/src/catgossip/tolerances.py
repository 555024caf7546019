"""Numerical tolerances, fixed once for the whole library.

Double-precision eigensolvers dominate the error budget in the matrix
spaces, which sets the geodesic-identity tolerances; type invariants and
domain guards are tighter.
"""

# Type invariants (symmetry, unit norm, orthogonality defects).
INVARIANT_TOL = 1e-12

# Orthogonality defect allowed on a rotation matrix.
ROTATION_TOL = 1e-10

# Domain guards: antipodal rejection, locality margins.
GUARD_TOL = 1e-9

# Geodesic identities (d(p, m) = d(p, q)/2 and additivity).
GEODESIC_TOL = 1e-8
GEODESIC_TOL_MATRIX = 1e-7

# Two points closer than this are treated as equal: geodesics collapse to
# the first endpoint, which keeps the sphere/rotation formulas away from
# 0/0 and lets a gossip run absorb at exact consensus.
POINT_SNAP_TOL = 1e-12

# A configuration whose diameter falls below this is declared at consensus;
# log-variance fits only use the records strictly before that point.
CONSENSUS_DIAMETER_TOL = 1e-10

# Smallest eigenvalue accepted by the SPD kernels.
SPD_EIG_FLOOR = 1e-12
