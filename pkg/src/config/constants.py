"""
Numerical constants for hyperlink-arcs.
"""

# Solver
DEFAULT_STARTS = 200           # Random starts for the multi-start Newton search
DEFAULT_MAX_ITER = 60          # Newton iterations per start
DEFAULT_TOLERANCE = 1e-10      # Residual infinity-norm accepted as converged
START_BOX = 2.0                # Starts are drawn from [-START_BOX, START_BOX]^2 per variable
DEDUP_DISTANCE = 1e-6          # Two roots closer than this (infinity-norm) are the same root
PINV_RCOND = 1e-12             # Singular values below this (relative) are dropped
MAX_HALVINGS = 30              # Step halvings before a damped Newton step is accepted anyway
REFINE_MAX_MOVE = 0.5          # refine() may not move a solution further than this
DIVERGENCE_BOUND = 1e6         # Iterates beyond this magnitude are treated as divergent

# Geometry
REAL_TOL = 1e-8                # |Im| at or below this counts as purely real
ANGLE_MARGIN = 1e-10           # Open-interval margin for angle range checks
ZERO_LABEL_TOL = 1e-12         # Labels at or below this modulus count as zero

# Triangulation
FLAT_TOL = 1e-9                # |Im z| at or below this marks a flat tetrahedron
GLUING_TOL = 1e-9              # Edge products, winding and completeness residuals
SHAPE_IDENTITY_TOL = 1e-9      # Companion and opposite-shape identities
POSITIVE_VOLUME_TOL = 1e-3     # At least one tetrahedron must have Im z above this
AUDIT_TOL = 1e-8               # Corner cross-ratios against label parameters


# Families
CLOSED_FORM_TOL = 1e-12        # A closed-form label assignment is accepted below this residual
