"""
Shape parameters of the tetrahedra.
"""

import logging
from itertools import combinations
from typing import Optional

from ..config.constants import ZERO_LABEL_TOL
from ..errors import DevelopError, TriangulationError
from ..geometry.development import KINDS, develop
from ..geometry.mobius import det2, point_separation
from .subdivide import Tetrahedron, Triangulation

logger = logging.getLogger(__name__)


def shape_of_points(p0, p1, p2, p3) -> complex:
    """Shape on edge 01: [p3,p0][p2,p1] / ([p2,p0][p3,p1]). Any two coinciding vertices are rejected."""
    for (i, p), (j, q) in combinations(enumerate((p0, p1, p2, p3)), 2):
        if point_separation(p, q) <= ZERO_LABEL_TOL:
            raise TriangulationError(f"tetrahedron vertices {i} and {j} coincide")
    denominator = det2(p2, p0) * det2(p3, p1)
    if abs(denominator) <= ZERO_LABEL_TOL:
        raise TriangulationError("tetrahedron has coincident vertices")
    return det2(p3, p0) * det2(p2, p1) / denominator


def companions(z: complex):
    """(1 - 1/z, 1/(1 - z)): shapes of edges 02 and 03."""
    if abs(z) <= ZERO_LABEL_TOL or abs(1 - z) <= ZERO_LABEL_TOL:
        raise TriangulationError(f"degenerate shape {z}")
    return 1 - 1 / z, 1 / (1 - z)


def _assign(tet: Tetrahedron) -> None:
    tet.shape = shape_of_points(*tet.points)
    tet.companions = companions(tet.shape)


def compute_shapes(tri: Triangulation, solution=None) -> Triangulation:
    """
    Give every tetrahedron its shape, in the vertex order subdivide chose.

    Args:
        tri: Output of subdivide
        solution: When given, vertices are re-developed from it first

    Returns:
        The same triangulation with shapes set

    Raises:
        TriangulationError: on coincident vertices
    """
    if solution is not None:
        try:
            config = develop(tri.config.diagram, solution, tri.config.base_region, tri.config.system)
        except DevelopError as exc:
            raise TriangulationError(str(exc)) from exc
        for tet in tri.tetrahedra:
            positions = config.developments[tet.polyhedron].positions()
            tet.points = tuple(positions[v] for v in tet.vertices)
        tri.config = config

    for kind in KINDS:
        members = [tet for tet in tri.tetrahedra if tet.polyhedron == kind]
        for tet in members:
            _assign(tet)
        lowest = min((tet.shape.imag for tet in members), default=0.0)
        logger.debug("%s cone: %d tetrahedra, least Im z %.3e", kind, len(members), lowest)
    return tri


def opposite_shape(tet: Tetrahedron) -> Optional[complex]:
    """Shape on edge 23 computed directly, which must equal the shape on edge 01."""
    p0, p1, p2, p3 = tet.points
    return shape_of_points(p2, p3, p0, p1)
