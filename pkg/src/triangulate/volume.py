"""
Hyperbolic volume of ideal tetrahedra.
"""

import logging
import math

import mpmath

from ..config.constants import FLAT_TOL
from ..errors import TriangulationError

logger = logging.getLogger(__name__)


def lobachevsky(theta: float) -> float:
    """Lobachevsky function, half the Clausen function at 2 theta."""
    return float(mpmath.clsin(2, 2 * theta)) / 2


def bloch_wigner(z: complex) -> float:
    """Signed volume of the ideal tetrahedron with shape z; 0 when z is real."""
    if abs(z.imag) <= FLAT_TOL:
        return 0.0
    value = mpmath.im(mpmath.polylog(2, z)) + mpmath.arg(1 - z) * mpmath.log(abs(z))
    return float(value)


def tetrahedron_volume(z: complex) -> float:
    """L(arg z) + L(arg(1 - 1/z)) + L(arg(1/(1 - z))); flat tetrahedra give 0."""
    if abs(z.imag) <= FLAT_TOL:
        return 0.0
    angles = (math.atan2(z.imag, z.real), _arg(1 - 1 / z), _arg(1 / (1 - z)))
    return sum(lobachevsky(angle) for angle in angles)


def _arg(z: complex) -> float:
    return math.atan2(z.imag, z.real)


def volume(tri) -> float:
    """
    Total volume of a triangulation with shapes.

    Raises:
        TriangulationError: if a shape is missing or negatively oriented
    """
    total = 0.0
    for tet in tri.tetrahedra:
        if tet.shape is None:
            raise TriangulationError(f"tetrahedron {tet.index} has no shape")
        if tet.shape.imag < -FLAT_TOL:
            raise TriangulationError(f"tetrahedron {tet.index} is negatively oriented (z = {tet.shape:.6g})")
        total += tetrahedron_volume(tet.shape)
    logger.info("Volume %.10f from %d tetrahedra", total, len(tri.tetrahedra))
    return total
