"""
Polyhedral decomposition, partially flat triangulation, verification and certificates.
"""

from .certificate import (
    CHECKS,
    GEODESIC_ARCS,
    INCONCLUSIVE,
    SKIPPED,
    Certificate,
    alternate_fans,
    certify,
    conclude,
)
from .polyhedra import IdealPolyhedron, PolyhedronEdge, menasco
from .shapes import companions, compute_shapes, opposite_shape, shape_of_points
from .subdivide import EDGE_PAIRS, Tetrahedron, Triangulation, choose_fans, fan, fan_variants, subdivide
from .verify import CuspTiling, EdgeClass, VerificationReport, verify_triangulation
from .volume import bloch_wigner, lobachevsky, tetrahedron_volume, volume

__all__ = [
    'CHECKS', 'GEODESIC_ARCS', 'INCONCLUSIVE', 'SKIPPED', 'Certificate', 'alternate_fans', 'certify',
    'conclude', 'IdealPolyhedron', 'PolyhedronEdge', 'menasco', 'companions', 'compute_shapes',
    'opposite_shape', 'shape_of_points', 'EDGE_PAIRS', 'Tetrahedron', 'Triangulation', 'choose_fans', 'fan',
    'fan_variants', 'subdivide', 'CuspTiling', 'EdgeClass', 'VerificationReport',
    'verify_triangulation', 'bloch_wigner', 'lobachevsky', 'tetrahedron_volume', 'volume',
]
