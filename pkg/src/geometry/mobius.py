"""
2x2 complex matrices acting on the Riemann sphere.

Points are handled homogeneously as pairs (z, 1), with (1, 0) for infinity, so infinity never
needs special casing in cross-ratios.
"""

from typing import Optional, Tuple

import numpy as np

from ..config.constants import ZERO_LABEL_TOL
from ..errors import DevelopError

INFINITY = np.array([1, 0], dtype=complex)
ZERO = np.array([0, 1], dtype=complex)


def translation(t: complex) -> np.ndarray:
    return np.array([[1, t], [0, 1]], dtype=complex)


def crossing_turn(x: complex) -> np.ndarray:
    return np.array([[0, x], [-1, 0]], dtype=complex)


def normalize(matrix: np.ndarray) -> np.ndarray:
    """Scale to determinant 1."""
    det = complex(np.linalg.det(matrix))
    if abs(det) <= ZERO_LABEL_TOL:
        raise DevelopError("singular frame: a crossing label vanishes")
    return matrix / np.sqrt(det)


def inverse(matrix: np.ndarray) -> np.ndarray:
    """Inverse of a 2x2 matrix up to scale (the adjugate)."""
    a, b = matrix[0]
    c, d = matrix[1]
    return np.array([[d, -b], [-c, a]], dtype=complex)


def point(z: Optional[complex]) -> np.ndarray:
    return INFINITY.copy() if z is None else np.array([z, 1], dtype=complex)


def to_complex(h: np.ndarray) -> Optional[complex]:
    """Affine coordinate of a homogeneous point, None for infinity."""
    if abs(h[1]) <= 1e-14 * max(abs(h[0]), 1e-300):
        return None
    return complex(h[0] / h[1])


def det2(p: np.ndarray, q: np.ndarray) -> complex:
    return complex(p[0] * q[1] - p[1] * q[0])


def point_separation(p: np.ndarray, q: np.ndarray) -> float:
    """Chordal distance between two homogeneous points of the Riemann sphere, in [0, 1]."""
    scale = float(np.linalg.norm(p) * np.linalg.norm(q))
    if scale == 0.0:
        return 0.0
    return abs(det2(p, q)) / scale


def cross_ratio(a: np.ndarray, b: np.ndarray, c: np.ndarray, d: np.ndarray) -> complex:
    """[d,c][b,a] / ([b,c][d,a]) on homogeneous points."""
    denominator = det2(b, c) * det2(d, a)
    if abs(denominator) <= ZERO_LABEL_TOL:
        raise DevelopError("cross-ratio of coincident points")
    return det2(d, c) * det2(b, a) / denominator


def horoball(frame: np.ndarray) -> Tuple[Optional[complex], float, complex]:
    """
    Horoball and meridian carried by a frame.

    The frame sends the horosphere at height 1 over infinity, with meridian 1, to the returned
    one. Returns (center or None for infinity, diameter or height, unit meridian direction).
    """
    (a, _), (c, _) = normalize(frame)
    if abs(c) <= 1e-14 * max(abs(a), 1.0):
        return None, float(abs(a) ** 2), complex(a * a / abs(a * a))
    modulus = abs(c)
    return complex(a / c), float(1 / modulus ** 2), complex(-(np.conj(c) / modulus) ** 2)


def projective_distance(m: np.ndarray, n: np.ndarray) -> float:
    """Entrywise distance between two matrices as elements of PSL(2, C), relative to their size."""
    m, n = normalize(m), normalize(n)
    scale = max(1.0, float(np.max(np.abs(m))))
    return float(min(np.max(np.abs(m - n)), np.max(np.abs(m + n)))) / scale
