"""
Consistency audits of a development, and cusp cross-sections.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from ..config.constants import ZERO_LABEL_TOL
from ..diagram import LinkDiagram
from ..equations import EquationSystem, as_values, region_equations, xi_from_labels
from ..errors import DevelopError
from .conditions import cross_section_polygon, edge_label_values, interior_angles, pass_labels
from .development import BOTTOM, KINDS, TOP, HoroballConfig, vertex_name
from .mobius import cross_ratio

logger = logging.getLogger(__name__)


@dataclass
class AuditResult:
    max_deviation: float
    corners: List[Dict] = field(default_factory=list)

    @property
    def signs(self) -> Dict[int, int]:
        """Sign matched at each crossing (last corner audited wins)."""
        return {corner["crossing"]: corner["sign"] for corner in self.corners}


def audit_corners(config: HoroballConfig, solution, kind: str = TOP) -> AuditResult:
    """
    Compare each corner parameter x_i / (t_i t_{i+1}) with the cross-ratio of the four placed
    vertices around the corner; either sign is accepted and recorded.
    """
    development = config.developments[kind]
    positions = development.positions()
    values = as_values(solution)
    deviation = 0.0
    corners = []
    for region, walk in development.walks.items():
        if walk.arity < 3:
            continue
        rebuilt = config.system.spec_for(region)
        translations = [complex(t.evaluate(values)) for t in rebuilt.translations]
        factors = [complex(f * values[v]) for f, v in zip(rebuilt.factors, rebuilt.crossing_vars)]
        xis = xi_from_labels(translations, factors)
        k = walk.arity
        for i in range(k):
            keys = [development.vertices[(region, (i + d) % k)] for d in (0, -1, 1, 2)]
            missing = [key for key in keys if key not in positions]
            if missing:
                raise DevelopError(f"vertex {vertex_name(kind, missing[0])} was not placed")
            ratio = cross_ratio(*(positions[key] for key in keys))
            plus, minus = abs(ratio - xis[i]), abs(ratio + xis[i])
            corners.append({"region": region, "corner": i, "crossing": walk.crossings[i],
                            "sign": 1 if plus <= minus else -1, "deviation": min(plus, minus)})
            deviation = max(deviation, min(plus, minus))
    return AuditResult(deviation, corners)


def cross_ratio_audit(config: HoroballConfig, solution) -> float:
    """
    Largest disagreement between corner cross-ratios and the label fractions, over the corners of
    both the top and the bottom polyhedron.

    Args:
        config: Development from develop
        solution: The solution it was developed from

    Returns:
        Max over corners of both developments of min(|cr - f|, |cr + f|)

    Raises:
        DevelopError: if a needed vertex was never placed
    """
    deviation = 0.0
    for kind in KINDS:
        result = audit_corners(config, solution, kind)
        logger.info("Cross-ratio audit (%s): max deviation %.3e over %d corners",
                    kind, result.max_deviation, len(result.corners))
        deviation = max(deviation, result.max_deviation)
    return deviation


def triangle_angles(u: complex) -> List[float]:
    """arg(u/(u+1)), arg(u+1), arg(1/u): angles of a triangular cross-section."""
    return [float(np.angle(u / (u + 1))), float(np.angle(u + 1)), float(np.angle(1 / u))]


def cross_sections(diagram: LinkDiagram, solution, system: Optional[EquationSystem] = None) -> List[Dict]:
    """
    Cusp cross-section at every overpass and underpass.

    Returns:
        One entry per pass with the polygon corners, its interior angles, and for triangles the
        closed-form angles of the outgoing label
    """
    system = system or region_equations(diagram)
    labels = edge_label_values(diagram, system, solution)
    sections = []
    for c in range(diagram.n):
        for over in (True, False):
            u, v = pass_labels(diagram, labels, c, over)
            polygon = cross_section_polygon(u, v)
            entry = {
                "vertex": vertex_name(TOP if over else BOTTOM, c),
                "polygon": [[p.real, p.imag] for p in polygon],
                "angles": interior_angles(polygon) if len(polygon) >= 3 else [],
            }
            if len(polygon) == 3:
                nonzero = u if min(abs(u), abs(u + 1)) > ZERO_LABEL_TOL else v
                entry["triangle_angles"] = triangle_angles(nonzero)
            sections.append(entry)
    return sections
