"""
Region relations and the hyperbolicity equation system.

Walking a region counterclockwise gives, per side, the translation

    t_i = s_i * (side expression),   s_i = +1 when the walk follows the link orientation,

and per corner the crossing factor x_i (the corner's crossing label, times its crossing sign
under the "sign" convention). Around a region

    prod_i  [[1, t_i], [0, 1]] @ [[0, x_i], [-1, 0]]

must be a multiple of the identity. With xi_i = x_i / (t_i t_{i+1}) this is the vanishing of
the continuants K(xi_j, ..., xi_{j+k-3}); clearing denominators gives polynomials, three per
region. Triangles give t_i t_{i+1} - x_i.
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ..config.constants import ZERO_LABEL_TOL
from ..diagram import LinkDiagram, Region
from ..errors import DegenerateLabelError, DiagramStructureError
from .labels import (
    CALIBRATED,
    Convention,
    LabelAllocation,
    LabelVar,
    SideExpr,
    SideKey,
    allocate_labels,
    side_expressions,
)
from .polynomial import Polynomial

logger = logging.getLogger(__name__)

RELATIONS_PER_REGION = 3


@dataclass(frozen=True)
class SignedSide:
    """sign * (side expression), the translation along one side of a region walk."""

    sign: int
    expr: SideExpr

    def polynomial(self) -> Polynomial:
        return self.sign * self.expr.polynomial()

    def evaluate(self, values) -> complex:
        return self.sign * self.expr.evaluate(values)

    def to_string(self, names: List[str]) -> str:
        inner = self.expr.to_string(names)
        if self.sign > 0:
            return inner
        if self.expr.var is None:
            return str(-self.expr.shift)
        return f"-{inner}" if self.expr.shift == 0 else f"-({inner})"


@dataclass(frozen=True)
class RegionSpec:
    """The walk of one region in label terms: translations and crossing factors per corner."""

    region: int
    translations: Tuple[SignedSide, ...]
    factors: Tuple[int, ...]  # +1 or the crossing sign
    crossing_vars: Tuple[int, ...]

    @property
    def arity(self) -> int:
        return len(self.translations)

    def translation_polys(self) -> List[Polynomial]:
        return [t.polynomial() for t in self.translations]

    def crossing_polys(self) -> List[Polynomial]:
        return [f * Polynomial.variable(v) for f, v in zip(self.factors, self.crossing_vars)]


@dataclass(frozen=True)
class Equation:
    polynomial: Polynomial
    region: int
    index: int  # 1..3 within the region


@dataclass(frozen=True, eq=False)
class EquationSystem:
    """
    Hyperbolicity relations of an oriented alternating diagram.

    Attributes:
        variables: Crossing variables then edge variables
        equations: Three relations per non-bigon region
        side_map: (edge, side flag) -> SideExpr
        specs: RegionSpec per non-bigon region
        convention: Sign convention used
        starts: region id -> corner its first relation starts at, for regions not starting at 0
    """

    variables: Tuple[LabelVar, ...]
    equations: Tuple[Equation, ...]
    side_map: Dict[SideKey, SideExpr]
    specs: Tuple[RegionSpec, ...]
    convention: Convention
    allocation: LabelAllocation
    starts: Dict[int, int] = field(default_factory=dict)

    def start_for(self, region_id: int) -> int:
        return self.starts.get(region_id, 0)

    @property
    def names(self) -> List[str]:
        return [var.name for var in self.variables]

    def spec_for(self, region_id: int) -> RegionSpec:
        for spec in self.specs:
            if spec.region == region_id:
                return spec
        raise KeyError(f"region {region_id} has no relations (bigon or unknown)")

    def variable(self, name: str) -> LabelVar:
        for var in self.variables:
            if var.name == name:
                return var
        raise KeyError(name)

    def __repr__(self) -> str:
        return f"EquationSystem(variables={len(self.variables)}, equations={len(self.equations)})"


def region_spec(diagram: LinkDiagram, region: Region, side_map: Dict[SideKey, SideExpr],
                allocation: LabelAllocation, convention: Convention = CALIBRATED) -> RegionSpec:
    translations = []
    factors = []
    crossing_vars = []
    for inc in region.incidences:
        sign = 1 if inc.departure == diagram.tail(inc.edge) else -1
        translations.append(SignedSide(sign, side_map[(inc.edge, inc.side)]))
        factors.append(1 if convention.crossing_factor == "unit" else diagram.crossing_sign(inc.crossing))
        crossing_vars.append(allocation.crossing_var[inc.crossing])
    return RegionSpec(region.id, tuple(translations), tuple(factors), tuple(crossing_vars))


def cleared_continuant(translations: Sequence, factors: Sequence, start: int):
    """
    Continuant relation starting at corner `start`, with denominators cleared.

    Works on Polynomials or plain numbers alike:
        P_-1 = 1, P_0 = t_j, P_m = P_{m-1} t_{j+m} - x_{j+m-1} P_{m-2},
    and the relation is P_{k-2}.
    """
    k = len(translations)
    previous, current = 1, translations[start % k]
    for m in range(1, k - 1):
        t = translations[(start + m) % k]
        x = factors[(start + m - 1) % k]
        previous, current = current, current * t - x * previous
    return current


def region_relations(spec: RegionSpec, start: int = 0) -> List[Polynomial]:
    """Three cleared continuant relations of a region, starting at corners start, start + 1, start + 2."""
    if spec.arity < 3:
        raise DiagramStructureError(f"region {spec.region} has arity {spec.arity}; relations need 3 or more")
    translations = spec.translation_polys()
    factors = spec.crossing_polys()
    return [cleared_continuant(translations, factors, start + j) for j in range(RELATIONS_PER_REGION)]


def region_equations(diagram: LinkDiagram, convention: Convention = CALIBRATED,
                     starts: Optional[Mapping[int, int]] = None) -> EquationSystem:
    """
    Generate the hyperbolicity equation system.

    Args:
        diagram: Oriented alternating diagram
        convention: Sign convention (the calibrated one unless calibrating)
        starts: Optional region id -> first corner of its relations (0 for regions not listed)

    Returns:
        EquationSystem with three relations per non-bigon region

    Raises:
        NonAlternatingError: if the diagram is not alternating
        DiagramStructureError: on impossible region arities
    """
    allocation = allocate_labels(diagram)
    side_map = side_expressions(diagram, allocation, convention)
    specs = []
    equations = []
    offsets = {}
    for region in diagram.regions:
        if region.arity < 2:
            raise DiagramStructureError(f"region {region.id} has arity {region.arity}")
        if region.is_bigon:
            continue
        spec = region_spec(diagram, region, side_map, allocation, convention)
        specs.append(spec)
        start = (starts or {}).get(region.id, 0) % region.arity
        if start:
            offsets[region.id] = start
        for index, poly in enumerate(region_relations(spec, start), start=1):
            equations.append(Equation(poly, region.id, index))
    system = EquationSystem(allocation.variables, tuple(equations), side_map, tuple(specs),
                            convention, allocation, offsets)
    logger.info("Generated %s for %d regions", system, len(specs))
    return system


def as_values(assignment) -> np.ndarray:
    if hasattr(assignment, "values"):
        assignment = assignment.values
    return np.asarray(assignment, dtype=complex)


def evaluate_system(system: EquationSystem, assignment) -> Tuple[np.ndarray, np.ndarray]:
    """
    Residuals and analytic Jacobian of the system at a point.

    Args:
        system: EquationSystem
        assignment: Solution or sequence of complex values, one per variable

    Returns:
        (residual vector of length m, m x n Jacobian)
    """
    values = as_values(assignment)
    size = len(system.variables)
    residual = np.array([eq.polynomial.evaluate(values) for eq in system.equations], dtype=complex)
    jacobian = np.zeros((len(system.equations), size), dtype=complex)
    for row, eq in enumerate(system.equations):
        jacobian[row] = eq.polynomial.gradient(values, size)
    return residual, jacobian


def residual_norm(system: EquationSystem, assignment) -> float:
    residual, _ = evaluate_system(system, assignment)
    return float(np.max(np.abs(residual))) if residual.size else 0.0


def xi_from_labels(translations: Sequence[complex], factors: Sequence[complex]) -> List[complex]:
    """xi_i = x_i / (t_i t_{i+1}) for one region walk."""
    k = len(translations)
    xis = []
    for i in range(k):
        denominator = translations[i] * translations[(i + 1) % k]
        if abs(denominator) <= ZERO_LABEL_TOL:
            raise DegenerateLabelError(f"translation product at corner {i} vanishes")
        xis.append(factors[i] / denominator)
    return xis


def xi_params(system: EquationSystem, region: Union[Region, int], assignment) -> List[complex]:
    """
    Corner parameters xi_i of a region at an assignment.

    Args:
        system: EquationSystem of the diagram
        region: Region or region id (arity 3 or more)
        assignment: Solution or value vector

    Returns:
        One xi per corner, in walk order

    Raises:
        DegenerateLabelError: if a translation in the region evaluates to zero
    """
    region_id = region.id if isinstance(region, Region) else region
    spec = system.spec_for(region_id)
    values = as_values(assignment)
    translations, factors = evaluate_spec(spec, values)
    return xi_from_labels(translations, factors)


def evaluate_spec(spec: RegionSpec, values) -> Tuple[List[complex], List[complex]]:
    translations = [complex(t.evaluate(values)) for t in spec.translations]
    factors = [complex(f * values[v]) for f, v in zip(spec.factors, spec.crossing_vars)]
    return translations, factors


def continuant(xis: Sequence[complex]) -> complex:
    """K(xi_1..xi_m) with K() = 1, K(a) = 1 - a, K(.., a, b) = K(.., a) - b K(..)."""
    previous, current = 1, 1
    for xi in xis:
        previous, current = current, current - xi * previous
    return current


def closure_relations_from_xi(xis: Sequence[complex], count: int = RELATIONS_PER_REGION) -> List[complex]:
    """Values of the closure relations written in xi; all vanish on a closed region."""
    k = len(xis)
    return [continuant([xis[(j + m) % k] for m in range(k - 2)]) for j in range(count)]


def translation_matrix(t: complex) -> np.ndarray:
    return np.array([[1, t], [0, 1]], dtype=complex)


def crossing_matrix(x: complex) -> np.ndarray:
    return np.array([[0, x], [-1, 0]], dtype=complex)


def holonomy_product(translations: Sequence[complex], factors: Sequence[complex]) -> np.ndarray:
    product = np.eye(2, dtype=complex)
    for t, x in zip(translations, factors):
        product = product @ translation_matrix(t) @ crossing_matrix(x)
    return product


def region_holonomy(system: EquationSystem, region: Union[Region, int], assignment) -> np.ndarray:
    """The 2x2 product around a region; a multiple of the identity at a solution."""
    region_id = region.id if isinstance(region, Region) else region
    translations, factors = evaluate_spec(system.spec_for(region_id), as_values(assignment))
    return holonomy_product(translations, factors)


def holonomy_defect(matrix: np.ndarray) -> float:
    """Distance of a 2x2 matrix from the scalar matrices, relative to its size."""
    scale = max(abs(matrix[0, 0]), abs(matrix[1, 1]), 1e-300)
    return float(max(abs(matrix[0, 1]), abs(matrix[1, 0]), abs(matrix[0, 0] - matrix[1, 1])) / scale)


def to_text(system: EquationSystem) -> str:
    """Human readable relations, one per line, grouped by region."""
    names = system.names
    lines = []
    for spec in system.specs:
        sides = ", ".join(t.to_string(names) for t in spec.translations)
        corners = ", ".join(("" if f > 0 else "-") + names[v] for f, v in zip(spec.factors, spec.crossing_vars))
        lines.append(f"# region {spec.region} (arity {spec.arity}): sides [{sides}] corners [{corners}]")
        for eq in system.equations:
            if eq.region == spec.region:
                lines.append(f"{eq.polynomial.to_string(names.__getitem__)} = 0")
    return "\n".join(lines)


def to_json(system: EquationSystem) -> Dict:
    """JSON-ready export with variables, monomial lists and provenance."""
    names = system.names

    def coeff(c):
        c = complex(c)
        return [c.real, c.imag]

    return {
        "convention": {"plain_side": system.convention.plain_side,
                       "crossing_factor": system.convention.crossing_factor},
        "variables": [
            {"name": var.name, "kind": var.kind, "provenance": list(var.provenance)}
            for var in system.variables
        ],
        "equations": [
            {
                "region": eq.region,
                "index": eq.index,
                "text": eq.polynomial.to_string(names.__getitem__),
                "terms": [
                    {"coefficient": coeff(c), "monomial": [[names[v], e] for v, e in m]}
                    for m, c in eq.polynomial.terms.items()
                ],
            }
            for eq in system.equations
        ],
        "sides": [
            {"edge": edge, "side": side, "expression": expr.to_string(names)}
            for (edge, side), expr in sorted(system.side_map.items())
        ],
    }


def dumps(system: EquationSystem) -> str:
    return json.dumps(to_json(system), indent=2)
