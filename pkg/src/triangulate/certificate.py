"""
Certificate that the crossing arcs of a diagram are isotopic to simple geodesics.

certify runs every stage of the pipeline on one solution and turns each outcome, including
library errors, into a verdict. The conclusion is GEODESIC_ARCS only when every verdict passed.
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..config.constants import (
    ANGLE_MARGIN,
    AUDIT_TOL,
    FLAT_TOL,
    GLUING_TOL,
    REAL_TOL,
    SHAPE_IDENTITY_TOL,
)
from ..diagram import LinkDiagram
from ..equations import EquationSystem, region_equations, residual_norm
from ..errors import HyperlinkError, TriangulationError
from ..geometry import BOUNDARY, FAIL, PASS, VACUOUS, ConditionVerdict, check_conditions, cross_ratio_audit, develop
from .polyhedra import IdealPolyhedron, menasco
from .shapes import compute_shapes
from .subdivide import Triangulation, fan_variants, subdivide
from .verify import VerificationReport, verify_triangulation
from .volume import volume

logger = logging.getLogger(__name__)

GEODESIC_ARCS = "GEODESIC_ARCS"
INCONCLUSIVE = "INCONCLUSIVE"
SKIPPED = "SKIPPED"

CHECKS = (
    "condition_a", "condition_b", "condition_c", "convexity", "cross_ratio_audit",
    "shape_identities", "edge_gluing", "flatness", "completeness", "simplicity",
)
TRIANGULATION_CHECKS = CHECKS[5:]

TOLERANCES = {
    "real": REAL_TOL,
    "angle_margin": ANGLE_MARGIN,
    "cross_ratio": AUDIT_TOL,
    "shape_identity": SHAPE_IDENTITY_TOL,
    "gluing": GLUING_TOL,
    "flat": FLAT_TOL,
}


@dataclass
class Certificate:
    """
    Verdicts of every check on one solution, with the conclusion drawn from them.

    Attributes:
        verdicts: check name -> ConditionVerdict, in CHECKS order
        conclusion: GEODESIC_ARCS, FAIL or INCONCLUSIVE
        volume: Hyperbolic volume when the triangulation has no negative tetrahedra
        alternate: Outcome per alternate fan choice, when requested
    """

    verdicts: Dict[str, ConditionVerdict]
    conclusion: str
    residual: float
    tolerances: Dict[str, float] = field(default_factory=lambda: dict(TOLERANCES))
    volume: Optional[float] = None
    cross_ratio_deviation: Optional[float] = None
    tetrahedra: int = 0
    flat: List[int] = field(default_factory=list)
    alternate: Optional[List[Dict]] = None

    @property
    def passed(self) -> bool:
        return self.conclusion == GEODESIC_ARCS

    @property
    def alternate_agrees(self) -> Optional[bool]:
        """Whether every alternate fan reached the same triangulation verdict as the default."""
        if self.alternate is None:
            return None
        default = triangulation_verdict(self.verdicts)
        return all(item["verdict"] == default for item in self.alternate)

    def to_json(self) -> Dict:
        data = {
            "conclusion": self.conclusion,
            "verdicts": {name: verdict.to_dict() for name, verdict in self.verdicts.items()},
            "tolerances": self.tolerances,
            "residual": self.residual,
            "cross_ratio_deviation": self.cross_ratio_deviation,
            "volume": self.volume,
            "tetrahedra": self.tetrahedra,
            "flat": self.flat,
        }
        if self.alternate is not None:
            data["alternate"] = self.alternate
            data["alternate_agrees"] = self.alternate_agrees
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def conclude(verdicts: Dict[str, ConditionVerdict]) -> str:
    values = [item.verdict for item in verdicts.values()]
    if FAIL in values:
        return FAIL
    if any(value not in (PASS, VACUOUS) for value in values):
        return INCONCLUSIVE
    return GEODESIC_ARCS


def triangulation_verdict(verdicts: Dict[str, ConditionVerdict]) -> str:
    return conclude({name: verdicts[name] for name in TRIANGULATION_CHECKS if name in verdicts})


def _skipped(names, reason: str) -> Dict[str, ConditionVerdict]:
    return {name: ConditionVerdict(name, SKIPPED, [], reason) for name in names}


def _failed(names, exc: HyperlinkError) -> Dict[str, ConditionVerdict]:
    first, *rest = names
    verdicts = {first: ConditionVerdict(first, FAIL, [{"error": type(exc).__name__}], str(exc))}
    verdicts.update(_skipped(rest, f"{first} raised {type(exc).__name__}"))
    return verdicts


def _renamed(verdict: ConditionVerdict, name: str) -> ConditionVerdict:
    return ConditionVerdict(name, verdict.verdict, verdict.witnesses, verdict.message)


def _from_report(report: VerificationReport) -> Dict[str, ConditionVerdict]:
    return {item.name: item for item in report.verdicts}


def triangulate(polyhedra: Tuple[IdealPolyhedron, IdealPolyhedron], solution, system: EquationSystem,
                base_region: Optional[int] = None, apexes=None,
                cone_vertices=None) -> Tuple[Triangulation, VerificationReport]:
    """Subdivide, shape and verify one fan choice."""
    if any(p.is_degenerate for p in polyhedra):
        raise TriangulationError("polyhedra collapse to pillows: the diagram is not hyperbolic")
    tri = subdivide(polyhedra, solution, system, apexes=apexes, cone_vertices=cone_vertices,
                    base_region=base_region)
    compute_shapes(tri)
    return tri, verify_triangulation(tri)


def certify(diagram: LinkDiagram, solution, system: Optional[EquationSystem] = None,
            base_region: Optional[int] = None, alternate: bool = False,
            alternate_limit: Optional[int] = None) -> Certificate:
    """
    Run every check on a solution and conclude.

    Args:
        diagram: Oriented alternating diagram
        solution: Solution of the diagram's system
        system: EquationSystem of the diagram (generated when omitted)
        base_region: Region the development starts from
        alternate: Also triangulate with every alternate fan and cone choice
        alternate_limit: Stop after this many alternate choices

    Returns:
        Certificate; library errors become FAIL verdicts instead of propagating
    """
    system = system or region_equations(diagram)
    residual = residual_norm(system, solution)
    conditions = check_conditions(diagram, solution, system)
    verdicts = {
        "condition_a": _renamed(conditions.a, "condition_a"),
        "condition_b": _renamed(conditions.b, "condition_b"),
        "condition_c": _renamed(conditions.c, "condition_c"),
        "convexity": _renamed(conditions.convexity, "convexity"),
    }
    certificate = Certificate(verdicts, FAIL, residual)
    if conditions.c.verdict == FAIL:
        verdicts.update(_skipped(CHECKS[4:], "condition (c) failed"))
        logger.warning("Certificate FAIL: %s", conditions.c.message or "every crossing fraction is real")
        return certificate

    try:
        config = develop(diagram, solution, base_region, system)
        deviation = cross_ratio_audit(config, solution)
    except HyperlinkError as exc:
        verdicts.update(_failed(CHECKS[4:], exc))
        certificate.conclusion = conclude(verdicts)
        return certificate
    certificate.cross_ratio_deviation = deviation
    verdict = PASS if deviation <= AUDIT_TOL else FAIL
    verdicts["cross_ratio_audit"] = ConditionVerdict("cross_ratio_audit", verdict, [{"deviation": deviation}],
                                                     f"max deviation {deviation:.2e}")

    polyhedra = None
    chosen = None
    try:
        polyhedra = menasco(diagram)
        tri, report = triangulate(polyhedra, solution, system, config.base_region)
    except HyperlinkError as exc:
        verdicts.update(_failed(TRIANGULATION_CHECKS, exc))
    else:
        verdicts.update(_from_report(report))
        chosen = (tri.apexes, tri.cone_vertices)
        certificate.tetrahedra = len(tri.tetrahedra)
        certificate.flat = tri.flat
        if report.flatness.passed:
            certificate.volume = volume(tri)

    if alternate and polyhedra is not None:
        certificate.alternate = alternate_fans(polyhedra, solution, system, config.base_region, alternate_limit,
                                               chosen)
    certificate.conclusion = conclude(verdicts)
    if certificate.conclusion != GEODESIC_ARCS:
        failing = [name for name, item in verdicts.items() if item.verdict not in (PASS, VACUOUS)]
        logger.warning("Certificate %s: %s", certificate.conclusion, ", ".join(failing))
    elif verdicts["condition_b"].verdict == BOUNDARY:
        logger.info("Condition (b) sits on its boundary")
    return certificate


def alternate_fans(polyhedra: Tuple[IdealPolyhedron, IdealPolyhedron], solution, system: EquationSystem,
                   base_region: Optional[int] = None, limit: Optional[int] = None,
                   chosen: Optional[Tuple[Dict[int, int], Dict[str, int]]] = None) -> List[Dict]:
    """Triangulation verdict for every apex rule and cone vertex pair other than the chosen one."""
    outcomes = []
    for rule, apexes, cones in fan_variants(polyhedra):
        if chosen is not None and (apexes, cones) == chosen:
            continue
        if limit is not None and len(outcomes) >= limit:
            break
        entry = {"rule": rule, "cone_vertices": dict(cones)}
        try:
            tri, report = triangulate(polyhedra, solution, system, base_region, apexes, cones)
        except HyperlinkError as exc:
            entry.update(verdict=FAIL, error=str(exc))
        else:
            entry.update(verdict=conclude(_from_report(report)), tetrahedra=len(tri.tetrahedra),
                         flat=len(tri.flat))
        outcomes.append(entry)
    changed = sum(1 for item in outcomes if item["verdict"] != GEODESIC_ARCS)
    logger.info("Alternate fans: %d choices, %d without a geodesic verdict", len(outcomes), changed)
    return outcomes
