"""
Sufficient conditions for the crossing arcs to be geodesic, and cross-section convexity.

All quantities are read off the plain-side labels: for an edge, the value carried by the side to
the right of over -> under. At an overpass (underpass) the two relevant edges are the over
(under) strand's incoming edge, label v, and outgoing edge, label u.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..config.constants import ANGLE_MARGIN, REAL_TOL, ZERO_LABEL_TOL
from ..diagram import LinkDiagram
from ..equations import EquationSystem, as_values, plain_side_flag, region_equations

logger = logging.getLogger(__name__)

PASS = "PASS"
FAIL = "FAIL"
VACUOUS = "VACUOUS"
BOUNDARY = "BOUNDARY"


@dataclass
class ConditionVerdict:
    """Outcome of one condition with the witnesses it was decided on."""

    name: str
    verdict: str
    witnesses: List[Dict] = field(default_factory=list)
    message: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self) -> Dict:
        return {"name": self.name, "verdict": self.verdict, "witnesses": self.witnesses,
                "message": self.message}


@dataclass
class ConditionsReport:
    a: ConditionVerdict
    b: ConditionVerdict
    c: ConditionVerdict
    convexity: ConditionVerdict

    @property
    def verdicts(self) -> Dict[str, str]:
        return {item.name: item.verdict for item in (self.a, self.b, self.c, self.convexity)}

    @property
    def passed(self) -> bool:
        return (self.a.verdict in (PASS, VACUOUS) and self.b.passed and self.c.passed
                and self.convexity.passed)

    def to_dict(self) -> Dict:
        return {"a": self.a.to_dict(), "b": self.b.to_dict(), "c": self.c.to_dict(),
                "convexity": self.convexity.to_dict(), "passed": self.passed}


def _pair(z: complex) -> List[float]:
    return [float(z.real), float(z.imag)]


def checked_values(system: EquationSystem, assignment) -> np.ndarray:
    values = as_values(assignment)
    if len(values) != len(system.variables):
        raise ValueError(f"assignment has {len(values)} values, system has {len(system.variables)} variables")
    return values


def edge_label_values(diagram: LinkDiagram, system: EquationSystem, assignment) -> Dict[int, complex]:
    """Plain-side label value of every edge (constants for bigon edges)."""
    values = checked_values(system, assignment)
    labels = {}
    for edge in diagram.edges:
        flag = plain_side_flag(diagram, edge.id, system.convention)
        labels[edge.id] = complex(system.side_map[(edge.id, flag)].evaluate(values))
    return labels


def crossing_label_values(diagram: LinkDiagram, system: EquationSystem, assignment) -> Dict[int, complex]:
    values = as_values(assignment)
    allocation = system.allocation
    return {c: complex(values[allocation.crossing_var[c]]) for c in range(diagram.n)}


def pass_labels(diagram: LinkDiagram, labels: Dict[int, complex], crossing: int,
                over: bool) -> Tuple[complex, complex]:
    """(u, v): labels of the outgoing and incoming edge of an overpass or underpass."""
    u = labels[diagram.outgoing_edge(crossing, over)]
    v = labels[diagram.incoming_edge(crossing, over)]
    return u, v


def check_orientation(diagram: LinkDiagram, system: EquationSystem, assignment) -> ConditionVerdict:
    """Condition (a): the first non-real edge variable must have positive imaginary part."""
    values = as_values(assignment)
    for var in system.allocation.edge_variables():
        value = complex(values[var.id])
        if abs(value.imag) > REAL_TOL:
            witness = {"variable": var.name, "edge": var.provenance[0], "value": _pair(value)}
            if value.imag > 0:
                return ConditionVerdict("a", PASS, [witness])
            return ConditionVerdict("a", FAIL, [witness], f"Im {var.name} < 0: the conjugate branch")
    return ConditionVerdict("a", VACUOUS, [], "every edge label is purely real")


def _bigon_edges(system: EquationSystem) -> set:
    return {edge for edge, _ in system.allocation.bigon_sides}


def check_pass_corners(diagram: LinkDiagram, system: EquationSystem, assignment) -> ConditionVerdict:
    """
    Condition (b) at every overpass and underpass not incident to a bigon.

    With Im u > 0 both Im(-(v+1)/u) and Im(-(u+1)/v) must be positive; with Im u < 0 both
    Im(-v/(u+1)) and Im(-u/(v+1)). A real u is reported as a boundary case.
    """
    labels = edge_label_values(diagram, system, assignment)
    bigon_edges = _bigon_edges(system)
    failures: List[Dict] = []
    boundary: List[Dict] = []
    checked = 0
    for c in range(diagram.n):
        for over in (True, False):
            edges = (diagram.outgoing_edge(c, over), diagram.incoming_edge(c, over))
            if any(e in bigon_edges for e in edges):
                continue
            checked += 1
            u, v = pass_labels(diagram, labels, c, over)
            corner = {"crossing": c, "pass": "over" if over else "under", "u": _pair(u), "v": _pair(v)}
            if abs(u.imag) <= REAL_TOL:
                boundary.append(corner)
                continue
            try:
                if u.imag > 0:
                    fractions = (-(v + 1) / u, -(u + 1) / v)
                else:
                    fractions = (-v / (u + 1), -u / (v + 1))
            except ZeroDivisionError:
                failures.append({**corner, "reason": "zero denominator"})
                continue
            if not all(f.imag > 0 for f in fractions):
                failures.append({**corner, "fractions": [_pair(f) for f in fractions]})
    if failures:
        return ConditionVerdict("b", FAIL, failures, f"{len(failures)} of {checked} corners fail")
    if boundary:
        return ConditionVerdict("b", BOUNDARY, boundary, f"{len(boundary)} corners have a real label")
    return ConditionVerdict("b", PASS, [], f"{checked} corners checked")


def crossing_fractions(w: complex, overs: Tuple[complex, complex],
                       unders: Tuple[complex, complex]) -> List[Tuple[str, complex]]:
    """The fractions w/(u v), w/(u (v+1)), w/(v (u+1)) over both over and under labels."""
    fractions = []
    for i, u in enumerate(overs, start=1):
        for j, v in enumerate(unders, start=1):
            for form, denominator in ((f"w/(u{i}*v{j})", u * v),
                                      (f"w/(u{i}*(v{j}+1))", u * (v + 1)),
                                      (f"w/(v{j}*(u{i}+1))", v * (u + 1))):
                if abs(denominator) > ZERO_LABEL_TOL:
                    fractions.append((form, w / denominator))
    return fractions


def check_nonreal_crossing(diagram: LinkDiagram, system: EquationSystem, assignment) -> ConditionVerdict:
    """Condition (c): some crossing has a fraction with |Im| above the realness tolerance."""
    labels = edge_label_values(diagram, system, assignment)
    crossing_labels = crossing_label_values(diagram, system, assignment)
    for c, crossing in enumerate(diagram.crossings):
        overs = tuple(labels[e] for e in crossing.over_edges())
        unders = tuple(labels[e] for e in crossing.under_edges())
        for form, value in crossing_fractions(crossing_labels[c], overs, unders):
            if abs(value.imag) > REAL_TOL:
                return ConditionVerdict("c", PASS, [{"crossing": c, "fraction": form, "value": _pair(value)}])
    return ConditionVerdict("c", FAIL, [], "every crossing fraction is purely real")


def interior_angles(points: List[complex]) -> List[float]:
    """arg((next - X) / (prev - X)) at every vertex X of a closed polygon."""
    angles = []
    k = len(points)
    for i, point in enumerate(points):
        previous, following = points[i - 1], points[(i + 1) % k]
        angles.append(float(np.angle((following - point) / (previous - point))))
    return angles


def cross_section_polygon(u: complex, v: complex) -> List[complex]:
    """Cusp cross-section at a pass: 0, u+1, 1, -v with coincident corners merged."""
    polygon: List[complex] = []
    for point in (0j, u + 1, 1 + 0j, -v):
        if not polygon or abs(point - polygon[-1]) > ZERO_LABEL_TOL:
            polygon.append(point)
    if len(polygon) > 1 and abs(polygon[0] - polygon[-1]) <= ZERO_LABEL_TOL:
        polygon.pop()
    return polygon


def check_convexity(diagram: LinkDiagram, system: EquationSystem, assignment) -> ConditionVerdict:
    """Every cross-section must be strictly convex: all angles in (0, pi), or all in (-pi, 0)."""
    labels = edge_label_values(diagram, system, assignment)
    sections = []
    bad = 0
    for c in range(diagram.n):
        for over in (True, False):
            u, v = pass_labels(diagram, labels, c, over)
            polygon = cross_section_polygon(u, v)
            if len(polygon) < 3:
                sections.append({"crossing": c, "pass": "over" if over else "under", "degenerate": True})
                bad += 1
                continue
            angles = interior_angles(polygon)
            # either traversal direction; the sign of Im u decides which one a pass uses
            ok = (all(ANGLE_MARGIN < angle < np.pi - ANGLE_MARGIN for angle in angles)
                  or all(-np.pi + ANGLE_MARGIN < angle < -ANGLE_MARGIN for angle in angles))
            bad += not ok
            sections.append({"crossing": c, "pass": "over" if over else "under", "sides": len(polygon),
                             "angles": angles, "in_range": ok})
    verdict = PASS if bad == 0 else FAIL
    return ConditionVerdict("convexity", verdict, sections,
                            f"{bad} of {len(sections)} cross-sections out of range" if bad else "")


def check_conditions(diagram: LinkDiagram, solution, system: Optional[EquationSystem] = None) -> ConditionsReport:
    """
    Evaluate conditions (a), (b), (c) and cross-section convexity at a solution.

    Args:
        diagram: Oriented alternating diagram
        solution: Solution or value vector in the system's variable order
        system: EquationSystem of the diagram (generated when omitted)

    Returns:
        ConditionsReport

    Raises:
        ValueError: if the solution does not cover every variable
    """
    system = system or region_equations(diagram)
    checked_values(system, solution)
    report = ConditionsReport(
        a=check_orientation(diagram, system, solution),
        b=check_pass_corners(diagram, system, solution),
        c=check_nonreal_crossing(diagram, system, solution),
        convexity=check_convexity(diagram, system, solution),
    )
    for item in (report.a, report.b, report.c, report.convexity):
        if item.verdict not in (PASS, VACUOUS):
            logger.warning("Condition %s: %s %s", item.name, item.verdict, item.message)
    return report
