"""
End-to-end runs over one diagram: solve, check, develop, triangulate and certify.

Every function returns a result dict with `success` and `error` keys; library errors are
caught, logged and reported there instead of raised.
"""

import json
import logging
import os
from dataclasses import asdict
from typing import Any, Dict, Optional

from .diagram import LinkDiagram, parse_pd, pd_code
from .equations import EquationSystem, region_equations, to_json
from .errors import HyperlinkError
from .families import BraidSpec, braid_solution, region_arities
from .geometry import check_conditions, develop
from .solver import Solution, SolverConfig, select_geometric, solution_from_json, solve_with_diagnostics
from .triangulate import GEODESIC_ARCS, INCONCLUSIVE, Certificate, certify, compute_shapes, menasco, subdivide
from .triangulate import volume as triangulation_volume

logger = logging.getLogger(__name__)


def load_diagram(source: str) -> LinkDiagram:
    """A diagram from a PD file, or from the PD code itself when no such file exists."""
    if not os.path.isfile(source) and "X[" in source:
        return parse_pd(source)
    with open(source, "r", encoding="utf-8") as handle:
        return parse_pd(handle.read())


def load_solution(path: str, system: EquationSystem) -> Solution:
    """
    Read a solution written by `solve`: either one assignment or a solve result, whose
    geometric solution (or first one) is taken.

    Raises:
        HyperlinkError: if a variable of the system is missing from the file
    """
    with open(path, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    if "solutions" in data:
        if not data["solutions"]:
            raise HyperlinkError(f"{path} holds no solutions")
        index = data.get("geometric")
        data = data["solutions"][index if index is not None else 0]
    values, missing = solution_from_json(data, system.names)
    if missing:
        raise HyperlinkError(f"{path} has no value for {', '.join(missing)}")
    return Solution(values, system.names, float(data.get("residual", 0.0)),
                    int(data.get("iterations", 0)), int(data.get("start_index", -1)))


def solve_diagram(diagram: LinkDiagram, config: Optional[SolverConfig] = None, cache=None,
                  system: Optional[EquationSystem] = None) -> Dict[str, Any]:
    """
    Solve a diagram's relations and pick the geometric root.

    Returns:
        Dictionary containing:
        - solutions: Every distinct root, in start order
        - geometric: Index of the picked root, or None
        - diagnostic: Why nothing was picked, or a multiplicity warning
        - diagnostics: Solver counters
        - success: True when a geometric root was picked
    """
    try:
        system = system or region_equations(diagram)
        solutions, diagnostics = solve_with_diagnostics(system, config, cache)
        selection = select_geometric(solutions, diagram, system)
        geometric = None
        if selection.solution is not None:
            geometric = next(i for i, s in enumerate(solutions) if s is selection.solution)
        return {
            "pd": pd_code(diagram),
            "system": system,
            "solutions": solutions,
            "geometric": geometric,
            "diagnostic": selection.diagnostic,
            "diagnostics": asdict(diagnostics),
            "success": geometric is not None,
            "error": None,
        }
    except (HyperlinkError, ValueError) as e:
        logger.error("Solve failed: %s", e)
        return {"pd": None, "solutions": [], "geometric": None, "success": False, "error": str(e)}


def solve_export(result: Dict[str, Any]) -> Dict[str, Any]:
    return {
        "pd": result["pd"],
        "solutions": [s.to_json() for s in result["solutions"]],
        "geometric": result["geometric"],
        "diagnostic": result.get("diagnostic", ""),
        "diagnostics": result.get("diagnostics"),
    }


def _solution_for(diagram: LinkDiagram, system: EquationSystem, solution_path: Optional[str],
                  config: Optional[SolverConfig], cache) -> Dict[str, Any]:
    """A solution from a file, or the geometric root (falling back to the first root)."""
    if solution_path:
        return {"solution": load_solution(solution_path, system), "diagnostic": "", "error": None}
    solved = solve_diagram(diagram, config, cache, system)
    if solved["error"]:
        return {"solution": None, "diagnostic": "", "error": solved["error"]}
    solutions = solved["solutions"]
    if solved["geometric"] is not None:
        return {"solution": solutions[solved["geometric"]], "diagnostic": solved["diagnostic"], "error": None}
    # no geometric root: certify the first root anyway so the failing condition is reported
    return {"solution": solutions[0] if solutions else None, "diagnostic": solved["diagnostic"], "error": None}


def check_diagram(diagram: LinkDiagram, solution_path: Optional[str] = None,
                  config: Optional[SolverConfig] = None, cache=None) -> Dict[str, Any]:
    try:
        system = region_equations(diagram)
        found = _solution_for(diagram, system, solution_path, config, cache)
        if found["solution"] is None:
            return {"report": None, "success": False, "error": found["error"] or "no solution found"}
        report = check_conditions(diagram, found["solution"], system)
        return {"report": report, "solution": found["solution"], "success": report.passed, "error": None}
    except HyperlinkError as e:
        logger.error("Check failed: %s", e)
        return {"report": None, "success": False, "error": str(e)}


def certify_diagram(diagram: LinkDiagram, solution_path: Optional[str] = None,
                    config: Optional[SolverConfig] = None, cache=None, base_region: Optional[int] = None,
                    alternate: bool = False) -> Dict[str, Any]:
    """
    Certify a diagram from a stored solution, or from a fresh solve.

    Returns:
        Dictionary containing:
        - certificate: Certificate, or None when no solution was available
        - conclusion: GEODESIC_ARCS, FAIL or INCONCLUSIVE
        - success: True for GEODESIC_ARCS
    """
    try:
        system = region_equations(diagram)
        found = _solution_for(diagram, system, solution_path, config, cache)
        if found["error"]:
            return {"certificate": None, "conclusion": None, "success": False, "error": found["error"]}
        if found["solution"] is None:
            logger.warning("No root converged; certificate is inconclusive")
            return {"certificate": None, "conclusion": INCONCLUSIVE, "success": False,
                    "error": None, "diagnostic": "no solution converged"}
        certificate: Certificate = certify(diagram, found["solution"], system, base_region, alternate)
        return {
            "certificate": certificate,
            "conclusion": certificate.conclusion,
            "solution": found["solution"],
            "diagnostic": found["diagnostic"],
            "success": certificate.conclusion == GEODESIC_ARCS,
            "error": None,
        }
    except HyperlinkError as e:
        logger.error("Certify failed: %s", e)
        return {"certificate": None, "conclusion": None, "success": False, "error": str(e)}


def develop_diagram(diagram: LinkDiagram, solution_path: Optional[str] = None,
                    config: Optional[SolverConfig] = None, cache=None,
                    base_region: Optional[int] = None) -> Dict[str, Any]:
    try:
        system = region_equations(diagram)
        found = _solution_for(diagram, system, solution_path, config, cache)
        if found["solution"] is None:
            return {"config": None, "success": False, "error": found["error"] or "no solution found"}
        placed = develop(diagram, found["solution"], base_region, system)
        return {"config": placed, "success": True, "error": None}
    except HyperlinkError as e:
        logger.error("Develop failed: %s", e)
        return {"config": None, "success": False, "error": str(e)}


def volume_diagram(diagram: LinkDiagram, solution_path: Optional[str] = None,
                   config: Optional[SolverConfig] = None, cache=None,
                   base_region: Optional[int] = None) -> Dict[str, Any]:
    """Triangulate with shapes and sum the tetrahedron volumes."""
    try:
        system = region_equations(diagram)
        found = _solution_for(diagram, system, solution_path, config, cache)
        if found["solution"] is None:
            return {"triangulation": None, "volume": None, "success": False,
                    "error": found["error"] or "no solution found"}
        tri = subdivide(menasco(diagram), found["solution"], system, base_region=base_region)
        compute_shapes(tri)
        total = triangulation_volume(tri)
        return {"triangulation": tri, "volume": total, "success": True, "error": None}
    except HyperlinkError as e:
        logger.error("Volume failed: %s", e)
        return {"triangulation": None, "volume": None, "success": False, "error": str(e)}


def braid_family(spec: BraidSpec, config: Optional[SolverConfig] = None, cache=None,
                 strict: bool = False) -> Dict[str, Any]:
    try:
        result = braid_solution(spec, config, cache, strict)
        export = result.to_json()
        export["pd"] = pd_code(result.diagram)
        export["arities"] = {str(k): v for k, v in region_arities(result.diagram).items()}
        return {"braid": result, "export": export, "success": True, "error": None}
    except HyperlinkError as e:
        logger.error("Braid failed: %s", e)
        return {"braid": None, "export": None, "success": False, "error": str(e)}


def equations_diagram(diagram: LinkDiagram) -> Dict[str, Any]:
    try:
        system = region_equations(diagram)
        return {"system": system, "export": to_json(system), "success": True, "error": None}
    except HyperlinkError as e:
        logger.error("Equations failed: %s", e)
        return {"system": None, "export": None, "success": False, "error": str(e)}
