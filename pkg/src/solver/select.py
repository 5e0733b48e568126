"""
Choosing the geometric branch among solver roots.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from ..config.constants import ZERO_LABEL_TOL
from ..diagram import LinkDiagram
from ..equations import EquationSystem, region_equations
from ..geometry.conditions import (
    PASS,
    check_convexity,
    check_nonreal_crossing,
    check_orientation,
    check_pass_corners,
)
from .solution import Solution

logger = logging.getLogger(__name__)

NO_CANDIDATE = "condition (c) candidate failure"


@dataclass(frozen=True)
class Selection:
    solution: Optional[Solution]
    candidates: int
    diagnostic: str = ""


def conjugate(solution: Solution) -> Solution:
    """The complex-conjugate root; the relations have real coefficients."""
    return Solution(np.conj(solution.values), solution.names, solution.residual, 0,
                    solution.start_index, solution.notes + ("conjugate",))


def _degenerate(solution: Solution, system: EquationSystem) -> bool:
    crossing_ids = [var.id for var in system.allocation.crossing_variables()]
    return bool(np.any(np.abs(solution.values[crossing_ids]) <= ZERO_LABEL_TOL))


def select_geometric(solutions: Sequence[Solution], diagram: LinkDiagram,
                     system: Optional[EquationSystem] = None) -> Selection:
    """
    Keep solutions whose first non-real edge label has positive imaginary part, then prefer
    those passing condition (b), then those also passing (c) and cross-section convexity, then
    the smallest residual.
    """
    system = system or region_equations(diagram)
    candidates: List[Solution] = []
    nonreal = 0
    for solution in solutions:
        if _degenerate(solution, system):
            continue
        verdict = check_orientation(diagram, system, solution)
        if verdict.verdict == PASS:
            candidates.append(solution)
        nonreal += verdict.verdict != "VACUOUS"
    if nonreal == 0:
        logger.warning("No solution has a non-real edge label: %s", NO_CANDIDATE)
        return Selection(None, 0, NO_CANDIDATE)
    if not candidates:
        return Selection(None, 0, "only conjugate-branch solutions found")

    passing = [s for s in candidates if check_pass_corners(diagram, system, s).passed]
    complete = [s for s in passing if check_nonreal_crossing(diagram, system, s).passed
                and check_convexity(diagram, system, s).passed]
    pool = complete or passing or candidates
    best = min(pool, key=lambda s: s.residual)
    diagnostic = ""
    if len(pool) > 1:
        diagnostic = f"{len(pool)} geometric candidates remain after conjugate pairing"
        logger.warning(diagnostic)
    return Selection(best, len(pool), diagnostic)


def pick_geometric(solutions: Sequence[Solution], diagram: LinkDiagram,
                   system: Optional[EquationSystem] = None) -> Optional[Solution]:
    """
    The solution on the geometric branch, or None.

    Args:
        solutions: Roots from solve
        diagram: The diagram they solve
        system: Its EquationSystem (generated when omitted)

    Returns:
        One solution of each conjugate pair at most; None when no root has a non-real edge label
    """
    return select_geometric(solutions, diagram, system).solution
