"""
Closed alternating braids (s1 s3 ... s_{2k+1} s2^-1 s4^-1 ... s_{2k}^-1)^n and their labels.

A braid word is a list of non-zero integers, i for the generator s_i and -i for its inverse.
Strand positions are numbered 1..N from the top of the braid picture.
"""

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from ..config.constants import CLOSED_FORM_TOL
from ..diagram import LinkDiagram, build_diagram, classify
from ..equations import EquationSystem, evaluate_system, region_equations, residual_norm
from ..errors import ConvergenceError, FamilyError
from ..solver import Solution, SolverConfig, pick_geometric, solve

logger = logging.getLogger(__name__)

BASE = "base"
SUFFIXED = "suffixed"

CROSSING_LABEL = 0.5j
EDGE_LABEL = (-1 - 1j) / 2


@dataclass(frozen=True)
class BraidSpec:
    """
    One member of the family.

    Attributes:
        k: The braid has 2k + 2 strands
        n: Period, at least 2
        variant: "base", or "suffixed" for an extra s1 s3 ... s_{2k+1}
    """

    k: int = 1
    n: int = 2
    variant: str = BASE

    def __post_init__(self):
        if self.k < 1:
            raise FamilyError(f"k must be positive, got {self.k}")
        if self.n <= 1:
            raise FamilyError(f"the family needs n > 1, got {self.n}")
        if self.variant not in (BASE, SUFFIXED):
            raise FamilyError(f"unknown variant {self.variant!r}")

    @property
    def strands(self) -> int:
        return 2 * self.k + 2

    def __str__(self) -> str:
        return f"braid(k={self.k}, n={self.n}, {self.variant})"


def braid_word(spec: BraidSpec) -> List[int]:
    odd = list(range(1, 2 * spec.k + 2, 2))
    even = [-i for i in range(2, 2 * spec.k + 1, 2)]
    word = (odd + even) * spec.n
    if spec.variant == SUFFIXED:
        word += odd
    return word


def braid_closure(word: Sequence[int], strands: Optional[int] = None) -> List[Tuple[int, int, int, int]]:
    """
    PD code of the closure of a braid word.

    Every letter cuts the two strands it crosses; the arcs leaving the last letters are then
    joined to the arcs entering the first ones and the labels are renumbered 1..2n in order of
    first appearance.

    Raises:
        FamilyError: for an empty word, a generator out of range or a strand no letter touches
    """
    if not word:
        raise FamilyError("empty braid word")
    strands = strands or max(abs(g) for g in word) + 1
    if any(g == 0 or abs(g) >= strands for g in word):
        raise FamilyError(f"word {list(word)} does not fit on {strands} strands")

    initial = list(range(1, strands + 1))
    current = list(initial)
    fresh = strands + 1
    crossings = []
    for g in word:
        i = abs(g) - 1
        a, b = current[i], current[i + 1]
        c, d = fresh, fresh + 1
        fresh += 2
        # a enters at the upper position and leaves at the lower one as d; b goes up to c
        crossings.append([b, d, c, a] if g > 0 else [a, b, d, c])
        current[i], current[i + 1] = c, d

    closing = {end: start for end, start in zip(current, initial)}
    untouched = [p + 1 for p, (end, start) in enumerate(zip(current, initial)) if end == start]
    if untouched:
        raise FamilyError(f"strands {untouched} pass no crossing")
    renumber: Dict[int, int] = {}
    pd = []
    for crossing in crossings:
        entry = []
        for label in crossing:
            label = closing.get(label, label)
            entry.append(renumber.setdefault(label, len(renumber) + 1))
        pd.append(tuple(entry))
    return pd


def braid_diagram(spec: BraidSpec) -> LinkDiagram:
    """
    Closed braid of the family as an oriented diagram.

    Raises:
        FamilyError: if the closure is not a reduced alternating diagram
    """
    diagram = build_diagram(braid_closure(braid_word(spec), spec.strands))
    report = classify(diagram)
    if not report.alternating or not report.reduced:
        raise FamilyError(f"{spec} does not close to a reduced alternating diagram")
    logger.debug("%s: %d crossings, %d components", spec, diagram.n, len(diagram.components))
    return diagram


def region_arities(diagram: LinkDiagram) -> Dict[int, int]:
    """Number of regions of each arity."""
    counts: Dict[int, int] = defaultdict(int)
    for region in diagram.regions:
        counts[region.arity] += 1
    return dict(sorted(counts.items()))


def regular_region_shape(m: int) -> complex:
    """(sec(pi/m) / 2)^2, the corner parameter of a regular m-sided region."""
    if m < 3:
        raise FamilyError(f"regions have at least three sides, got {m}")
    return complex((0.5 / math.cos(math.pi / m)) ** 2)


def _closed_form_values(system: EquationSystem, diagram: LinkDiagram, flip: bool) -> np.ndarray:
    values = np.empty(len(system.variables), dtype=complex)
    for var in system.allocation.crossing_variables():
        sign = diagram.crossing_sign(var.provenance[0])
        values[var.id] = (-sign if flip else sign) * CROSSING_LABEL
    for var in system.allocation.edge_variables():
        values[var.id] = EDGE_LABEL
    return values


def bigon_adjacent(system: EquationSystem) -> Set[int]:
    """Regions with a side on a bigon; the constant side translation there is +-1, not a label."""
    return {spec.region for spec in system.specs if any(t.expr.var is None for t in spec.translations)}


def closed_form_residuals(system: EquationSystem, assignment,
                          regions: Optional[Set[int]] = None) -> Dict[int, float]:
    """Largest relation residual over the regions of each arity, optionally only over `regions`."""
    residual, _ = evaluate_system(system, assignment)
    arity = {spec.region: spec.arity for spec in system.specs}
    worst: Dict[int, float] = defaultdict(float)
    for value, eq in zip(residual, system.equations):
        if regions is not None and eq.region not in regions:
            continue
        k = arity[eq.region]
        worst[k] = max(worst[k], float(abs(value)))
    return dict(sorted(worst.items()))


def braid_closed_form(spec: BraidSpec, system: Optional[EquationSystem] = None) -> Solution:
    """
    The one-label assignment: crossing labels +-i/2 by crossing sign, edge labels (-1-i)/2.

    Every corner parameter it produces is +-1 or +-i. That closes a triangle whose sides all
    carry labels, but never a 4-sided region (1 - xi - xi' = 0 has no such root), and a triangle
    with a bigon side sees a translation of modulus 1 against crossing labels of modulus 1/2.
    Of the two global sign patterns the one closing more of the remaining triangles is kept; the
    residual per region arity is recorded in the solution's notes.
    """
    diagram = braid_diagram(spec)
    system = system or region_equations(diagram)
    free = {s.region for s in system.specs if s.arity == 3} - bigon_adjacent(system)
    best = None
    for flip in (False, True):
        values = _closed_form_values(system, diagram, flip)
        score = closed_form_residuals(system, values, free or None).get(3, 0.0)
        if best is None or score < best[0]:
            best = (score, values)
    _, values = best
    notes = [f"arity {k}: residual {r:.3e}" for k, r in closed_form_residuals(system, values).items()]
    if free:
        notes.append(f"triangles off the bigons: residual {closed_form_residuals(system, values, free)[3]:.3e}")
    return Solution(values, system.names, residual_norm(system, values), notes=tuple(notes))


@dataclass
class BraidSolution:
    spec: BraidSpec
    diagram: LinkDiagram
    system: EquationSystem
    solution: Solution
    closed_form: Solution
    source: str  # "closed_form" or "solver"
    fallback_reason: str = ""

    def to_json(self) -> Dict:
        return {
            "spec": {"k": self.spec.k, "n": self.spec.n, "variant": self.spec.variant},
            "source": self.source,
            "fallback_reason": self.fallback_reason,
            "closed_form_residual": self.closed_form.residual,
            "closed_form_notes": list(self.closed_form.notes),
            "solution": self.solution.to_json(),
        }


def _unsolved_arities(system: EquationSystem, closed: Solution) -> List[int]:
    return [k for k, r in closed_form_residuals(system, closed).items() if r >= CLOSED_FORM_TOL]


def braid_solution(spec: BraidSpec, config: Optional[SolverConfig] = None, cache=None,
                   strict: bool = False) -> BraidSolution:
    """
    Labels for a family member: the closed form when it solves the system, otherwise the
    geometric root found by the solver.

    Args:
        spec: Family member
        config: Solver settings for the fallback
        cache: Optional CacheLayer for the solver
        strict: Raise instead of falling back when the closed form leaves a residual

    Raises:
        FamilyError: with strict, when the closed form does not solve the system
        ConvergenceError: if the closed form fails and the solver finds no geometric root
    """
    diagram = braid_diagram(spec)
    system = region_equations(diagram)
    closed = braid_closed_form(spec, system)
    if closed.residual < CLOSED_FORM_TOL:
        return BraidSolution(spec, diagram, system, closed, closed, "closed_form")

    arities = ", ".join(str(k) for k in _unsolved_arities(system, closed))
    reason = f"closed form residual {closed.residual:.3e} on regions of arity {arities}"
    if strict:
        raise FamilyError(f"{spec}: {reason}")
    logger.warning("%s: %s; using the solver (%s)", spec, reason, "; ".join(closed.notes))
    picked = pick_geometric(solve(system, config, cache), diagram, system)
    if picked is None:
        raise ConvergenceError(f"no geometric solution for {spec}", closed, closed.residual)
    return BraidSolution(spec, diagram, system, picked, closed, "solver", reason)
