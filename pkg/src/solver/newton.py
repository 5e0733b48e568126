"""
Multi-start damped Newton for the hyperbolicity relations.

Steps are least-squares Gauss-Newton steps through a truncated pseudo-inverse, since the three
relations per region are not independent. Every start draws from its own generator seeded with
(seed, start index), so results do not depend on how starts are scheduled.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from ..cache import solution_cache_key
from ..config.constants import (
    DEDUP_DISTANCE,
    DIVERGENCE_BOUND,
    MAX_HALVINGS,
    PINV_RCOND,
    REFINE_MAX_MOVE,
    START_BOX,
)
from ..equations import EquationSystem, evaluate_system, residual_norm, to_text
from ..errors import ConvergenceError
from .solution import Solution, SolverConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NewtonOutcome:
    values: np.ndarray
    residual: float
    iterations: int
    converged: bool
    diverged: bool = False


@dataclass(frozen=True)
class SolveDiagnostics:
    starts: int
    converged: int
    diverged: int
    distinct: int
    best_residual: float
    cached: bool = False


def _norm(residual: np.ndarray) -> float:
    return float(np.max(np.abs(residual))) if residual.size else 0.0


def newton(system: EquationSystem, start: np.ndarray, max_iter: int, tolerance: float,
           max_halvings: int = MAX_HALVINGS) -> NewtonOutcome:
    """
    Damped Gauss-Newton iteration from one start.

    The step is halved until the residual norm decreases; after max_halvings the last trial
    step is taken anyway.
    """
    x = np.array(start, dtype=complex)
    residual, jacobian = evaluate_system(system, x)
    norm = _norm(residual)
    for iteration in range(max_iter):
        if norm < tolerance:
            return NewtonOutcome(x, norm, iteration, True)
        delta = -np.linalg.pinv(jacobian, rcond=PINV_RCOND) @ residual
        step = 1.0
        for _ in range(max_halvings + 1):
            candidate = x + step * delta
            trial_residual, trial_jacobian = evaluate_system(system, candidate)
            trial_norm = _norm(trial_residual)
            if trial_norm < norm:
                break
            step /= 2
        x, residual, jacobian, norm = candidate, trial_residual, trial_jacobian, trial_norm
        if not np.all(np.isfinite(x)) or np.max(np.abs(x), initial=0.0) > DIVERGENCE_BOUND:
            return NewtonOutcome(x, float("inf"), iteration + 1, False, diverged=True)
    return NewtonOutcome(x, norm, max_iter, norm < tolerance)


def random_start(size: int, seed: int, index: int) -> np.ndarray:
    rng = np.random.default_rng([seed, index])
    return rng.uniform(-START_BOX, START_BOX, size) + 1j * rng.uniform(-START_BOX, START_BOX, size)


def deduplicate(solutions: List[Solution], distance: float = DEDUP_DISTANCE) -> List[Solution]:
    """Keep the first of every group of solutions within distance of each other."""
    kept: List[Solution] = []
    for solution in solutions:
        if all(solution.distance(other) > distance for other in kept):
            kept.append(solution)
    return kept


def _cache_key(system: EquationSystem, config: SolverConfig) -> str:
    return solution_cache_key(to_text(system), config.cache_fields())


def solve_with_diagnostics(system: EquationSystem, config: Optional[SolverConfig] = None,
                           cache=None) -> Tuple[List[Solution], SolveDiagnostics]:
    """
    Run the multi-start search and report what happened.

    Args:
        system: EquationSystem with at least one equation and one variable
        config: SolverConfig (defaults when omitted)
        cache: Optional CacheLayer; results are stored under a digest of system and config

    Returns:
        (deduplicated converged solutions in start order, diagnostics)
    """
    config = config or SolverConfig()
    if not system.equations or not system.variables:
        raise ValueError(f"nothing to solve: {system!r}")

    names = tuple(system.names)
    key = None
    if cache is not None:
        key = _cache_key(system, config)
        stored = cache.get(key)
        if stored is not None:
            logger.info("Solver cache hit %s", key[:12])
            solutions = [Solution(entry["values"], names, entry["residual"], entry["iterations"],
                                  entry["start_index"]) for entry in stored["solutions"]]
            return solutions, SolveDiagnostics(**{**stored["diagnostics"], "cached": True})

    size = len(names)

    def run(index: int) -> NewtonOutcome:
        return newton(system, random_start(size, config.seed, index), config.max_iter,
                      config.tolerance, config.max_halvings)

    indices = range(config.starts)
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            outcomes = list(tqdm(pool.map(run, indices), total=config.starts,
                                 desc="starts", disable=not config.progress))
    else:
        outcomes = [run(i) for i in tqdm(indices, desc="starts", disable=not config.progress)]

    converged = []
    best = float("inf")
    diverged = 0
    for index, outcome in enumerate(outcomes):
        diverged += outcome.diverged
        best = min(best, outcome.residual)
        logger.debug("start %d: residual %.3e after %d iterations", index, outcome.residual, outcome.iterations)
        if outcome.converged:
            values = outcome.values
            converged.append(Solution(values, names, residual_norm(system, values), outcome.iterations, index))

    solutions = deduplicate(converged)
    diagnostics = SolveDiagnostics(config.starts, len(converged), diverged, len(solutions), best)
    if solutions:
        logger.info("Found %d distinct solutions from %d converged starts", len(solutions), len(converged))
    else:
        logger.warning("No start converged; best residual %.3e", best)

    if cache is not None:
        cache.set(key, {
            "solutions": [{"values": list(s.values), "residual": s.residual, "iterations": s.iterations,
                           "start_index": s.start_index} for s in solutions],
            "diagnostics": {"starts": diagnostics.starts, "converged": diagnostics.converged,
                            "diverged": diagnostics.diverged, "distinct": diagnostics.distinct,
                            "best_residual": diagnostics.best_residual},
        })
    return solutions, diagnostics


def solve(system: EquationSystem, config: Optional[SolverConfig] = None, cache=None) -> List[Solution]:
    """
    Solve the hyperbolicity relations from many random starts.

    Returns:
        Deduplicated converged solutions; empty when nothing converged (the best residual is logged)
    """
    solutions, _ = solve_with_diagnostics(system, config, cache)
    return solutions


def refine(system: EquationSystem, solution: Solution, tol: float, max_iter: int = 50,
           max_move: float = REFINE_MAX_MOVE) -> Solution:
    """
    Polish a solution with Newton steps.

    Args:
        system: EquationSystem the solution belongs to
        solution: Starting point, close to a root
        tol: Residual infinity-norm to reach
        max_iter: Iteration cap
        max_move: Largest allowed infinity-norm distance from the starting point

    Returns:
        A new Solution with residual below tol

    Raises:
        ConvergenceError: on divergence, on moving too far, or when tol is not reached;
            the error carries the unchanged input solution
    """
    start = np.array(solution.values, dtype=complex)
    outcome = newton(system, start, max_iter, tol)
    moved = float(np.max(np.abs(outcome.values - start), initial=0.0)) if outcome.values.size else 0.0
    if outcome.diverged or not outcome.converged:
        raise ConvergenceError("refinement did not converge", solution,
                               min(outcome.residual, solution.residual))
    if moved >= max_move:
        raise ConvergenceError(f"refinement moved {moved:.3f}, more than {max_move}", solution, outcome.residual)
    logger.debug("Refined in %d iterations to residual %.3e", outcome.iterations, outcome.residual)
    return Solution(outcome.values, solution.names, residual_norm(system, outcome.values),
                    outcome.iterations, solution.start_index, solution.notes)
