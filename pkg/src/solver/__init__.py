"""
Numerical solution of the hyperbolicity relations.
"""

from .newton import SolveDiagnostics, deduplicate, newton, refine, solve, solve_with_diagnostics
from .select import NO_CANDIDATE, Selection, conjugate, pick_geometric, select_geometric
from .solution import Solution, SolverConfig, solution_from_json

__all__ = [
    'SolveDiagnostics', 'deduplicate', 'newton', 'refine', 'solve', 'solve_with_diagnostics',
    'NO_CANDIDATE', 'Selection', 'conjugate', 'pick_geometric', 'select_geometric',
    'Solution', 'SolverConfig', 'solution_from_json',
]
