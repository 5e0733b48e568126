"""
Solver configuration and solution values.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field

from ..config.constants import DEFAULT_MAX_ITER, DEFAULT_STARTS, DEFAULT_TOLERANCE, MAX_HALVINGS


class SolverConfig(BaseModel):
    """Multi-start Newton settings. CLI flags map onto these fields one to one."""

    starts: int = Field(DEFAULT_STARTS, ge=1)
    max_iter: int = Field(DEFAULT_MAX_ITER, ge=1)
    tolerance: float = Field(DEFAULT_TOLERANCE, gt=0)
    seed: int = 0
    # halve the Newton step until the residual drops, at most this many times
    max_halvings: int = Field(MAX_HALVINGS, ge=0)
    workers: int = Field(1, ge=1)
    progress: bool = False

    def cache_fields(self) -> Dict:
        return {"starts": self.starts, "max_iter": self.max_iter, "tolerance": self.tolerance,
                "seed": self.seed, "max_halvings": self.max_halvings}


@dataclass(frozen=True, eq=False)
class Solution:
    """
    An assignment of complex values to the label variables.

    Attributes:
        values: One complex value per variable, in EquationSystem order (read-only array)
        names: Variable names, parallel to values
        residual: Infinity-norm of the relations at values
        iterations: Newton iterations spent
        start_index: Index of the random start that produced it (-1 when not from solve)
    """

    values: np.ndarray
    names: Tuple[str, ...]
    residual: float
    iterations: int = 0
    start_index: int = -1
    notes: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "names", tuple(self.names))
        if len(values) != len(self.names):
            raise ValueError(f"{len(values)} values for {len(self.names)} variables")

    def __getitem__(self, name: str) -> complex:
        return complex(self.values[self.names.index(name)])

    def as_dict(self) -> Dict[str, complex]:
        return {name: complex(value) for name, value in zip(self.names, self.values)}

    def to_json(self) -> Dict:
        return {
            "assignment": {name: [value.real, value.imag] for name, value in self.as_dict().items()},
            "residual": self.residual,
            "iterations": self.iterations,
            "start_index": self.start_index,
        }

    def distance(self, other: "Solution") -> float:
        return float(np.max(np.abs(self.values - other.values))) if len(self.values) else 0.0

    def __repr__(self) -> str:
        return f"Solution(residual={self.residual:.2e}, iterations={self.iterations}, start={self.start_index})"


def solution_from_json(data: Dict, names: Sequence[str]) -> Tuple[List[complex], List[str]]:
    """
    Read an exported assignment back, in the variable order of a system.

    Returns:
        (values, missing names)
    """
    assignment = data.get("assignment", data)
    values = []
    missing = []
    for name in names:
        if name not in assignment:
            missing.append(name)
            values.append(0j)
            continue
        entry = assignment[name]
        values.append(complex(entry[0], entry[1]) if isinstance(entry, (list, tuple)) else complex(entry))
    return values, missing
