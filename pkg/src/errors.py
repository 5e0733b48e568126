"""
Exception hierarchy for hyperlink-arcs.

Every error raised by the library derives from HyperlinkError so callers (and the CLI)
can map failures onto exit codes without catching unrelated exceptions.
"""

from typing import Any, Optional


class HyperlinkError(Exception):
    """Base class for all library errors."""


class DiagramParseError(HyperlinkError):
    """Malformed diagram code."""

    def __init__(self, message: str, position: Optional[int] = None):
        """
        Args:
            message: Human readable description
            position: Character offset of the offending token, when known
        """
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class DiagramStructureError(HyperlinkError):
    """The diagram parses but its incidences are inconsistent."""


class NonAlternatingError(DiagramStructureError):
    """An operation that needs an alternating diagram received something else."""


class OrientationError(HyperlinkError):
    """Wrong number of orientation flags."""


class DegenerateLabelError(HyperlinkError):
    """A label that must be non-zero evaluated to zero."""


class ConvergenceError(HyperlinkError):
    """Newton iteration failed; keeps the input so callers can retry."""

    def __init__(self, message: str, solution: Any = None, best_residual: float = float("inf")):
        self.solution = solution
        self.best_residual = best_residual
        super().__init__(f"{message} (best residual {best_residual:.3e})")


class DevelopError(HyperlinkError):
    """Horoball placement could not be carried out."""


class TriangulationError(HyperlinkError):
    """Subdivision, gluing or shape computation failed."""


class FamilyError(HyperlinkError):
    """Invalid braid family parameters."""
