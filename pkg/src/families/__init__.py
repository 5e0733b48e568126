"""
Families of closed alternating braids.
"""

from .braids import (
    BASE,
    SUFFIXED,
    BraidSolution,
    BraidSpec,
    bigon_adjacent,
    braid_closed_form,
    braid_closure,
    braid_diagram,
    braid_solution,
    braid_word,
    closed_form_residuals,
    region_arities,
    regular_region_shape,
)

__all__ = [
    'BASE', 'SUFFIXED', 'BraidSolution', 'BraidSpec', 'bigon_adjacent', 'braid_closed_form', 'braid_closure',
    'braid_diagram', 'braid_solution', 'braid_word', 'closed_form_residuals', 'region_arities',
    'regular_region_shape',
]
