"""
Hyperbolicity equations: label allocation, side expressions and region relations.
"""

from .calibration import (
    CalibrationResult,
    PrintedMatch,
    PrintedRegion,
    ReferenceRegion,
    calibrate,
    match_printed,
    match_reference,
)
from .labels import (
    CALIBRATED,
    Convention,
    LabelAllocation,
    LabelVar,
    SideExpr,
    allocate_labels,
    is_plain_side,
    plain_side_flag,
    side_expressions,
)
from .polynomial import Polynomial
from .system import (
    Equation,
    EquationSystem,
    RegionSpec,
    SignedSide,
    closure_relations_from_xi,
    continuant,
    evaluate_spec,
    evaluate_system,
    holonomy_defect,
    holonomy_product,
    region_equations,
    region_holonomy,
    region_relations,
    as_values,
    residual_norm,
    to_json,
    to_text,
    xi_from_labels,
    xi_params,
)

__all__ = [
    'CalibrationResult', 'PrintedMatch', 'PrintedRegion', 'ReferenceRegion', 'calibrate', 'match_printed',
    'match_reference',
    'CALIBRATED', 'Convention', 'LabelAllocation', 'LabelVar', 'SideExpr', 'allocate_labels',
    'is_plain_side', 'plain_side_flag', 'side_expressions', 'Polynomial',
    'Equation', 'EquationSystem', 'RegionSpec', 'SignedSide', 'closure_relations_from_xi',
    'continuant', 'evaluate_spec', 'evaluate_system', 'holonomy_defect', 'holonomy_product',
    'as_values', 'region_equations', 'region_holonomy', 'region_relations', 'residual_norm', 'to_json',
    'to_text', 'xi_from_labels', 'xi_params',
]
