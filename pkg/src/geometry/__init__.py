"""
Geodesic-arc conditions, horoball development and cusp cross-sections.
"""

from .audit import AuditResult, audit_corners, cross_ratio_audit, cross_sections
from .conditions import (
    BOUNDARY,
    FAIL,
    PASS,
    VACUOUS,
    ConditionsReport,
    ConditionVerdict,
    check_conditions,
    edge_label_values,
)
from .development import (
    BOTTOM,
    TOP,
    Development,
    Horoball,
    HoroballConfig,
    RegionWalk,
    develop,
    region_walks,
)

__all__ = [
    'AuditResult', 'audit_corners', 'cross_ratio_audit', 'cross_sections',
    'BOUNDARY', 'FAIL', 'PASS', 'VACUOUS', 'ConditionsReport', 'ConditionVerdict', 'check_conditions',
    'edge_label_values', 'BOTTOM', 'TOP', 'Development', 'Horoball', 'HoroballConfig', 'RegionWalk',
    'develop', 'region_walks',
]
