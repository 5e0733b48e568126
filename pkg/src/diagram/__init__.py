"""
Link diagrams: PD parsing, regions, classification and orientation.
"""

from .link import (
    Crossing,
    DiagramReport,
    Edge,
    Incidence,
    LinkDiagram,
    Region,
    build_diagram,
    classify,
    faces,
    orient,
    require_alternating,
    twist_classes,
)
from .pd import parse_pd, parse_pd_codes, pd_code, pd_json

__all__ = [
    'Crossing', 'DiagramReport', 'Edge', 'Incidence', 'LinkDiagram', 'Region',
    'build_diagram', 'classify', 'faces', 'orient', 'require_alternating', 'twist_classes',
    'parse_pd', 'parse_pd_codes', 'pd_code', 'pd_json',
]
