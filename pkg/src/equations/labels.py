"""
Label variables and side expressions.

Every non-bigon edge carries one free edge label u. The side of the edge to the right of the
edge directed from its over-crossing to its under-crossing ("plain side") reads u, the other
side reads u + 1. Both sides inside a bigon read 0, which pins the opposite sides of its two
edges to +1 or -1. Crossing labels are shared along bigon chains.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..diagram import LinkDiagram, require_alternating, twist_classes
from ..errors import DiagramStructureError
from .polynomial import Polynomial

logger = logging.getLogger(__name__)

SideKey = Tuple[int, int]  # (edge label, side flag of the region walk)


@dataclass(frozen=True)
class Convention:
    """
    Sign conventions for side labels and crossing factors.

    Attributes:
        plain_side: "right" or "left" of the edge directed from over- to under-crossing
        crossing_factor: "unit" multiplies crossing labels by +1, "sign" by the crossing sign
    """

    plain_side: str = "right"
    crossing_factor: str = "unit"

    def __post_init__(self):
        if self.plain_side not in ("right", "left"):
            raise ValueError(f"plain_side must be 'right' or 'left', got {self.plain_side!r}")
        if self.crossing_factor not in ("unit", "sign"):
            raise ValueError(f"crossing_factor must be 'unit' or 'sign', got {self.crossing_factor!r}")

    @classmethod
    def candidates(cls) -> List["Convention"]:
        return [cls(side, factor) for side in ("right", "left") for factor in ("unit", "sign")]


# Fixed by matching the generated relations of the 8_8^2 reference diagram.
CALIBRATED = Convention("right", "unit")


@dataclass(frozen=True)
class LabelVar:
    """A crossing or edge label variable."""

    kind: str  # "crossing" | "edge"
    id: int  # position in the solution vector
    name: str
    provenance: Tuple[int, ...]  # crossing ids, or (edge label,)

    def __repr__(self) -> str:
        return f"LabelVar({self.name}, {self.kind}, provenance={list(self.provenance)})"


@dataclass(frozen=True)
class SideExpr:
    """base + shift, where base is a label variable index or None for a constant."""

    var: Optional[int]
    shift: int

    def polynomial(self) -> Polynomial:
        if self.var is None:
            return Polynomial.constant(self.shift)
        return Polynomial.variable(self.var) + self.shift

    def evaluate(self, values) -> complex:
        base = 0 if self.var is None else values[self.var]
        return base + self.shift

    def to_string(self, names: List[str]) -> str:
        if self.var is None:
            return str(self.shift)
        if self.shift == 0:
            return names[self.var]
        return f"{names[self.var]}{self.shift:+d}"


@dataclass(frozen=True)
class LabelAllocation:
    """Variables of a diagram and where they live."""

    variables: Tuple[LabelVar, ...]
    crossing_var: Dict[int, int] = field(default_factory=dict)
    edge_var: Dict[int, int] = field(default_factory=dict)
    bigon_sides: Tuple[SideKey, ...] = ()

    @property
    def names(self) -> List[str]:
        return [var.name for var in self.variables]

    def crossing_variables(self) -> List[LabelVar]:
        return [var for var in self.variables if var.kind == "crossing"]

    def edge_variables(self) -> List[LabelVar]:
        return [var for var in self.variables if var.kind == "edge"]


def allocate_labels(diagram: LinkDiagram) -> LabelAllocation:
    """
    Allocate crossing and edge label variables.

    Args:
        diagram: Alternating diagram

    Returns:
        LabelAllocation with crossing variables first (w1, w2, ...), then edge variables (u1, ...)

    Raises:
        NonAlternatingError: if the diagram is not alternating
        DiagramStructureError: if an edge lies between two bigons
    """
    require_alternating(diagram)

    variables: List[LabelVar] = []
    crossing_var: Dict[int, int] = {}
    for members in twist_classes(diagram).classes():
        members = sorted(members)
        index = len(variables)
        variables.append(LabelVar("crossing", index, f"w{index + 1}", tuple(members)))
        for c in members:
            crossing_var[c] = index

    bigon_sides: List[SideKey] = []
    bigon_edges = set()
    for region in diagram.regions:
        if not region.is_bigon:
            continue
        for inc in region.incidences:
            if inc.edge in bigon_edges:
                raise DiagramStructureError(f"edge {inc.edge} lies between two bigons")
            bigon_edges.add(inc.edge)
            bigon_sides.append((inc.edge, inc.side))

    edge_var: Dict[int, int] = {}
    first_edge = len(variables)
    for edge in diagram.edges:
        if edge.id in bigon_edges:
            continue
        index = len(variables)
        variables.append(LabelVar("edge", index, f"u{index - first_edge + 1}", (edge.id,)))
        edge_var[edge.id] = index

    logger.debug("Allocated %d crossing and %d edge variables",
                 first_edge, len(variables) - first_edge)
    return LabelAllocation(tuple(variables), crossing_var, edge_var, tuple(bigon_sides))


def is_plain_side(diagram: LinkDiagram, edge_id: int, side: int, convention: Convention = CALIBRATED) -> bool:
    """Whether the side flag of an edge is the side carrying u rather than u + 1."""
    departure = diagram.edge(edge_id).ends[side]
    # the region walk from an under-end runs under -> over with the region on its left,
    # i.e. on the right of over -> under
    leaves_under = departure[1] % 2 == 0
    return leaves_under if convention.plain_side == "right" else not leaves_under


def plain_side_flag(diagram: LinkDiagram, edge_id: int, convention: Convention = CALIBRATED) -> int:
    return 0 if is_plain_side(diagram, edge_id, 0, convention) else 1


def side_expressions(diagram: LinkDiagram, allocation: Optional[LabelAllocation] = None,
                     convention: Convention = CALIBRATED) -> Dict[SideKey, SideExpr]:
    """
    Expression carried by each side of each edge.

    Args:
        diagram: Alternating diagram
        allocation: Labels from allocate_labels (allocated here when omitted)
        convention: Side convention

    Returns:
        Map (edge label, side flag) -> SideExpr, two entries per edge
    """
    if allocation is None:
        allocation = allocate_labels(diagram)
    bigon_sides = set(allocation.bigon_sides)
    side_map: Dict[SideKey, SideExpr] = {}
    for edge in diagram.edges:
        plain = plain_side_flag(diagram, edge.id, convention)
        if edge.id in allocation.edge_var:
            var = allocation.edge_var[edge.id]
            side_map[(edge.id, plain)] = SideExpr(var, 0)
            side_map[(edge.id, 1 - plain)] = SideExpr(var, 1)
            continue
        inner = 0 if (edge.id, 0) in bigon_sides else 1
        side_map[(edge.id, inner)] = SideExpr(None, 0)
        # u = 0 on the plain side gives u + 1 = 1 opposite; u + 1 = 0 gives u = -1
        side_map[(edge.id, 1 - inner)] = SideExpr(None, 1 if inner == plain else -1)
    return side_map
