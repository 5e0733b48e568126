"""
The two ideal polyhedra of a reduced alternating diagram.

Both polyhedra have one face per non-bigon region and one ideal vertex per crossing: the
overpass for the polyhedron above the diagram, the underpass for the one below. A region side
between the ends of two consecutive edges is a polyhedron edge; sides are merged across the
neighbouring region and across bigons, which collapse to single edges.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from ..diagram import LinkDiagram, classify, require_alternating
from ..errors import DiagramStructureError
from ..geometry.development import KINDS, Side, glued_side, vertex_crossing
from ..utils import UnionFind

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PolyhedronEdge:
    root: Side
    ends: Tuple[int, int]
    sides: Tuple[Side, ...]
    crossings: Tuple[int, ...]  # crossings whose corners produced the merged sides


@dataclass(eq=False)
class IdealPolyhedron:
    """
    Attributes:
        kind: "top" (above the diagram) or "bottom"
        vertices: Crossing ids; vertex c is the overpass (top) or underpass (bottom) of crossing c
        faces: Non-bigon region id -> vertex ids in walk order
        corner_vertices: (region, corner) -> vertex id, bigons included
        gluing: (region, corner) -> glued (region, corner)
        side_classes: Polyhedron edges as classes of region sides
    """

    kind: str
    diagram: LinkDiagram
    vertices: Tuple[int, ...]
    faces: Dict[int, Tuple[int, ...]]
    corner_vertices: Dict[Side, int]
    gluing: Dict[Side, Side]
    side_classes: UnionFind

    def edges(self) -> List[PolyhedronEdge]:
        edges = []
        for members in self.side_classes.classes():
            members = tuple(sorted(members))
            region, corner = members[0]
            arity = self.diagram.regions[region].arity
            ends = (self.corner_vertices[(region, corner)], self.corner_vertices[(region, (corner + 1) % arity)])
            crossings = tuple(sorted({self.diagram.regions[r].incidences[i].crossing for r, i in members}))
            edges.append(PolyhedronEdge(self.side_classes.find(members[0]), ends, members, crossings))
        return edges

    def side_root(self, region: int, corner: int) -> Side:
        return self.side_classes.find((region, corner))

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.side_classes.classes()) + len(self.faces)

    @property
    def is_degenerate(self) -> bool:
        """Two faces or fewer: a pillow with no room for an ideal tetrahedron."""
        return len(self.faces) <= 2

    def __repr__(self) -> str:
        return (f"IdealPolyhedron({self.kind}, V={len(self.vertices)}, "
                f"E={len(self.side_classes.classes())}, F={len(self.faces)})")


def build_polyhedron(diagram: LinkDiagram, kind: str) -> IdealPolyhedron:
    corner_vertices: Dict[Side, int] = {}
    gluing: Dict[Side, Side] = {}
    faces: Dict[int, Tuple[int, ...]] = {}
    for region in diagram.regions:
        ids = tuple(vertex_crossing(diagram, edge, kind) for edge in region.edges)
        for corner, vertex in enumerate(ids):
            corner_vertices[(region.id, corner)] = vertex
            gluing[(region.id, corner)] = glued_side(diagram, region, corner, kind)
        if not region.is_bigon:
            faces[region.id] = ids

    classes = UnionFind(sorted(gluing))
    for side, other in gluing.items():
        if gluing.get(other) != side:
            raise DiagramStructureError(f"{kind} gluing of side {side} is not symmetric")
        classes.union(side, other)
    for region in diagram.regions:
        if region.is_bigon:
            classes.union((region.id, 0), (region.id, 1))

    polyhedron = IdealPolyhedron(kind, diagram, tuple(range(diagram.n)), faces, corner_vertices, gluing, classes)
    if polyhedron.euler_characteristic != 2:
        raise DiagramStructureError(f"{polyhedron!r} is not a sphere")
    return polyhedron


def menasco(diagram: LinkDiagram) -> Tuple[IdealPolyhedron, IdealPolyhedron]:
    """
    Decompose the complement of a reduced alternating diagram into two ideal polyhedra.

    Args:
        diagram: Reduced alternating diagram

    Returns:
        (polyhedron above, polyhedron below); their faces are paired by region id

    Raises:
        NonAlternatingError: if the diagram is not alternating
        DiagramStructureError: if it is not reduced
    """
    require_alternating(diagram)
    report = classify(diagram)
    if not report.reduced:
        raise DiagramStructureError(f"diagram has nugatory crossings {list(report.nugatory)}")
    top, bottom = (build_polyhedron(diagram, kind) for kind in KINDS)
    if top.is_degenerate:
        logger.warning("Polyhedra collapse to pillows: %r", top)
    logger.debug("Built %r and %r", top, bottom)
    return top, bottom
