"""
Developing the two ideal polyhedra and their horoballs from the diagram labels.

Each region is drawn in a local frame: g_0 = I and g_{i+1} = g_i E(t_i) C(x_i), so vertex i
(the end of the region's i-th edge at its over- or underpass) sits at g_i(infinity) and the
side between vertices i and i+1 belongs to corner i. A region frame M_R places the region in
the boundary plane; regions are reached breadth first across the edges that are under (top
polyhedron) or over (bottom polyhedron) at the shared corner.
"""

import json
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..config.constants import ZERO_LABEL_TOL
from ..diagram import LinkDiagram, Region
from ..equations import EquationSystem, as_values, region_equations
from ..equations.system import evaluate_spec, region_spec
from ..errors import DevelopError
from .mobius import (
    INFINITY,
    crossing_turn,
    horoball,
    inverse,
    normalize,
    projective_distance,
    to_complex,
    translation,
)

logger = logging.getLogger(__name__)

TOP = "top"
BOTTOM = "bottom"
KINDS = (TOP, BOTTOM)

Side = Tuple[int, int]  # (region id, corner index)


@dataclass(frozen=True)
class RegionWalk:
    """Evaluated labels and local frames of one region."""

    region: int
    edges: Tuple[int, ...]
    crossings: Tuple[int, ...]
    translations: Tuple[complex, ...]
    factors: Tuple[complex, ...]
    frames: Tuple[np.ndarray, ...]

    @property
    def arity(self) -> int:
        return len(self.edges)

    def local_point(self, i: int) -> np.ndarray:
        return self.frames[i % self.arity] @ INFINITY

    def departure_frame(self, i: int) -> np.ndarray:
        """g_i E(t_i): sends infinity to vertex i and 0 to vertex i + 1."""
        return self.frames[i % self.arity] @ translation(self.translations[i % self.arity])


def region_walks(diagram: LinkDiagram, system: EquationSystem, assignment) -> Dict[int, RegionWalk]:
    """Local polygon data of every region, bigons included."""
    values = as_values(assignment)
    walks = {}
    for region in diagram.regions:
        spec = region_spec(diagram, region, system.side_map, system.allocation, system.convention)
        translations, factors = evaluate_spec(spec, values)
        frames = [np.eye(2, dtype=complex)]
        for t, x in zip(translations[:-1], factors[:-1]):
            frames.append(frames[-1] @ translation(t) @ crossing_turn(x))
        walks[region.id] = RegionWalk(region.id, region.edges, region.crossings, tuple(translations),
                                      tuple(factors), tuple(frames))
    return walks


def vertex_crossing(diagram: LinkDiagram, edge: int, kind: str) -> int:
    """Crossing whose overpass (top) or underpass (bottom) is the vertex an edge ends at."""
    end = diagram.over_end(edge) if kind == TOP else diagram.under_end(edge)
    return end[0]


def glued_side(diagram: LinkDiagram, region: Region, corner: int, kind: str) -> Side:
    """
    The side of the neighbouring region glued to side `corner` of `region`.

    The top polyhedron is glued across the edge passing under at the corner's crossing, the
    bottom one across the edge passing over.
    """
    k = region.arity
    arriving = region.incidences[corner]
    arriving_under = arriving.arrival[1] % 2 == 0
    across_arriving = arriving_under if kind == TOP else not arriving_under
    position = corner if across_arriving else (corner + 1) % k
    neighbour, other = diagram.region_across(region, position)
    if across_arriving:
        # the neighbour leaves the crossing along the same edge
        return neighbour.id, (other - 1) % neighbour.arity
    return neighbour.id, other


@dataclass
class Development:
    """One developed polyhedron."""

    kind: str
    walks: Dict[int, RegionWalk]
    region_frames: Dict[int, np.ndarray]
    vertices: Dict[Side, int]
    gluing: Dict[Side, Side]
    order: List[int]
    mismatch: float = 0.0
    null_arcs: List[Side] = field(default_factory=list)

    def vertex_frame(self, region: int, i: int) -> np.ndarray:
        walk = self.walks[region]
        return self.region_frames[region] @ walk.frames[i % walk.arity]

    def vertex_point(self, region: int, i: int) -> np.ndarray:
        return self.region_frames[region] @ self.walks[region].local_point(i)

    def positions(self) -> Dict[int, np.ndarray]:
        """Homogeneous position of every vertex, from its first region in development order."""
        placed: Dict[int, np.ndarray] = {}
        for region in self.order:
            for i in range(self.walks[region].arity):
                placed.setdefault(self.vertices[(region, i)], self.vertex_point(region, i))
        return placed


def develop_polyhedron(diagram: LinkDiagram, walks: Dict[int, RegionWalk], base_frame: np.ndarray,
                       base_region: int, kind: str) -> Development:
    vertices = {}
    for region in diagram.regions:
        for i, edge in enumerate(region.edges):
            vertices[(region.id, i)] = vertex_crossing(diagram, edge, kind)

    frames = {base_region: normalize(base_frame)}
    gluing: Dict[Side, Side] = {}
    order = [base_region]
    queue = deque([base_region])
    mismatch = 0.0
    null_arcs: List[Side] = []
    while queue:
        region_id = queue.popleft()
        region = diagram.regions[region_id]
        walk = walks[region_id]
        for corner in range(region.arity):
            neighbour_id, j = glued_side(diagram, region, corner, kind)
            gluing[(region_id, corner)] = (neighbour_id, j)
            neighbour = walks[neighbour_id]
            try:
                predicted = normalize(frames[region_id] @ walk.departure_frame(corner)
                                      @ inverse(neighbour.frames[(j + 1) % neighbour.arity]))
            except DevelopError:
                null_arcs.append((region_id, corner))
                continue
            if neighbour_id not in frames:
                frames[neighbour_id] = predicted
                order.append(neighbour_id)
                queue.append(neighbour_id)
            else:
                mismatch = max(mismatch, projective_distance(predicted, frames[neighbour_id]))
    missing = [r.id for r in diagram.regions if r.id not in frames]
    if missing:
        logger.warning("%s polyhedron: regions %s could not be placed", kind, missing)
    logger.debug("%s polyhedron developed, frame mismatch %.2e", kind, mismatch)
    return Development(kind, walks, frames, vertices, gluing, order, mismatch, null_arcs)


@dataclass(frozen=True)
class Horoball:
    vertex: str  # "over:<crossing>" or "under:<crossing>"
    center: Optional[complex]  # None for the vertex at infinity
    diameter: float  # height of the horizontal plane for the vertex at infinity
    meridian: complex

    def to_dict(self) -> Dict:
        return {
            "vertex": self.vertex,
            "center": None if self.center is None else [self.center.real, self.center.imag],
            "diameter": self.diameter,
            "meridian": [self.meridian.real, self.meridian.imag],
            "infinite": self.center is None,
        }


@dataclass
class HoroballConfig:
    """
    Horoballs at the over- and underpass vertices of both polyhedra.

    Attributes:
        base_region: Region the development started from
        horoballs: vertex name -> Horoball
        infinite_vertex: Vertex placed at infinity with height-1 horosphere
        null_arcs: (polyhedron, region, corner) where a zero crossing label merged two centers
    """

    base_region: int
    horoballs: Dict[str, Horoball]
    infinite_vertex: str
    developments: Dict[str, Development]
    system: EquationSystem
    diagram: LinkDiagram
    null_arcs: List[Tuple[str, int, int]] = field(default_factory=list)

    @property
    def mismatch(self) -> float:
        return max(d.mismatch for d in self.developments.values())

    def to_json(self) -> Dict:
        return {
            "base_region": self.base_region,
            "infinite_vertex": self.infinite_vertex,
            "horoballs": [ball.to_dict() for ball in self.horoballs.values()],
            "null_arcs": [list(arc) for arc in self.null_arcs],
            "frame_mismatch": self.mismatch,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def vertex_name(kind: str, crossing: int) -> str:
    return f"{'over' if kind == TOP else 'under'}:{crossing}"


def default_base_region(diagram: LinkDiagram) -> int:
    for region in diagram.regions:
        if region.arity >= 3:
            return region.id
    raise DevelopError("no region with three or more corners")


def develop(diagram: LinkDiagram, solution, base_region: Optional[int] = None,
            system: Optional[EquationSystem] = None) -> HoroballConfig:
    """
    Place both polyhedra and their horoballs starting from one region.

    The base region's first vertex goes to infinity with the height-1 horosphere and unit
    meridian; its second vertex lands at 0 with diameter |x_0| and meridian -x_0/|x_0|.

    Args:
        diagram: Oriented alternating diagram
        solution: Solution or value vector
        base_region: Region id with arity 3 or more (first such region by default)
        system: EquationSystem of the diagram (generated when omitted)

    Returns:
        HoroballConfig

    Raises:
        DevelopError: for a bigon base region or when every crossing label is zero
    """
    system = system or region_equations(diagram)
    values = as_values(solution)
    crossing_ids = [var.id for var in system.allocation.crossing_variables()]
    if np.all(np.abs(values[crossing_ids]) <= ZERO_LABEL_TOL):
        raise DevelopError("every crossing label is zero: the picture collapses to one horosphere")
    if base_region is None:
        base_region = default_base_region(diagram)
    if not 0 <= base_region < len(diagram.regions):
        raise DevelopError(f"unknown base region {base_region}")
    if diagram.regions[base_region].arity < 3:
        raise DevelopError(f"base region {base_region} is a bigon")

    walks = region_walks(diagram, system, values)
    base_frame = translation(-walks[base_region].translations[0])
    developments = {kind: develop_polyhedron(diagram, walks, base_frame, base_region, kind) for kind in KINDS}

    horoballs: Dict[str, Horoball] = {}
    null_arcs = []
    for kind, development in developments.items():
        null_arcs.extend((kind, region, corner) for region, corner in development.null_arcs)
        for region in development.order:
            for i in range(walks[region].arity):
                name = vertex_name(kind, development.vertices[(region, i)])
                if name in horoballs:
                    continue
                try:
                    center, diameter, meridian = horoball(development.vertex_frame(region, i))
                except DevelopError:
                    continue
                horoballs[name] = Horoball(name, center, diameter, meridian)
    infinite = vertex_name(TOP, developments[TOP].vertices[(base_region, 0)])
    if null_arcs:
        logger.warning("%d null arcs from zero crossing labels", len(null_arcs))
    return HoroballConfig(base_region, horoballs, infinite, developments, system, diagram, null_arcs)


def point_of(config: HoroballConfig, name: str) -> Optional[complex]:
    ball = config.horoballs.get(name)
    if ball is None:
        raise DevelopError(f"vertex {name} was not placed")
    return ball.center


def placed_positions(config: HoroballConfig, kind: str = TOP) -> Dict[int, Optional[complex]]:
    return {vertex: to_complex(h) for vertex, h in config.developments[kind].positions().items()}
