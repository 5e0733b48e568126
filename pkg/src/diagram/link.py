"""
Oriented link diagrams and their regions.

A crossing lists the labels of its four incident edges counterclockwise, starting with the
incoming under-strand (the usual planar diagram convention). Slots 0 and 2 therefore carry
the under-strand and slots 1 and 3 the over-strand.

Regions are traced with the region on the left of every step, so each region comes out
counterclockwise. A step leaves a crossing through one slot, follows the edge to its other
end, and turns to the next slot clockwise there.
"""

import logging
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import DiagramStructureError, NonAlternatingError, OrientationError
from ..utils import UnionFind

logger = logging.getLogger(__name__)

End = Tuple[int, int]  # (crossing index, slot)


@dataclass(frozen=True)
class Crossing:
    """A crossing with its four edge labels in counterclockwise order."""

    id: int
    slots: Tuple[int, int, int, int]

    @staticmethod
    def is_over(slot: int) -> bool:
        return slot % 2 == 1

    def over_edges(self) -> Tuple[int, int]:
        return self.slots[1], self.slots[3]

    def under_edges(self) -> Tuple[int, int]:
        return self.slots[0], self.slots[2]


@dataclass(frozen=True)
class Edge:
    """An edge between two crossing slots; ends are stored tail first along the PD direction."""

    id: int
    ends: Tuple[End, End]
    component: int


@dataclass(frozen=True)
class Incidence:
    """One side of a region: the edge walked along and the corner reached at its end."""

    edge: int
    side: int  # 0 when the walk leaves from the edge's PD tail, 1 otherwise
    crossing: int
    departure: End
    arrival: End


@dataclass(frozen=True)
class Region:
    """A complementary region of the diagram, walked counterclockwise."""

    id: int
    incidences: Tuple[Incidence, ...]

    @property
    def arity(self) -> int:
        return len(self.incidences)

    @property
    def edges(self) -> Tuple[int, ...]:
        return tuple(inc.edge for inc in self.incidences)

    @property
    def crossings(self) -> Tuple[int, ...]:
        return tuple(inc.crossing for inc in self.incidences)

    @property
    def is_bigon(self) -> bool:
        return self.arity == 2

    def __repr__(self) -> str:
        return f"Region(id={self.id}, arity={self.arity}, edges={list(self.edges)})"


@dataclass(frozen=True)
class DiagramReport:
    """Outcome of classify()."""

    alternating: bool
    reduced: bool
    bigons: Tuple[int, ...]
    twist_reduced_warning: bool
    nugatory: Tuple[int, ...] = ()
    warnings: Tuple[str, ...] = ()

    def to_dict(self) -> Dict:
        return {
            "alternating": self.alternating,
            "reduced": self.reduced,
            "bigons": list(self.bigons),
            "twist_reduced_warning": self.twist_reduced_warning,
            "nugatory": list(self.nugatory),
            "warnings": list(self.warnings),
        }


@dataclass(frozen=True, eq=False)
class LinkDiagram:
    """
    A 4-valent planar link diagram with over/under data and an orientation.

    Attributes:
        crossings: Crossings in input order; a crossing's id is its index
        edges: Edges sorted by label
        components: Edge labels of each component in PD traversal order
        orientation: One flag per component; True follows the PD direction
    """

    crossings: Tuple[Crossing, ...]
    edges: Tuple[Edge, ...]
    components: Tuple[Tuple[int, ...], ...]
    orientation: Tuple[bool, ...]

    @property
    def n(self) -> int:
        return len(self.crossings)

    @cached_property
    def _edge_index(self) -> Dict[int, Edge]:
        return {edge.id: edge for edge in self.edges}

    def edge(self, edge_id: int) -> Edge:
        try:
            return self._edge_index[edge_id]
        except KeyError:
            raise DiagramStructureError(f"unknown edge {edge_id}") from None

    def edge_at(self, crossing: int, slot: int) -> int:
        return self.crossings[crossing].slots[slot]

    def other_end(self, edge_id: int, end: End) -> End:
        first, second = self.edge(edge_id).ends
        return second if end == first else first

    def is_forward(self, edge_id: int) -> bool:
        return self.orientation[self.edge(edge_id).component]

    def tail(self, edge_id: int) -> End:
        ends = self.edge(edge_id).ends
        return ends[0] if self.is_forward(edge_id) else ends[1]

    def head(self, edge_id: int) -> End:
        ends = self.edge(edge_id).ends
        return ends[1] if self.is_forward(edge_id) else ends[0]

    def is_alternating_edge(self, edge_id: int) -> bool:
        (_, s0), (_, s1) = self.edge(edge_id).ends
        return (s0 + s1) % 2 == 1

    def over_end(self, edge_id: int) -> End:
        """The end at which the edge passes over a crossing."""
        for end in self.edge(edge_id).ends:
            if Crossing.is_over(end[1]):
                return end
        raise NonAlternatingError(f"edge {edge_id} never passes over")

    def under_end(self, edge_id: int) -> End:
        """The end at which the edge passes under a crossing."""
        for end in self.edge(edge_id).ends:
            if not Crossing.is_over(end[1]):
                return end
        raise NonAlternatingError(f"edge {edge_id} never passes under")

    def incoming_slot(self, crossing: int, over: bool) -> int:
        """Slot through which the over (or under) strand enters the crossing."""
        candidates = (1, 3) if over else (0, 2)
        for slot in candidates:
            if self.head(self.edge_at(crossing, slot)) == (crossing, slot):
                return slot
        raise DiagramStructureError(f"crossing {crossing} has no incoming {'over' if over else 'under'} strand")

    def outgoing_edge(self, crossing: int, over: bool) -> int:
        return self.edge_at(crossing, (self.incoming_slot(crossing, over) + 2) % 4)

    def incoming_edge(self, crossing: int, over: bool) -> int:
        return self.edge_at(crossing, self.incoming_slot(crossing, over))

    def crossing_sign(self, crossing: int) -> int:
        """+1 when the over-strand passes from right to left of the under-strand's travel."""
        under_in = self.incoming_slot(crossing, over=False)
        over_in = self.incoming_slot(crossing, over=True)
        return 1 if over_in == (under_in + 3) % 4 else -1

    def component_of_strand(self, crossing: int, over: bool) -> int:
        slot = 1 if over else 0
        return self.edge(self.edge_at(crossing, slot)).component

    def writhe(self) -> int:
        return sum(self.crossing_sign(c) for c in range(self.n))

    def linking_number(self, first: int, second: int) -> int:
        """Linking number of two distinct components (half the signed count of their crossings)."""
        total = 0
        for c in range(self.n):
            pair = {self.component_of_strand(c, True), self.component_of_strand(c, False)}
            if pair == {first, second} and first != second:
                total += self.crossing_sign(c)
        return total // 2

    @cached_property
    def regions(self) -> Tuple[Region, ...]:
        return _trace_regions(self)

    @cached_property
    def region_of_dart(self) -> Dict[End, Tuple[int, int]]:
        """Map a departure (crossing, slot) to (region id, incidence index)."""
        index = {}
        for region in self.regions:
            for position, inc in enumerate(region.incidences):
                index[inc.departure] = (region.id, position)
        return index

    def region_across(self, region: Region, position: int) -> Tuple[Region, int]:
        """The region on the other side of an incidence, with the matching incidence index."""
        inc = region.incidences[position]
        region_id, other_position = self.region_of_dart[inc.arrival]
        return self.regions[region_id], other_position

    def to_pd(self) -> List[Tuple[int, int, int, int]]:
        return [crossing.slots for crossing in self.crossings]

    def __repr__(self) -> str:
        return (f"LinkDiagram(crossings={self.n}, edges={len(self.edges)}, "
                f"components={len(self.components)}, orientation={list(self.orientation)})")


def build_diagram(codes: Sequence[Sequence[int]]) -> LinkDiagram:
    """
    Build a diagram from PD quadruples.

    Args:
        codes: One 4-sequence of edge labels per crossing

    Returns:
        LinkDiagram oriented along the PD direction

    Raises:
        DiagramStructureError: if a label is not used exactly twice or the incidences do not
            form a connected planar 4-valent diagram
    """
    if not codes:
        raise DiagramStructureError("diagram has no crossings")
    crossings = []
    uses: Dict[int, List[End]] = {}
    for index, code in enumerate(codes):
        if len(code) != 4:
            raise DiagramStructureError(f"crossing {index} has {len(code)} incidences, expected 4")
        slots = tuple(int(label) for label in code)
        crossings.append(Crossing(index, slots))
        for slot, label in enumerate(slots):
            uses.setdefault(label, []).append((index, slot))

    bad = sorted(label for label, ends in uses.items() if len(ends) != 2)
    if bad:
        raise DiagramStructureError(f"edge labels used other than twice: {bad}")

    direction = _orient_edges(crossings, uses)
    components, membership = _walk_components(crossings, direction)
    edges = tuple(
        Edge(label, direction[label], membership[label]) for label in sorted(direction)
    )
    diagram = LinkDiagram(tuple(crossings), edges, components, tuple(True for _ in components))

    n = diagram.n
    if len(diagram.regions) != n + 2:
        raise DiagramStructureError(
            f"{len(diagram.regions)} regions for {n} crossings; a connected planar diagram has {n + 2}"
        )
    logger.debug("Built %s", diagram)
    return diagram


def _orient_edges(crossings: List[Crossing], uses: Dict[int, List[End]]) -> Dict[int, Tuple[End, End]]:
    """Direct every edge: under-strands enter at slot 0, and strands run straight through."""

    def other(label: int, end: End) -> End:
        first, second = uses[label]
        return second if end == first else first

    direction: Dict[int, Tuple[End, End]] = {}

    def propagate(label: int, tail: End, head: End) -> None:
        stack = [(label, tail, head)]
        while stack:
            e, t, h = stack.pop()
            if e in direction:
                if direction[e] != (t, h):
                    raise DiagramStructureError(f"edge {e} is oriented inconsistently")
                continue
            direction[e] = (t, h)
            nc, ns = h
            nxt_end = (nc, (ns + 2) % 4)
            nxt = crossings[nc].slots[nxt_end[1]]
            stack.append((nxt, nxt_end, other(nxt, nxt_end)))
            pc, ps = t
            prv_end = (pc, (ps + 2) % 4)
            prv = crossings[pc].slots[prv_end[1]]
            stack.append((prv, other(prv, prv_end), prv_end))

    for crossing in crossings:
        label = crossing.slots[0]
        head = (crossing.id, 0)
        propagate(label, other(label, head), head)

    # strands that never pass under keep the order in which the PD lists their ends
    for label in sorted(uses):
        if label not in direction:
            first, second = uses[label]
            propagate(label, first, second)
    return direction


def _walk_components(crossings: List[Crossing],
                     direction: Dict[int, Tuple[End, End]]) -> Tuple[Tuple[Tuple[int, ...], ...], Dict[int, int]]:
    membership: Dict[int, int] = {}
    components = []
    for start in sorted(direction):
        if start in membership:
            continue
        walk = []
        label = start
        while label not in membership:
            membership[label] = len(components)
            walk.append(label)
            c, s = direction[label][1]
            label = crossings[c].slots[(s + 2) % 4]
        components.append(tuple(walk))
    return tuple(components), membership


def _trace_regions(diagram: LinkDiagram) -> Tuple[Region, ...]:
    seen = set()
    traced: List[List[Incidence]] = []
    for c in range(diagram.n):
        for s in range(4):
            start = (c, s)
            if start in seen:
                continue
            walk: List[Incidence] = []
            dart = start
            while dart not in seen:
                seen.add(dart)
                label = diagram.edge_at(*dart)
                arrival = diagram.other_end(label, dart)
                side = 0 if dart == diagram.edge(label).ends[0] else 1
                walk.append(Incidence(label, side, arrival[0], dart, arrival))
                dart = (arrival[0], (arrival[1] - 1) % 4)
            if dart != start:
                raise DiagramStructureError(f"region walk from {start} did not close")
            traced.append(walk)

    # rotate each walk to its smallest (edge, side) and number regions in that order
    normalized = []
    for walk in traced:
        first = min(range(len(walk)), key=lambda i: (walk[i].edge, walk[i].side))
        normalized.append(walk[first:] + walk[:first])
    normalized.sort(key=lambda walk: (walk[0].edge, walk[0].side))
    return tuple(Region(index, tuple(walk)) for index, walk in enumerate(normalized))


def faces(diagram: LinkDiagram) -> List[Region]:
    """
    Regions of the diagram.

    Args:
        diagram: A valid diagram

    Returns:
        Regions ordered by id; together they use every edge side exactly once
    """
    return list(diagram.regions)


def twist_classes(diagram: LinkDiagram) -> UnionFind:
    """Crossings merged along bigons, so each class is one twist region."""
    classes = UnionFind(range(diagram.n))
    for region in diagram.regions:
        if region.is_bigon:
            a, b = region.crossings
            classes.union(a, b)
    return classes


def _diagonal_pairs(diagram: LinkDiagram) -> Dict[Tuple[int, int], List[int]]:
    """Pairs of regions meeting at opposite corners of a crossing, with those crossings."""
    corner_region: Dict[End, int] = {}
    for region in diagram.regions:
        for inc in region.incidences:
            corner_region[inc.arrival] = region.id
    pairs: Dict[Tuple[int, int], List[int]] = {}
    for c in range(diagram.n):
        for slot in (0, 1):
            a, b = corner_region[(c, slot)], corner_region[(c, slot + 2)]
            if a != b:
                pairs.setdefault((min(a, b), max(a, b)), []).append(c)
    return pairs


def classify(diagram: LinkDiagram) -> DiagramReport:
    """
    Alternation, reducedness and bigons of a diagram, plus a twist-reduction heuristic.

    Args:
        diagram: A valid diagram

    Returns:
        DiagramReport
    """
    alternating = all(diagram.is_alternating_edge(edge.id) for edge in diagram.edges)

    nugatory = set()
    for region in diagram.regions:
        corners = region.crossings
        for c in set(corners):
            if corners.count(c) > 1:
                nugatory.add(c)

    bigons = tuple(region.id for region in diagram.regions if region.is_bigon)

    warnings = []
    twists = twist_classes(diagram)
    arity = {region.id: region.arity for region in diagram.regions}
    for (a, b), crossings in sorted(_diagonal_pairs(diagram).items()):
        if arity[a] == 2 or arity[b] == 2:
            continue
        roots = {twists.find(c) for c in crossings}
        if len(roots) > 1:
            warnings.append(
                f"regions {a} and {b} meet diagonally at crossings {sorted(crossings)} outside one twist region"
            )
    for message in warnings:
        logger.warning("Diagram may not be twist reduced: %s", message)

    return DiagramReport(
        alternating=alternating,
        reduced=not nugatory,
        bigons=bigons,
        twist_reduced_warning=bool(warnings),
        nugatory=tuple(sorted(nugatory)),
        warnings=tuple(warnings),
    )


def orient(diagram: LinkDiagram, choices: Sequence[bool]) -> LinkDiagram:
    """
    Re-orient a diagram.

    Args:
        diagram: Any diagram
        choices: One flag per component; True follows the PD direction, False reverses it

    Returns:
        The same diagram with the requested orientation

    Raises:
        OrientationError: if the flag count differs from the component count
    """
    if len(choices) != len(diagram.components):
        raise OrientationError(
            f"{len(choices)} orientation flags for {len(diagram.components)} components"
        )
    return replace(diagram, orientation=tuple(bool(flag) for flag in choices))


def require_alternating(diagram: LinkDiagram) -> None:
    """Raise NonAlternatingError unless every edge runs from an over- to an under-crossing."""
    for edge in diagram.edges:
        if not diagram.is_alternating_edge(edge.id):
            raise NonAlternatingError(f"edge {edge.id} does not alternate between over and under")
