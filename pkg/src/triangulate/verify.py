"""
Checking that a shaped triangulation is geometric and complete.
"""

import logging
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Tuple

import numpy as np

from ..config.constants import FLAT_TOL, GLUING_TOL, POSITIVE_VOLUME_TOL, SHAPE_IDENTITY_TOL
from ..errors import TriangulationError
from ..geometry.conditions import FAIL, PASS, ConditionVerdict
from ..geometry.development import TOP, Development
from ..geometry.mobius import inverse, normalize, to_complex
from ..utils import UnionFind
from .shapes import opposite_shape
from .subdivide import EDGE_PAIRS, Triangulation, gluings, vertex_identity

logger = logging.getLogger(__name__)


def dihedral_argument(z: complex) -> float:
    """Angle of a shape in [0, pi] for flat shapes, principal argument otherwise."""
    if abs(z.imag) <= FLAT_TOL:
        return 0.0 if z.real > 0 else math.pi
    return math.atan2(z.imag, z.real)


@dataclass
class EdgeClass:
    root: Hashable
    members: List[Tuple[int, Tuple[int, int]]]
    product: complex
    winding: float
    ends: Tuple[int, int]  # cusps (link components) at the two ends

    @property
    def product_residual(self) -> float:
        return abs(self.product - 1)

    @property
    def winding_residual(self) -> float:
        return abs(self.winding - 2 * math.pi)

    def to_dict(self) -> Dict:
        return {"root": str(self.root), "valence": len(self.members),
                "product": [self.product.real, self.product.imag], "winding": self.winding,
                "ends": list(self.ends)}


@dataclass
class CuspTiling:
    cusp: int
    triangles: int
    edges: int
    vertices: int

    @property
    def consistent(self) -> bool:
        return 3 * self.triangles == 2 * self.edges and 2 * self.vertices == self.triangles

    def to_dict(self) -> Dict:
        return {"cusp": self.cusp, "F": self.triangles, "E": self.edges, "V": self.vertices}


@dataclass
class VerificationReport:
    shape_identities: ConditionVerdict
    edge_gluing: ConditionVerdict
    flatness: ConditionVerdict
    completeness: ConditionVerdict
    simplicity: ConditionVerdict
    edge_classes: List[EdgeClass] = field(default_factory=list)
    cusps: List[CuspTiling] = field(default_factory=list)

    @property
    def verdicts(self) -> List[ConditionVerdict]:
        return [self.shape_identities, self.edge_gluing, self.flatness, self.completeness, self.simplicity]

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.verdicts)


def face_gluing(tri: Triangulation) -> Counter:
    """Occurrences of every face key; each must appear exactly twice."""
    counts = Counter(key for tet in tri.tetrahedra for key in tet.face_keys)
    unglued = [key for key, count in counts.items() if count != 2]
    if unglued:
        raise TriangulationError(f"{len(unglued)} faces are not glued in pairs, e.g. {unglued[0]}")
    return counts


def edge_classes(tri: Triangulation) -> UnionFind:
    """
    Tetrahedron edges, as (index, slot pair), joined across every face gluing.

    Two glued faces share their three edges; following the vertex permutation of each gluing
    around an edge collects every tetrahedron edge lying on the same edge of the manifold.
    """
    classes = UnionFind()
    for tet in tri.tetrahedra:
        for pair in EDGE_PAIRS:
            classes.add((tet.index, pair))
    for gluing in gluings(tri):
        first, second = gluing["tetrahedra"]
        opposite = gluing["slots"][0]
        permutation = gluing["permutation"]
        for i, j in EDGE_PAIRS:
            if opposite not in (i, j):
                classes.union((first, (i, j)), (second, tuple(sorted((permutation[i], permutation[j])))))
    return classes


def cusp_of(tri: Triangulation, kind: str, vertex: int) -> int:
    return tri.config.diagram.component_of_strand(vertex, over=(kind == TOP))


def check_shape_identities(tri: Triangulation) -> ConditionVerdict:
    worst = 0.0
    failures = []
    for tet in tri.tetrahedra:
        z = tet.shape
        z02, z03 = tet.companions
        scale = max(1.0, abs(z))
        errors = {
            "product": abs(z * z02 * z03 + 1),
            "companions": max(abs(z02 - (1 - 1 / z)), abs(z03 - 1 / (1 - z))),
            "opposite": abs(opposite_shape(tet) - z) / scale,
        }
        worst = max(worst, *errors.values())
        if errors["opposite"] > SHAPE_IDENTITY_TOL or errors["product"] > SHAPE_IDENTITY_TOL:
            failures.append({"tetrahedron": tet.index, **errors})
    if tri.derivation_residual > SHAPE_IDENTITY_TOL:
        failures.append({"derived_labels": tri.derivation_residual})
    verdict = FAIL if failures else PASS
    return ConditionVerdict("shape_identities", verdict, failures, f"worst residual {worst:.2e}")


def collect_edge_classes(tri: Triangulation) -> List[EdgeClass]:
    classes = edge_classes(tri)
    members: Dict[Hashable, List[Tuple[int, Tuple[int, int]]]] = defaultdict(list)
    for tet in tri.tetrahedra:
        for pair in EDGE_PAIRS:
            members[classes.find((tet.index, pair))].append((tet.index, pair))
    result = []
    for incidences in members.values():
        product = 1 + 0j
        winding = 0.0
        for index, pair in incidences:
            shape = tri.tetrahedra[index].edge_shape(pair)
            product *= shape
            winding += dihedral_argument(shape)
        index, (i, j) = incidences[0]
        tet = tri.tetrahedra[index]
        ends = (cusp_of(tri, tet.polyhedron, tet.vertices[i]), cusp_of(tri, tet.polyhedron, tet.vertices[j]))
        result.append(EdgeClass(tet.edge_keys[(i, j)], incidences, product, winding, ends))
    return result


def check_edge_gluing(classes: List[EdgeClass]) -> ConditionVerdict:
    failures = [
        {"edge": str(item.root), "product_residual": item.product_residual, "winding": item.winding}
        for item in classes
        if item.product_residual > GLUING_TOL or item.winding_residual > GLUING_TOL
    ]
    verdict = FAIL if failures else PASS
    return ConditionVerdict("edge_gluing", verdict, failures, f"{len(classes)} edge classes")


def check_flatness(tri: Triangulation) -> ConditionVerdict:
    negative = [{"tetrahedron": t.index, "shape": [t.shape.real, t.shape.imag]}
                for t in tri.tetrahedra if t.shape.imag < -FLAT_TOL]
    if negative:
        return ConditionVerdict("flatness", FAIL, negative, "negatively oriented tetrahedra")
    if not any(t.shape.imag > POSITIVE_VOLUME_TOL for t in tri.tetrahedra):
        return ConditionVerdict("flatness", FAIL, [], "every tetrahedron is flat")
    flat = tri.flat
    return ConditionVerdict("flatness", PASS, [{"flat": flat}], f"{len(flat)} flat tetrahedra")


def cusp_tilings(tri: Triangulation, classes: List[EdgeClass]) -> List[CuspTiling]:
    """Triangles, edges and vertices of the cusp tilings cut out by the tetrahedra."""
    triangles: Counter = Counter()
    edges: Dict[int, set] = defaultdict(set)
    vertices: Counter = Counter()
    for tet in tri.tetrahedra:
        for slot, vertex in enumerate(tet.vertices):
            cusp = cusp_of(tri, tet.polyhedron, vertex)
            triangles[cusp] += 1
            for opposite, face_key in enumerate(tet.face_keys):
                if opposite != slot:
                    edges[cusp].add((face_key, vertex_identity(tri, face_key, tet.polyhedron, vertex)))
    for item in classes:
        for cusp in item.ends:
            vertices[cusp] += 1
    return [CuspTiling(cusp, triangles[cusp], len(edges[cusp]), vertices[cusp]) for cusp in sorted(triangles)]


def _vertex_corners(development: Development) -> Dict[int, List[Tuple[int, int]]]:
    corners: Dict[int, List[Tuple[int, int]]] = defaultdict(list)
    for region in development.order:
        for i in range(development.walks[region].arity):
            corners[development.vertices[(region, i)]].append((region, i))
    return corners


def _translation_residual(first: np.ndarray, second: np.ndarray) -> float:
    t = normalize(inverse(normalize(first)) @ normalize(second))
    if abs(t[1, 1]) <= 1e-300:
        return float("inf")
    scale = max(1.0, float(np.max(np.abs(t))))
    return max(abs(t[1, 0]), abs(t[0, 0] / t[1, 1] - 1)) / scale


def check_completeness(tri: Triangulation) -> ConditionVerdict:
    """
    Horoballs agree at every vertex, region frames agree across every gluing, and at each
    crossing outside a twist region the two arcs of that crossing differ by one meridian.
    """
    failures = []
    worst = tri.config.mismatch
    if worst > GLUING_TOL:
        failures.append({"frame_mismatch": worst})
    diagram = tri.config.diagram
    in_bigon = {c for region in diagram.regions if region.is_bigon for c in region.crossings}
    for polyhedron in tri.polyhedra:
        kind = polyhedron.kind
        development = tri.config.developments[kind]
        positions = development.positions()
        corners = _vertex_corners(development)
        for vertex, at in corners.items():
            reference = development.vertex_frame(*at[0])
            for other in at[1:]:
                residual = _translation_residual(reference, development.vertex_frame(*other))
                worst = max(worst, residual)
                if residual > GLUING_TOL:
                    failures.append({"polyhedron": kind, "vertex": vertex, "corner": list(other),
                                     "translation_residual": residual})
        for c in range(diagram.n):
            if c in in_bigon or c not in corners:
                continue
            roots = {}
            for region in diagram.regions:
                for i, inc in enumerate(region.incidences):
                    if inc.crossing == c:
                        root = polyhedron.side_root(region.id, i)
                        ends = polyhedron.corner_vertices[(region.id, i)], \
                            polyhedron.corner_vertices[(region.id, (i + 1) % region.arity)]
                        roots[root] = ends[1] if ends[0] == c else ends[0]
            if len(roots) != 2:
                failures.append({"polyhedron": kind, "crossing": c, "arcs": len(roots)})
                continue
            back = inverse(normalize(development.vertex_frame(*corners[c][0])))
            first, second = (to_complex(back @ positions[v]) for v in roots.values())
            if first is None or second is None:
                failures.append({"polyhedron": kind, "crossing": c, "meridian": None})
                continue
            residual = min(abs(first - second - 1), abs(first - second + 1))
            worst = max(worst, residual)
            if residual > GLUING_TOL * max(1.0, abs(first), abs(second)):
                failures.append({"polyhedron": kind, "crossing": c, "meridian_residual": residual})
    verdict = FAIL if failures else PASS
    return ConditionVerdict("completeness", verdict, failures, f"worst residual {worst:.2e}")


def check_simplicity(tri: Triangulation, classes: UnionFind) -> ConditionVerdict:
    """In a flat tetrahedron the two edges meeting at angle pi must be different edges."""
    failures = []
    for tet in tri.tetrahedra:
        if abs(tet.shape.imag) > FLAT_TOL:
            continue
        for pair, partner in ((EDGE_PAIRS[0], EDGE_PAIRS[1]), (EDGE_PAIRS[2], EDGE_PAIRS[3]),
                              (EDGE_PAIRS[4], EDGE_PAIRS[5])):
            if dihedral_argument(tet.edge_shape(pair)) == math.pi:
                if classes.same((tet.index, pair), (tet.index, partner)):
                    failures.append({"tetrahedron": tet.index, "edges": [list(pair), list(partner)]})
    verdict = FAIL if failures else PASS
    return ConditionVerdict("simplicity", verdict, failures, f"{len(tri.flat)} flat tetrahedra audited")


def verify_triangulation(tri: Triangulation) -> VerificationReport:
    """
    Verify gluing, shapes, flatness and completeness of a shaped triangulation.

    Args:
        tri: Triangulation after compute_shapes

    Returns:
        VerificationReport with per-edge-class and per-cusp data

    Raises:
        TriangulationError: if a face is unglued or a shape is missing
    """
    if any(tet.shape is None for tet in tri.tetrahedra):
        raise TriangulationError("compute_shapes must run before verification")
    face_gluing(tri)
    classes = collect_edge_classes(tri)
    cusps = cusp_tilings(tri, classes)
    gluing = check_edge_gluing(classes)
    inconsistent = [c.to_dict() for c in cusps if not c.consistent]
    if inconsistent:
        gluing = ConditionVerdict("edge_gluing", FAIL, gluing.witnesses + inconsistent,
                                  "cusp tiling counts do not close up")
    report = VerificationReport(
        shape_identities=check_shape_identities(tri),
        edge_gluing=gluing,
        flatness=check_flatness(tri),
        completeness=check_completeness(tri),
        simplicity=check_simplicity(tri, edge_classes(tri)),
        edge_classes=classes,
        cusps=cusps,
    )
    for item in report.verdicts:
        if not item.passed:
            logger.warning("Triangulation check %s failed: %s", item.name, item.message)
    return report

