"""
Subdividing the polyhedra into ideal tetrahedra.

Every face is fanned from one of its own vertices; the fan is shared by the two polyhedra, so
paired faces stay glued triangle by triangle. Each polyhedron is then coned from one ideal
vertex over every face triangle not containing it. A face containing a cone vertex is fanned
from that vertex, so no tetrahedron is coned over a face it already lies on.

Tetrahedra list their vertices so that shapes have positive imaginary part in the developed
frame: with the cone vertex sent to infinity, the faces away from it project onto a cusp
cross-section, and each face triangle is taken clockwise as seen there.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np

from ..config.constants import FLAT_TOL, POSITIVE_VOLUME_TOL, ZERO_LABEL_TOL
from ..errors import TriangulationError
from ..geometry.development import BOTTOM, KINDS, TOP, HoroballConfig, develop
from ..geometry.mobius import inverse, to_complex
from .polyhedra import IdealPolyhedron

logger = logging.getLogger(__name__)

EdgeKey = Tuple[Hashable, ...]
FaceKey = Tuple[Hashable, ...]
Cones = Dict[str, int]

# vertex slot pairs of a tetrahedron, grouped by opposite pairs sharing a shape
EDGE_PAIRS = ((0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2))


@dataclass
class Tetrahedron:
    """
    An ideal tetrahedron coned from vertex slot 0 over a face triangle.

    Attributes:
        vertices: Vertex ids (crossing ids of the polyhedron's passes)
        points: Homogeneous positions in the developed polyhedron
        edge_keys: (slot i, slot j) -> edge key, for the six slot pairs with i < j
        face_keys: Key of the face opposite each slot
        shape: Shape on edges 01 and 23, set by compute_shapes
    """

    index: int
    polyhedron: str
    face: int
    triangle: int
    vertices: Tuple[int, int, int, int]
    points: Tuple[np.ndarray, ...]
    edge_keys: Dict[Tuple[int, int], EdgeKey]
    face_keys: Tuple[FaceKey, FaceKey, FaceKey, FaceKey]
    shape: Optional[complex] = None
    companions: Tuple[complex, complex] = (0j, 0j)

    def edge_shape(self, pair: Tuple[int, int]) -> complex:
        """Shape carried by an edge: z on 01/23, 1 - 1/z on 02/13, 1/(1 - z) on 03/12."""
        if self.shape is None:
            raise TriangulationError(f"tetrahedron {self.index} has no shape yet")
        position = EDGE_PAIRS.index(tuple(sorted(pair)))
        return (self.shape, self.companions[0], self.companions[1])[position // 2]

    def to_dict(self) -> Dict:
        z = self.shape if self.shape is not None else complex("nan")
        return {
            "index": self.index,
            "polyhedron": self.polyhedron,
            "face": self.face,
            "triangle": self.triangle,
            "vertices": list(self.vertices),
            "shape": [z.real, z.imag],
            "faces": [list(map(str, key)) for key in self.face_keys],
        }


@dataclass
class Triangulation:
    """
    Tetrahedra of both polyhedra with the data needed to glue and verify them.

    Attributes:
        tetrahedra: All tetrahedra, top polyhedron first
        fans: face -> (apex position, triangles as position triples)
        cone_vertices: polyhedron kind -> cone vertex id
        reversed_cones: polyhedron kind -> whether face triangles are taken against the walk order
        derived_labels: (face, position) -> coordinate of a diagonal in the apex frame
        derivation_residual: largest |sum of split labels - original label|
    """

    polyhedra: Tuple[IdealPolyhedron, IdealPolyhedron]
    config: HoroballConfig
    tetrahedra: List[Tetrahedron]
    fans: Dict[int, Tuple[int, List[Tuple[int, int, int]]]]
    cone_vertices: Cones
    reversed_cones: Dict[str, bool]
    derived_labels: Dict[Tuple[int, int], complex]
    derivation_residual: float = 0.0

    @property
    def flat(self) -> List[int]:
        return [t.index for t in self.tetrahedra if t.shape is not None and abs(t.shape.imag) <= FLAT_TOL]

    @property
    def apexes(self) -> Dict[int, int]:
        return {face: apex for face, (apex, _) in self.fans.items()}

    def polyhedron(self, kind: str) -> IdealPolyhedron:
        return self.polyhedra[0] if kind == TOP else self.polyhedra[1]

    def to_json(self) -> Dict:
        return {
            "cone_vertices": self.cone_vertices,
            "fans": {str(face): {"apex": apex, "triangles": [list(t) for t in triangles]}
                     for face, (apex, triangles) in self.fans.items()},
            "tetrahedra": [t.to_dict() for t in self.tetrahedra],
            "flat": self.flat,
            "gluings": gluings(self),
        }


def fan(arity: int, apex: int) -> List[Tuple[int, int, int]]:
    """Triangles (apex, apex+m, apex+m+1) of a k-gon, m = 1..k-2."""
    return [(apex, (apex + m) % arity, (apex + m + 1) % arity) for m in range(1, arity - 1)]


def default_apex(polyhedron: IdealPolyhedron, face: int) -> int:
    ids = polyhedron.faces[face]
    return min(range(len(ids)), key=lambda i: (ids[i], i))


def apex_choices(polyhedron: IdealPolyhedron, face: int, rule: str) -> int:
    ids = polyhedron.faces[face]
    if rule == "greatest":
        return max(range(len(ids)), key=lambda i: (ids[i], -i))
    return default_apex(polyhedron, face)


def cone_pins(polyhedra: Sequence[IdealPolyhedron], cones: Cones) -> Dict[int, List[int]]:
    """Positions of each face holding a cone vertex, top polyhedron first."""
    top, bottom = polyhedra
    pins = {}
    for face, ids in top.faces.items():
        found = [i for i, v in enumerate(ids) if v == cones[TOP]]
        found += [i for i, v in enumerate(bottom.faces[face]) if v == cones[BOTTOM] and i not in found]
        pins[face] = found
    return pins


def forced_apexes(polyhedra: Sequence[IdealPolyhedron], cones: Cones) -> Optional[Dict[int, int]]:
    """
    Apexes pinned by the cone vertices, or None when a face of four or more sides holds the
    two cone vertices at different positions.
    """
    forced = {}
    for face, found in cone_pins(polyhedra, cones).items():
        if len(found) > 1 and len(polyhedra[0].faces[face]) > 3:
            return None
        if found:
            forced[face] = found[0]
    return forced


def sending_to_infinity(point: np.ndarray) -> np.ndarray:
    """A Mobius map taking the homogeneous point to infinity."""
    p0, p1 = point
    return np.array([[np.conj(p0), np.conj(p1)], [p1, -p0]], dtype=complex)


def cone_reversed(polyhedron: IdealPolyhedron, positions: Dict[int, np.ndarray], v0: int) -> bool:
    """
    Whether tetrahedra coned from v0 must take face triangles against the walk order.

    Faces away from v0 tile the cusp cross-section at v0; a shape (inf, a, b, c) has positive
    imaginary part exactly when a, b, c turn clockwise there.

    Raises:
        TriangulationError: if a vertex sits on the cone vertex
    """
    to_cusp = sending_to_infinity(positions[v0])
    area = 0.0
    for ids in polyhedron.faces.values():
        if v0 in ids:
            continue
        points = [to_complex(to_cusp @ positions[v]) for v in ids]
        if any(p is None for p in points):
            raise TriangulationError(f"a vertex of the {polyhedron.kind} polyhedron sits on cone vertex {v0}")
        area += sum((a.conjugate() * b).imag for a, b in zip(points, points[1:] + points[:1]))
    return area > 0


def ordered(v0: int, verts: Tuple[int, int, int], reverse: bool) -> Tuple[int, int, int, int]:
    a, b, c = verts
    return (v0, a, c, b) if reverse else (v0, a, b, c)


def _tilt(to_cusp: np.ndarray, positions: Dict[int, np.ndarray], quad) -> Optional[float]:
    """Imaginary part of the shape of quad, read off with its cone vertex at infinity."""
    a, b, c = (to_complex(to_cusp @ positions[v]) for v in quad[1:])
    if a is None or b is None or c is None or abs(c - a) <= ZERO_LABEL_TOL:
        return None
    return ((b - a) / (c - a)).imag


def _face_tilts(polyhedra, positions, cones: Cones, frames, face: int, apex: int) -> Optional[List[float]]:
    tilts = []
    for polyhedron in polyhedra:
        kind = polyhedron.kind
        to_cusp, reverse = frames[kind]
        ids = polyhedron.faces[face]
        for triangle in fan(len(ids), apex):
            verts = tuple(ids[p] for p in triangle)
            if cones[kind] in verts:
                continue
            tilt = _tilt(to_cusp, positions[kind], ordered(cones[kind], verts, reverse))
            if tilt is None:
                return None
            tilts.append(tilt)
    return tilts


def _fit(polyhedra, positions, cones: Cones, apexes: Dict[int, int]) -> Optional[Dict[int, int]]:
    """Apex per face giving no negative tetrahedron for these cone vertices, if there is one."""
    frames = {}
    for polyhedron in polyhedra:
        kind = polyhedron.kind
        v0 = cones[kind]
        if v0 not in positions[kind]:
            return None
        try:
            frames[kind] = (sending_to_infinity(positions[kind][v0]), cone_reversed(polyhedron, positions[kind], v0))
        except TriangulationError:
            return None

    pins = cone_pins(polyhedra, cones)
    chosen = {}
    best = 0.0
    for face, ids in polyhedra[0].faces.items():
        k = len(ids)
        if face in apexes:
            candidates = [apexes[face]]
        elif len(pins[face]) > 1 and k > 3:
            return None
        elif pins[face]:
            candidates = pins[face][:1]
        else:
            candidates = sorted(range(k), key=lambda i: (ids[i], i))
        for apex in candidates:
            tilts = _face_tilts(polyhedra, positions, cones, frames, face, apex)
            if tilts is not None and all(t >= -FLAT_TOL for t in tilts):
                chosen[face] = apex
                best = max([best, *tilts])
                break
        else:
            return None
    return chosen if best > POSITIVE_VOLUME_TOL else None


def choose_fans(polyhedra: Tuple[IdealPolyhedron, IdealPolyhedron], config: HoroballConfig,
                apexes: Optional[Dict[int, int]] = None,
                cone_vertices: Optional[Cones] = None) -> Tuple[Dict[int, int], Cones]:
    """
    Pick cone vertices and fan apexes so that no tetrahedron is negatively oriented.

    Cone vertex pairs are tried in order of vertex ids. A face holding a cone vertex is fanned
    from it; every other face takes the first apex, least top vertex first, whose triangles
    cone positively in both polyhedra. The first pair with a tetrahedron of positive volume is
    kept. Failing that the least pair is returned, for verification to reject.

    Args:
        polyhedra: Output of menasco
        config: Developed polyhedra
        apexes: face -> apex position, kept as given
        cone_vertices: "top"/"bottom" -> cone vertex id, kept as given

    Returns:
        (face -> apex position, kind -> cone vertex)

    Raises:
        TriangulationError: if a requested cone vertex is not a vertex of its polyhedron
    """
    top, bottom = polyhedra
    apexes = dict(apexes or {})
    fixed = dict(cone_vertices or {})
    positions = {kind: config.developments[kind].positions() for kind in KINDS}
    pairs = [{TOP: v0, BOTTOM: w0} for v0 in sorted(top.vertices) for w0 in sorted(bottom.vertices)
             if fixed.get(TOP, v0) == v0 and fixed.get(BOTTOM, w0) == w0]
    if not pairs:
        raise TriangulationError(f"cone vertices {fixed} are not vertices of the polyhedra")

    for cones in pairs:
        chosen = _fit(polyhedra, positions, cones, apexes)
        if chosen is not None:
            logger.debug("Cone vertices %s, apexes %s", cones, chosen)
            return chosen, cones

    cones = pairs[0]
    if len(fixed) < len(KINDS):
        logger.warning("No fan avoids negatively oriented tetrahedra; keeping cone vertices %s", cones)
    chosen = {face: default_apex(top, face) for face in top.faces}
    chosen.update({face: found[0] for face, found in cone_pins(polyhedra, cones).items() if found})
    chosen.update(apexes)
    return chosen, cones


def _segment_key(polyhedron: IdealPolyhedron, face: int, arity: int, p: int, q: int) -> EdgeKey:
    if (p + 1) % arity == q:
        return ("side", polyhedron.kind, polyhedron.side_root(face, p))
    if (q + 1) % arity == p:
        return ("side", polyhedron.kind, polyhedron.side_root(face, q))
    return ("diag", face, min(p, q), max(p, q))


def derive_labels(config: HoroballConfig, fans) -> Tuple[Dict[Tuple[int, int], complex], float]:
    """
    Split the label at each fan apex along its diagonals.

    In the apex frame the arcs to the previous and next vertex sit at 0 and t_apex; a diagonal
    to vertex q sits at g_apex^-1(P_q). Consecutive differences are the split labels, and they
    must add back up to t_apex.
    """
    walks = config.developments[TOP].walks
    labels: Dict[Tuple[int, int], complex] = {}
    residual = 0.0
    for face, (apex, _) in fans.items():
        walk = walks[face]
        k = walk.arity
        back = inverse(walk.frames[apex])
        stops = [walk.translations[apex]]
        for m in range(2, k - 1):
            q = (apex + m) % k
            coordinate = to_complex(back @ walk.local_point(q))
            if coordinate is None:
                raise TriangulationError(f"diagonal {apex}-{q} of face {face} runs to the apex")
            labels[(face, q)] = coordinate
            stops.append(coordinate)
        stops.append(0j)
        pieces = [stops[i] - stops[i + 1] for i in range(len(stops) - 1)]
        residual = max(residual, abs(sum(pieces) - walk.translations[apex]))
    return labels, residual


def subdivide(polyhedra: Tuple[IdealPolyhedron, IdealPolyhedron], solution, system=None,
              apexes: Optional[Dict[int, int]] = None, cone_vertices: Optional[Cones] = None,
              base_region: Optional[int] = None) -> Triangulation:
    """
    Fan every face and cone both polyhedra.

    Args:
        polyhedra: Output of menasco
        solution: Solution the vertices are developed from
        system: EquationSystem of the diagram (generated when omitted)
        apexes: face -> fan apex position (chosen by choose_fans when omitted)
        cone_vertices: "top"/"bottom" -> cone vertex id (chosen by choose_fans when omitted)
        base_region: Region the development starts from

    Returns:
        Triangulation without shapes

    Raises:
        TriangulationError: on a zero translation outside bigons or a degenerate face triangle
    """
    top = polyhedra[0]
    config = develop(top.diagram, solution, base_region, system)
    walks = config.developments[TOP].walks
    for face in top.faces:
        for i, t in enumerate(walks[face].translations):
            if abs(t) <= ZERO_LABEL_TOL:
                raise TriangulationError(f"translation {i} of region {face} vanishes")

    chosen, cones = choose_fans(polyhedra, config, apexes, cone_vertices)
    fans = {face: (apex, fan(len(top.faces[face]), apex)) for face, apex in chosen.items()}

    tetrahedra: List[Tetrahedron] = []
    reversed_cones = {}
    for polyhedron in polyhedra:
        kind = polyhedron.kind
        positions = config.developments[kind].positions()
        if cones[kind] not in positions:
            raise TriangulationError(f"cone vertex {cones[kind]} of the {kind} polyhedron was not placed")
        reversed_cones[kind] = cone_reversed(polyhedron, positions, cones[kind])
        tetrahedra.extend(_cone(polyhedron, positions, fans, cones[kind], reversed_cones[kind], len(tetrahedra)))
    if not tetrahedra:
        raise TriangulationError("no tetrahedra: every face triangle contains a cone vertex")

    derived, residual = derive_labels(config, fans)
    tri = Triangulation(polyhedra, config, tetrahedra, fans, cones, reversed_cones, derived, residual)
    logger.info("Subdivided into %d tetrahedra (cone vertices %s)", len(tetrahedra), cones)
    return tri


def _cone(polyhedron: IdealPolyhedron, positions: Dict[int, np.ndarray], fans, v0: int, reverse: bool,
          offset: int) -> List[Tetrahedron]:
    kind = polyhedron.kind

    # boundary triangles with their edge keys
    boundary = []
    for face, (_, triangles) in fans.items():
        ids = polyhedron.faces[face]
        k = len(ids)
        for t, (p, q, r) in enumerate(triangles):
            verts = (ids[p], ids[q], ids[r])
            if len(set(verts)) < 3:
                raise TriangulationError(f"triangle {t} of face {face} repeats a vertex")
            keys = {frozenset((ids[x], ids[y])): _segment_key(polyhedron, face, k, x, y)
                    for x, y in ((p, q), (q, r), (p, r))}
            boundary.append((("tri", face, t), face, t, verts, keys))

    by_pair: Dict[frozenset, EdgeKey] = {}
    by_triple: Dict[frozenset, List[Tuple[FaceKey, Dict]]] = {}
    for key, _, _, verts, keys in boundary:
        for pair, edge_key in keys.items():
            by_pair.setdefault(pair, edge_key)
        by_triple.setdefault(frozenset(verts), []).append((key, keys))

    def cone_face(x: int, y: int, base_key: EdgeKey) -> FaceKey:
        for key, keys in by_triple.get(frozenset((v0, x, y)), []):
            if keys.get(frozenset((x, y))) == base_key:
                return key
        return ("coneface", kind, base_key)

    tetrahedra = []
    for key, face, t, verts, keys in boundary:
        if v0 in verts:
            continue
        quad = ordered(v0, verts, reverse)
        edge_keys = {}
        for i, j in EDGE_PAIRS:
            pair = frozenset((quad[i], quad[j]))
            edge_keys[(i, j)] = keys[pair] if i > 0 else by_pair.get(pair, ("cone", kind, quad[j]))
        face_keys = [key]
        for slot in (1, 2, 3):
            x, y = (quad[s] for s in (1, 2, 3) if s != slot)
            face_keys.append(cone_face(x, y, keys[frozenset((x, y))]))
        points = tuple(positions[v] for v in quad)
        tetrahedra.append(Tetrahedron(offset + len(tetrahedra), kind, face, t, quad, points, edge_keys,
                                      tuple(face_keys)))
    return tetrahedra


def fan_variants(polyhedra: Sequence[IdealPolyhedron], rules: Sequence[str] = ("least", "greatest")):
    """Every (apex rule, apexes, cone vertices) whose cone vertices pin each face at most once."""
    top, bottom = polyhedra
    for rule in rules:
        for v0 in sorted(top.vertices):
            for w0 in sorted(bottom.vertices):
                cones = {TOP: v0, BOTTOM: w0}
                forced = forced_apexes(polyhedra, cones)
                if forced is None:
                    continue
                apexes = {face: apex_choices(top, face, rule) for face in top.faces}
                apexes.update(forced)
                yield rule, apexes, cones


def vertex_identity(tri: Triangulation, face_key: FaceKey, kind: str, vertex: int) -> Hashable:
    """
    What a vertex of a glued face is matched by across the gluing.

    Face triangles are shared by the two polyhedra, whose vertex ids differ, so they match by
    polygon position; cone faces stay inside one polyhedron and match by vertex id.
    """
    if face_key[0] == "tri":
        face, triangle = face_key[1], face_key[2]
        ids = tri.polyhedron(kind).faces[face]
        for position in tri.fans[face][1][triangle]:
            if ids[position] == vertex:
                return ("position", position)
    return ("vertex", kind, vertex)


def gluings(tri: Triangulation) -> List[Dict]:
    """
    Face pairings as (tetrahedron, slot) pairs with the vertex permutation between them.

    permutation[i] is the slot of the second tetrahedron that vertex slot i of the first one is
    glued to; the opposite slots correspond as well.
    """
    occurrences: Dict[FaceKey, List[Tuple[int, int]]] = {}
    for position, tet in enumerate(tri.tetrahedra):
        for slot, key in enumerate(tet.face_keys):
            occurrences.setdefault(key, []).append((position, slot))
    result = []
    for key, pair in occurrences.items():
        if len(pair) != 2:
            raise TriangulationError(f"face {key} occurs {len(pair)} times")
        (i, s), (j, t) = pair
        first, second = tri.tetrahedra[i], tri.tetrahedra[j]
        match = {vertex_identity(tri, key, second.polyhedron, v): slot
                 for slot, v in enumerate(second.vertices) if slot != t}
        permutation = [t] * 4
        for slot, v in enumerate(first.vertices):
            if slot != s:
                permutation[slot] = match[vertex_identity(tri, key, first.polyhedron, v)]
        result.append({"face": [str(part) for part in key], "tetrahedra": [first.index, second.index],
                       "slots": [s, t], "permutation": permutation})
    return result
