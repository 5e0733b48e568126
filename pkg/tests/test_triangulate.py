"""
Tests for the polyhedral decomposition, the coned triangulation, its verification and volume.
"""

import sys
import os

import numpy as np
import pytest

# Add the parent directory to the path so we can import from src
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.equations import region_equations
from src.errors import TriangulationError
from src.geometry import FAIL, PASS, VACUOUS
from src.geometry.conditions import ConditionVerdict
from src.geometry.development import BOTTOM, TOP
from src.solver import SolverConfig, solve
from src.triangulate import (
    GEODESIC_ARCS,
    INCONCLUSIVE,
    SKIPPED,
    bloch_wigner,
    certify,
    choose_fans,
    companions,
    compute_shapes,
    conclude,
    fan,
    lobachevsky,
    menasco,
    shape_of_points,
    subdivide,
    tetrahedron_volume,
    verify_triangulation,
    volume,
)
from src.triangulate.certificate import triangulate
from src.triangulate.subdivide import cone_pins, forced_apexes
from src.triangulate.verify import collect_edge_classes
from src.geometry.mobius import point
from tests.golden import FIGURE_EIGHT_VOLUME, REGULAR_TETRAHEDRON_VOLUME


def lobachevsky_series(theta, terms=200000):
    n = np.arange(1, terms + 1)
    return 0.5 * float(np.sum(np.sin(2 * n * theta) / n ** 2))


def test_menasco_figure_eight(figure_eight):
    """Both polyhedra of the figure-eight knot are tetrahedra once bigons collapse."""
    top, bottom = menasco(figure_eight)
    for polyhedron in (top, bottom):
        assert len(polyhedron.vertices) == 4
        assert len(polyhedron.edges()) == 6
        assert len(polyhedron.faces) == 4
        assert not polyhedron.is_degenerate
    assert set(top.faces) == set(bottom.faces), "faces must pair up by region"


def test_trefoil_polyhedra_are_pillows(trefoil):
    top, bottom = menasco(trefoil)
    assert top.is_degenerate and bottom.is_degenerate
    system = region_equations(trefoil)
    with pytest.raises(TriangulationError):
        triangulate((top, bottom), np.ones(len(system.names)), system)


def test_fan():
    assert fan(3, 0) == [(0, 1, 2)]
    assert fan(5, 2) == [(2, 3, 4), (2, 4, 0), (2, 0, 1)]


def test_figure_eight_triangulation(figure_eight, figure_eight_system, figure_eight_solution):
    """Two regular ideal tetrahedra, glued into one cusp torus."""
    tri = subdivide(menasco(figure_eight), figure_eight_solution, figure_eight_system)
    compute_shapes(tri)
    assert len(tri.tetrahedra) == 2
    assert [t.index for t in tri.tetrahedra] == [0, 1]
    for tet in tri.tetrahedra:
        assert abs(tet.shape - np.exp(1j * np.pi / 3)) < 1e-8

    report = verify_triangulation(tri)
    assert report.passed, [item.to_dict() for item in report.verdicts if not item.passed]
    assert len(report.edge_classes) == 2
    assert [len(c.members) for c in report.edge_classes] == [6, 6]
    assert [c.to_dict() for c in report.cusps] == [{"cusp": 0, "F": 8, "E": 12, "V": 4}]
    assert all(c.consistent for c in report.cusps)

    assert volume(tri) == pytest.approx(FIGURE_EIGHT_VOLUME, abs=1e-9)
    data = tri.to_json()
    assert len(data["gluings"]) == 4
    assert data["flat"] == []


def test_triangulation_8_8_2(link_8_8_2, system_8_8_2, solution_8_8_2):
    """Faces holding a cone vertex are fanned from it, and no tetrahedron is negatively oriented."""
    polyhedra = menasco(link_8_8_2)
    tri = compute_shapes(subdivide(polyhedra, solution_8_8_2, system_8_8_2))
    assert forced_apexes(polyhedra, tri.cone_vertices) is not None
    for face, found in cone_pins(polyhedra, tri.cone_vertices).items():
        if found:
            assert tri.apexes[face] == found[0]

    heights = [tet.shape.imag for tet in tri.tetrahedra]
    assert min(heights) >= -1e-9
    assert max(heights) > 1e-3

    classes = collect_edge_classes(tri)
    assert len(classes) == len(tri.tetrahedra)
    assert sum(len(item.members) for item in classes) == 6 * len(tri.tetrahedra)
    for item in classes:
        assert item.product_residual < 1e-9, item.to_dict()
        assert item.winding == pytest.approx(2 * np.pi, abs=1e-9)


def test_choose_fans_requests(link_8_8_2, system_8_8_2, solution_8_8_2):
    polyhedra = menasco(link_8_8_2)
    tri = subdivide(polyhedra, solution_8_8_2, system_8_8_2)
    # both least vertices sit on one pentagon, at different corners
    assert forced_apexes(polyhedra, {TOP: 0, BOTTOM: 0}) is None

    apexes, cones = choose_fans(polyhedra, tri.config, cone_vertices={TOP: 0, BOTTOM: 0})
    assert cones == {TOP: 0, BOTTOM: 0}
    assert set(apexes) == set(polyhedra[0].faces)

    face = next(f for f, ids in polyhedra[0].faces.items() if len(ids) == 5)
    kept, _ = choose_fans(polyhedra, tri.config, apexes={face: 3}, cone_vertices=tri.cone_vertices)
    assert kept[face] == 3

    with pytest.raises(TriangulationError, match="not vertices"):
        choose_fans(polyhedra, tri.config, cone_vertices={TOP: 99})


def test_lobachevsky_against_series():
    for theta in (0.1, np.pi / 6, np.pi / 3, 1.2, 2.5):
        assert lobachevsky(theta) == pytest.approx(lobachevsky_series(theta), abs=1e-5)
    assert lobachevsky(np.pi) == pytest.approx(0, abs=1e-12)


def test_tetrahedron_volumes():
    regular = np.exp(1j * np.pi / 3)
    assert tetrahedron_volume(regular) == pytest.approx(REGULAR_TETRAHEDRON_VOLUME, abs=1e-12)
    assert bloch_wigner(regular) == pytest.approx(REGULAR_TETRAHEDRON_VOLUME, abs=1e-12)
    assert tetrahedron_volume(0.5 + 0j) == 0.0
    # companions describe the same tetrahedron
    z = 0.3 + 1.1j
    for other in companions(z):
        assert tetrahedron_volume(other) == pytest.approx(tetrahedron_volume(z))


def test_shape_of_points():
    """(inf, 0, 1, z) has shape 1/z on edge 01, unchanged by Mobius maps."""
    z = 0.4 + 0.9j
    points = [point(None), point(0), point(1), point(z)]
    assert shape_of_points(*points) == pytest.approx(1 / z)
    mobius = np.array([[1, 2j], [0.3, 1]], dtype=complex)
    assert shape_of_points(*(mobius @ p for p in points)) == pytest.approx(1 / z)
    with pytest.raises(TriangulationError, match="0 and 1"):
        shape_of_points(point(0), point(0), point(1), point(z))
    with pytest.raises(TriangulationError, match="0 and 3"):
        shape_of_points(point(None), point(0), point(1), point(None))
    with pytest.raises(TriangulationError, match="2 and 3"):
        shape_of_points(point(None), point(0), point(z), 3 * point(z))


def test_conclude():
    def verdicts(*values):
        return {f"check{i}": ConditionVerdict(f"check{i}", v) for i, v in enumerate(values)}

    assert conclude(verdicts(PASS, VACUOUS, PASS)) == GEODESIC_ARCS
    assert conclude(verdicts(PASS, SKIPPED)) == INCONCLUSIVE
    assert conclude(verdicts(SKIPPED, FAIL)) == FAIL


def test_certificate_8_8_2(link_8_8_2, system_8_8_2, solution_8_8_2):
    certificate = certify(link_8_8_2, solution_8_8_2, system_8_8_2)
    failing = {k: v.verdict for k, v in certificate.verdicts.items() if v.verdict not in (PASS, VACUOUS)}
    assert certificate.conclusion == GEODESIC_ARCS, failing
    assert certificate.passed
    assert certificate.volume is not None and certificate.volume > 0
    assert certificate.cross_ratio_deviation < 1e-8
    assert set(certificate.to_json()["verdicts"]) == set(certificate.verdicts)


def test_certificate_figure_eight(figure_eight, figure_eight_system, figure_eight_solution):
    certificate = certify(figure_eight, figure_eight_solution, figure_eight_system, alternate=True)
    assert certificate.conclusion == GEODESIC_ARCS
    assert certificate.volume == pytest.approx(FIGURE_EIGHT_VOLUME, abs=1e-9)
    assert certificate.tetrahedra == 2
    assert isinstance(certificate.alternate, list)
    assert all("verdict" in item for item in certificate.alternate)
    assert certificate.to_json()["alternate_agrees"] == certificate.alternate_agrees


@pytest.mark.slow
def test_certificate_trefoil(trefoil):
    """Trefoil labels are forced real: condition (c) fails and nothing else runs."""
    system = region_equations(trefoil)
    solutions = solve(system, SolverConfig(starts=10, seed=1))
    assert solutions, "trefoil relations should have real roots"
    certificate = certify(trefoil, solutions[0], system)
    assert certificate.conclusion == FAIL
    assert certificate.verdicts["condition_c"].verdict == FAIL
    assert certificate.verdicts["simplicity"].verdict == SKIPPED


if __name__ == "__main__":
    test_fan()
    test_lobachevsky_against_series()
    test_tetrahedron_volumes()
    test_conclude()
    print("All tests passed!")
