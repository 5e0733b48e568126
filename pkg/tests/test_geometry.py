"""
Tests for the geodesic-arc conditions, Mobius helpers and horoball development.
"""

import sys
import os

import numpy as np
import pytest

# Add the parent directory to the path so we can import from src
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.errors import DevelopError
from src.equations import residual_norm
from src.geometry import (
    FAIL,
    PASS,
    VACUOUS,
    audit_corners,
    check_conditions,
    cross_ratio_audit,
    cross_sections,
    develop,
)
from src.geometry.development import BOTTOM, TOP
from src.geometry.conditions import cross_section_polygon, interior_angles
from src.geometry.mobius import (
    crossing_turn,
    cross_ratio,
    horoball,
    normalize,
    point,
    projective_distance,
    to_complex,
    translation,
)
from src.solver import Solution, conjugate


def test_conditions_hold_for_8_8_2(link_8_8_2, system_8_8_2, solution_8_8_2):
    report = check_conditions(link_8_8_2, solution_8_8_2, system_8_8_2)
    assert report.a.verdict == PASS
    assert report.b.verdict == PASS, report.b.witnesses
    assert report.c.verdict == PASS
    assert report.convexity.verdict == PASS, report.convexity.message
    assert report.passed


def test_real_labels_fail_condition_c(figure_eight, figure_eight_system):
    """With every label real nothing certifies a non-real crossing."""
    names = figure_eight_system.names
    real = Solution(np.full(len(names), 0.5), names, 0.0)
    report = check_conditions(figure_eight, real, figure_eight_system)
    assert report.a.verdict == VACUOUS
    assert report.c.verdict == FAIL
    assert not report.passed


def test_short_assignment_rejected(figure_eight, figure_eight_system):
    with pytest.raises(ValueError, match="1 values"):
        check_conditions(figure_eight, [0.5j], figure_eight_system)
    too_long = [0.5j] * (len(figure_eight_system.variables) + 1)
    with pytest.raises(ValueError, match="variables"):
        check_conditions(figure_eight, too_long, figure_eight_system)


def test_development_places_infinity(link_8_8_2, system_8_8_2, solution_8_8_2):
    """The base region's first vertex sits at infinity under the height-1 horosphere."""
    config = develop(link_8_8_2, solution_8_8_2, system=system_8_8_2)
    ball = config.horoballs[config.infinite_vertex]
    assert ball.center is None
    assert ball.diameter == pytest.approx(1.0)
    assert config.mismatch < 1e-8, "region frames disagree after a full loop"
    assert not config.null_arcs
    finite = [b for b in config.horoballs.values() if b.center is not None]
    assert finite and all(b.diameter > 0 for b in finite)


def test_cross_ratio_audit(link_8_8_2, system_8_8_2, solution_8_8_2):
    config = develop(link_8_8_2, solution_8_8_2, system=system_8_8_2)
    top = audit_corners(config, solution_8_8_2, TOP)
    bottom = audit_corners(config, solution_8_8_2, BOTTOM)
    assert top.corners and bottom.corners
    assert bottom.max_deviation < 1e-8, "bottom polyhedron corners disagree with the labels"
    assert cross_ratio_audit(config, solution_8_8_2) == max(top.max_deviation, bottom.max_deviation)


def test_cross_ratio_audit_sees_bottom_faults(link_8_8_2, system_8_8_2, solution_8_8_2, monkeypatch):
    """A vertex moved in the bottom development only must still show up in the audit."""
    config = develop(link_8_8_2, solution_8_8_2, system=system_8_8_2)
    bottom = config.developments[BOTTOM]
    placed = bottom.positions()
    moved = next(v for v in sorted(placed) if to_complex(placed[v]) is not None)
    shifted = {**placed, moved: point(to_complex(placed[moved]) + 0.25)}
    monkeypatch.setattr(bottom, "positions", lambda: shifted)
    assert audit_corners(config, solution_8_8_2, TOP).max_deviation < 1e-8
    assert cross_ratio_audit(config, solution_8_8_2) > 1e-3


def _cross_ratios(config):
    ratios = []
    for kind in (TOP, BOTTOM):
        positions = config.developments[kind].positions()
        keys = sorted(positions)
        for i in range(len(keys) - 3):
            ratios.append(cross_ratio(*(positions[k] for k in keys[i:i + 4])))
    return np.array(ratios)


def test_development_is_base_region_covariant(link_8_8_2, system_8_8_2, solution_8_8_2):
    """Two base regions give placements that differ by one Mobius map, so cross-ratios agree."""
    bases = [r.id for r in link_8_8_2.regions if r.arity >= 3]
    first = develop(link_8_8_2, solution_8_8_2, base_region=bases[0], system=system_8_8_2)
    for base in bases[1:]:
        other = develop(link_8_8_2, solution_8_8_2, base_region=base, system=system_8_8_2)
        assert np.max(np.abs(_cross_ratios(first) - _cross_ratios(other))) < 1e-9


def test_conjugate_fails_orientation(link_8_8_2, system_8_8_2, solution_8_8_2):
    other = conjugate(solution_8_8_2)
    assert residual_norm(system_8_8_2, other.values) < 1e-10
    report = check_conditions(link_8_8_2, other, system_8_8_2)
    assert report.a.verdict == FAIL
    assert not report.passed


def test_develop_rejects_bad_input(figure_eight, figure_eight_system, figure_eight_solution):
    bigon = next(r.id for r in figure_eight.regions if r.arity == 2)
    with pytest.raises(DevelopError):
        develop(figure_eight, figure_eight_solution, base_region=bigon, system=figure_eight_system)
    with pytest.raises(DevelopError):
        develop(figure_eight, figure_eight_solution, base_region=99, system=figure_eight_system)
    zeros = Solution(np.zeros(len(figure_eight_system.names)), figure_eight_system.names, 0.0)
    with pytest.raises(DevelopError):
        develop(figure_eight, zeros, system=figure_eight_system)


def test_cross_sections(figure_eight, figure_eight_system, figure_eight_solution):
    sections = cross_sections(figure_eight, figure_eight_solution, figure_eight_system)
    assert len(sections) == 2 * figure_eight.n
    for section in sections:
        if len(section["polygon"]) == 3:
            assert abs(sum(section["angles"])) == pytest.approx(np.pi)
            assert len(section["triangle_angles"]) == 3


def test_cross_section_polygon_merges_corners():
    assert len(cross_section_polygon(0.5j, -0.5 + 1j)) == 4
    # u = -1 sends u + 1 onto the first corner
    assert len(cross_section_polygon(-1 + 0j, 0.5j)) == 3


def test_interior_angles_of_square():
    angles = interior_angles([0j, 1 + 0j, 1 + 1j, 1j])
    assert all(abs(abs(a) - np.pi / 2) < 1e-12 for a in angles)


def test_cross_ratio_normal_form():
    """(inf, 0, 1, z) has cross-ratio 1 - z, invariant under Mobius maps."""
    z = 0.3 + 0.8j
    points = [point(None), point(0), point(1), point(z)]
    assert cross_ratio(*points) == pytest.approx(1 - z)
    mobius = np.array([[2, 1j], [0.5, 1 - 1j]], dtype=complex)
    moved = [mobius @ p for p in points]
    assert cross_ratio(*moved) == pytest.approx(1 - z)


def test_horoball_frames():
    center, height, meridian = horoball(translation(0.7 - 0.2j))
    assert center is None
    assert height == pytest.approx(1.0)
    assert meridian == pytest.approx(1.0)

    x = 0.5 + 0.5j
    center, diameter, _ = horoball(crossing_turn(x))
    assert center == pytest.approx(0)
    assert diameter == pytest.approx(abs(x))


def test_projective_helpers():
    m = normalize(np.array([[1, 2], [3, 4]], dtype=complex))
    assert complex(np.linalg.det(m)) == pytest.approx(1)
    assert projective_distance(m, -m) == pytest.approx(0)
    assert to_complex(point(None)) is None
    assert to_complex(point(2 + 1j)) == 2 + 1j
    with pytest.raises(DevelopError):
        normalize(np.zeros((2, 2), dtype=complex))


if __name__ == "__main__":
    test_cross_section_polygon_merges_corners()
    test_interior_angles_of_square()
    test_cross_ratio_normal_form()
    test_horoball_frames()
    test_projective_helpers()
    print("All tests passed!")
