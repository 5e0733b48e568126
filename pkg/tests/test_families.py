"""
Tests for the closed alternating braid family.
"""

import sys
import os
import math

import pytest

# Add the parent directory to the path so we can import from src
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.diagram import build_diagram, classify
from src.equations import region_equations
from src.errors import FamilyError
from src.families import (
    SUFFIXED,
    BraidSpec,
    bigon_adjacent,
    braid_closed_form,
    braid_closure,
    braid_diagram,
    braid_solution,
    braid_word,
    closed_form_residuals,
    region_arities,
    regular_region_shape,
)
from src.families.braids import CROSSING_LABEL, EDGE_LABEL
from src.solver import SolverConfig
from src.triangulate import GEODESIC_ARCS, certify


def test_braid_word():
    assert braid_word(BraidSpec(k=1, n=2)) == [1, 3, -2, 1, 3, -2]
    assert braid_word(BraidSpec(k=2, n=2, variant=SUFFIXED))[-3:] == [1, 3, 5]


def test_spec_validation():
    with pytest.raises(FamilyError):
        BraidSpec(n=1)
    with pytest.raises(FamilyError):
        BraidSpec(k=0)
    with pytest.raises(FamilyError):
        BraidSpec(variant="twisted")
    assert BraidSpec(k=3).strands == 8


def test_closure_of_two_strand_braid():
    """s1^3 closes to a trefoil."""
    pd = braid_closure([1, 1, 1])
    labels = sorted(label for crossing in pd for label in crossing)
    assert labels == sorted(list(range(1, 7)) * 2), "every arc label must appear twice"
    diagram = build_diagram(pd)
    report = classify(diagram)
    assert report.alternating and report.reduced
    assert len(diagram.components) == 1


def test_closure_errors():
    with pytest.raises(FamilyError):
        braid_closure([])
    with pytest.raises(FamilyError):
        braid_closure([1, 0, 1])
    with pytest.raises(FamilyError):
        braid_closure([1, 1], strands=3)


def test_family_diagrams():
    base = braid_diagram(BraidSpec(k=1, n=2))
    suffixed = braid_diagram(BraidSpec(k=1, n=2, variant=SUFFIXED))
    assert base.n == 6
    assert suffixed.n == 8
    for diagram in (base, suffixed):
        arities = region_arities(diagram)
        assert sum(arities.values()) == diagram.n + 2
        assert sum(k * count for k, count in arities.items()) == 4 * diagram.n


def test_regular_region_shape():
    assert regular_region_shape(3) == pytest.approx(1)
    assert regular_region_shape(4) == pytest.approx(0.5)
    assert regular_region_shape(5) == pytest.approx((3 - math.sqrt(5)) / 2)
    with pytest.raises(FamilyError):
        regular_region_shape(2)


def test_closed_form_labels():
    """Crossing labels +-i/2 and edge labels (-1-i)/2 close every triangle with no bigon side."""
    assert EDGE_LABEL ** 2 == pytest.approx(0.5j)
    assert abs(CROSSING_LABEL) == 0.5

    for n in (3, 4):
        spec = BraidSpec(k=1, n=n)
        system = region_equations(braid_diagram(spec))
        assert not bigon_adjacent(system)
        closed = braid_closed_form(spec, system)
        assert closed.notes[0].startswith("arity 3: residual")
        residuals = closed_form_residuals(system, closed)
        assert residuals[3] < 1e-12
        # corner parameters are all +-1 or +-i, and 1 - xi - xi' never vanishes for those
        assert residuals[4] > 0.3


def test_closed_form_misses_bigon_triangles():
    """With n = 2 every triangle has a bigon side, whose translation has modulus 1."""
    spec = BraidSpec(k=1, n=2)
    system = region_equations(braid_diagram(spec))
    triangles = {s.region for s in system.specs if s.arity == 3}
    assert triangles and triangles <= bigon_adjacent(system)
    residuals = closed_form_residuals(system, braid_closed_form(spec, system))
    assert residuals[3] == pytest.approx(0.5)


def test_strict_braid_solution_refuses_fallback():
    with pytest.raises(FamilyError, match="arity 4"):
        braid_solution(BraidSpec(k=1, n=3), strict=True)


def test_braid_solution(caplog):
    with caplog.at_level("WARNING", logger="src.families.braids"):
        result = braid_solution(BraidSpec(k=1, n=2), SolverConfig(starts=40, seed=2))
    assert result.source == "solver"
    assert "arity 3, 4" in result.fallback_reason
    assert any("using the solver" in record.getMessage() for record in caplog.records)
    assert result.solution.residual < 1e-9
    data = result.to_json()
    assert data["spec"] == {"k": 1, "n": 2, "variant": "base"}
    assert data["closed_form_notes"] == list(result.closed_form.notes)


@pytest.mark.slow
@pytest.mark.parametrize("n", [2, 3, 4])
def test_braid_members_certify(n):
    result = braid_solution(BraidSpec(k=1, n=n), SolverConfig(starts=60, seed=2))
    assert result.solution.residual < 1e-9
    certificate = certify(result.diagram, result.solution, result.system)
    failing = {k: v.verdict for k, v in certificate.verdicts.items() if not v.passed}
    assert certificate.conclusion == GEODESIC_ARCS, failing
    assert certificate.volume > 0


if __name__ == "__main__":
    test_braid_word()
    test_spec_validation()
    test_closure_of_two_strand_braid()
    test_regular_region_shape()
    print("All tests passed!")
