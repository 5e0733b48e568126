"""
Tests for PD parsing, regions and diagram classification.
"""

import sys
import os

import pytest

# Add the parent directory to the path so we can import from src
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.diagram import classify, faces, orient, parse_pd, pd_code, pd_json, require_alternating
from src.errors import DiagramParseError, DiagramStructureError, NonAlternatingError, OrientationError
from tests.golden import FIGURE_EIGHT_PD, KINKED_PD, TREFOIL_PD

NON_ALTERNATING_PD = "X[1,4,2,5] X[3,6,4,1] X[2,6,3,5]"


def test_region_arities(figure_eight, trefoil):
    """Every connected diagram has n + 2 regions using each edge side once."""
    assert sorted(r.arity for r in figure_eight.regions) == [2, 2, 3, 3, 3, 3]
    assert sorted(r.arity for r in trefoil.regions) == [2, 2, 2, 3, 3]
    sides = [(inc.edge, inc.side) for r in figure_eight.regions for inc in r.incidences]
    assert len(sides) == len(set(sides)) == 2 * len(figure_eight.edges), "edge sides not used exactly once"


def test_faces_ordered_by_id(figure_eight):
    regions = faces(figure_eight)
    assert [r.id for r in regions] == list(range(figure_eight.n + 2))


def test_region_across_is_symmetric(figure_eight):
    """Crossing an edge twice returns to the starting incidence."""
    for region in figure_eight.regions:
        for position in range(region.arity):
            other, back = figure_eight.region_across(region, position)
            again, returned = figure_eight.region_across(other, back)
            assert (again.id, returned) == (region.id, position)


def test_classify_trefoil(trefoil):
    report = classify(trefoil)
    assert report.alternating
    assert report.reduced
    assert len(report.bigons) == 3, f"expected three bigons, got {report.bigons}"


def test_classify_kink():
    """A nugatory crossing makes the diagram non-reduced."""
    report = classify(parse_pd(KINKED_PD))
    assert not report.reduced
    assert report.nugatory == (3,)


def test_non_alternating_rejected():
    diagram = parse_pd(NON_ALTERNATING_PD)
    assert not classify(diagram).alternating
    with pytest.raises(NonAlternatingError):
        require_alternating(diagram)


def test_parse_error_positions():
    """Parse errors report the offending character offset."""
    with pytest.raises(DiagramParseError) as info:
        parse_pd("X[1,4,2,5] Q")
    assert info.value.position == 11
    assert "position 11" in str(info.value)

    with pytest.raises(DiagramParseError) as info:
        parse_pd("X[1,4,2]")
    assert info.value.position == 2

    with pytest.raises(DiagramParseError):
        parse_pd("   ")


def test_labels_used_twice():
    with pytest.raises(DiagramStructureError):
        parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,7]")


def test_wrapped_and_json_forms():
    """PD[...] and JSON inputs describe the same diagram as the bare form."""
    bare = parse_pd(TREFOIL_PD)
    wrapped = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]")
    from_json = parse_pd(pd_json(bare))
    assert wrapped.to_pd() == bare.to_pd() == from_json.to_pd()
    assert pd_code(bare) == TREFOIL_PD


def test_crossing_signs(figure_eight, trefoil):
    """The figure-eight knot is amphichiral, the trefoil is not."""
    assert figure_eight.writhe() == 0
    assert abs(trefoil.writhe()) == 3


def test_orientation(figure_eight, link_8_8_2):
    reversed_knot = orient(figure_eight, [False])
    assert reversed_knot.writhe() == figure_eight.writhe(), "reversing a knot keeps crossing signs"
    assert len(link_8_8_2.components) == 2

    first = link_8_8_2.linking_number(0, 1)
    flipped = orient(link_8_8_2, [True, False])
    assert flipped.linking_number(0, 1) == -first, "reversing one component negates the linking number"

    with pytest.raises(OrientationError):
        orient(figure_eight, [True, True])


def test_component_of_strand(link_8_8_2):
    components = {link_8_8_2.component_of_strand(c, over) for c in range(link_8_8_2.n) for over in (True, False)}
    assert components == {0, 1}


if __name__ == "__main__":
    figure_eight = parse_pd(FIGURE_EIGHT_PD)
    trefoil = parse_pd(TREFOIL_PD)
    test_region_arities(figure_eight, trefoil)
    test_region_across_is_symmetric(figure_eight)
    test_classify_trefoil(trefoil)
    test_classify_kink()
    test_non_alternating_rejected()
    test_parse_error_positions()
    test_wrapped_and_json_forms()
    test_crossing_signs(figure_eight, trefoil)
    print("All tests passed!")
