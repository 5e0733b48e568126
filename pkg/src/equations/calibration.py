"""
Matching generated region walks against a reference labelling.

A reference lists, per region, the side translations (sign, label name or None, shift) and the
corner labels in walk order. Generated walks match when some renaming of variables, together
with a rotation, reflection or overall negation of each walk, turns one into the other.
Calibration runs the matcher over every candidate sign convention and orientation.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..diagram import LinkDiagram, orient
from .labels import Convention
from .polynomial import Polynomial
from .system import RELATIONS_PER_REGION, EquationSystem, RegionSpec, region_equations, region_relations

logger = logging.getLogger(__name__)

Translation = Tuple[int, Optional[str], int]  # (sign, name or None for constants, shift)


@dataclass(frozen=True)
class ReferenceRegion:
    """A region walk written with reference label names."""

    translations: Tuple[Translation, ...]
    corners: Tuple[str, ...]

    @property
    def arity(self) -> int:
        return len(self.translations)


@dataclass(frozen=True)
class CalibrationResult:
    convention: Convention
    orientation: Tuple[bool, ...]
    mapping: Dict[str, str]  # reference name -> generated name


def _normalize(sign: int, name: Optional[str], shift: int) -> Translation:
    if name is None:
        return (1, None, sign * shift)
    return (sign, name, shift)


def _walk(spec: RegionSpec, names: List[str]) -> List[Tuple[Translation, Tuple[int, str]]]:
    steps = []
    for t, factor, var in zip(spec.translations, spec.factors, spec.crossing_vars):
        base = None if t.expr.var is None else names[t.expr.var]
        steps.append((_normalize(t.sign, base, t.expr.shift), (factor, names[var])))
    return steps


def _symmetries(steps):
    """Rotations and reflections of a walk, each with and without overall negation."""
    k = len(steps)
    reflected = [(steps[k - 1 - i][0], steps[(k - 2 - i) % k][1]) for i in range(k)]
    for base in (steps, reflected):
        for r in range(k):
            rotated = base[r:] + base[:r]
            yield rotated
            yield [(_normalize(-sign, name, shift) if name is not None else (1, None, -shift), corner)
                   for (sign, name, shift), corner in rotated]


def _bind(name_ref: str, name_ours: str, forward: Dict[str, str], backward: Dict[str, str]) -> bool:
    if name_ref in forward:
        return forward[name_ref] == name_ours
    if name_ours in backward:
        return False
    forward[name_ref] = name_ours
    backward[name_ours] = name_ref
    return True


def _unify(reference: ReferenceRegion, steps, forward: Dict[str, str],
           backward: Dict[str, str]) -> Optional[Tuple[Dict[str, str], Dict[str, str]]]:
    forward, backward = dict(forward), dict(backward)
    for ref_t, ref_corner, (ours_t, (factor, ours_corner)) in zip(
            reference.translations, reference.corners, steps):
        sign, name, shift = _normalize(*ref_t)
        o_sign, o_name, o_shift = ours_t
        if (sign, shift) != (o_sign, o_shift) or (name is None) != (o_name is None):
            return None
        if name is not None and not _bind(name, o_name, forward, backward):
            return None
        if factor != 1 or not _bind(ref_corner, ours_corner, forward, backward):
            return None
    return forward, backward


def match_reference(system: EquationSystem, reference: Sequence[ReferenceRegion]) -> Optional[Dict[str, str]]:
    """
    Search for a variable renaming under which the generated walks equal the reference walks.

    Args:
        system: Generated system
        reference: One ReferenceRegion per non-bigon region

    Returns:
        Map reference name -> generated name, or None when no renaming works
    """
    names = system.names
    ours = [_walk(spec, names) for spec in system.specs]
    if len(ours) != len(reference):
        return None
    order = sorted(range(len(reference)), key=lambda i: -reference[i].arity)

    def search(position: int, used: Tuple[int, ...], forward, backward) -> Optional[Dict[str, str]]:
        if position == len(order):
            return forward
        target = reference[order[position]]
        for candidate, steps in enumerate(ours):
            if candidate in used or len(steps) != target.arity:
                continue
            for variant in _symmetries(steps):
                bound = _unify(target, variant, forward, backward)
                if bound is None:
                    continue
                found = search(position + 1, used + (candidate,), *bound)
                if found is not None:
                    return found
        return None

    mapping = search(0, (), {}, {})
    if mapping is not None and len(mapping) != len(names):
        logger.debug("Reference covers %d of %d variables", len(mapping), len(names))
        return None
    return mapping


def orientations(diagram: LinkDiagram) -> Iterator[Tuple[bool, ...]]:
    """All orientation flag tuples, starting with the PD orientation."""
    for flags in itertools.product((True, False), repeat=len(diagram.components)):
        yield flags


def calibrate(diagram: LinkDiagram, reference: Sequence[ReferenceRegion],
              conventions: Optional[Sequence[Convention]] = None) -> List[CalibrationResult]:
    """
    Every (convention, orientation) under which the generated system matches the reference.

    Args:
        diagram: Alternating diagram the reference was written for
        reference: Reference region walks
        conventions: Candidates to try (all four by default)

    Returns:
        Matches in trial order; empty when the reference is unreachable
    """
    results = []
    for convention in conventions or Convention.candidates():
        for flags in orientations(diagram):
            system = region_equations(orient(diagram, flags), convention)
            mapping = match_reference(system, reference)
            if mapping is not None:
                logger.info("Reference matched with %s, orientation %s", convention, flags)
                results.append(CalibrationResult(convention, flags, mapping))
    if not results:
        logger.warning("No convention reproduces the reference relations")
    return results


Fraction = Tuple[Polynomial, Polynomial]  # (numerator, denominator)


@dataclass(frozen=True)
class PrintedRegion:
    """
    One region's relations as printed, over reference variable indices.

    Triangles list their three relations. Larger regions list the corner parameters as
    fractions in printed corner order; their relations are the closure identities starting at
    the first three printed corners.
    """

    relations: Tuple[Polynomial, ...] = ()
    fractions: Tuple[Fraction, ...] = ()


@dataclass(frozen=True)
class PrintedMatch:
    """
    Attributes:
        regions: printed region index -> generated region id
        starts: generated region id -> corner whose relation is the first printed one
        aligned: every equation of the system is one of the printed relations
    """

    regions: Dict[int, int]
    starts: Dict[int, int]
    aligned: bool


def _renamer(system: EquationSystem, reference_names: Sequence[str],
             mapping: Dict[str, str]) -> Dict[int, int]:
    index = {name: i for i, name in enumerate(system.names)}
    return {i: index[mapping[name]] for i, name in enumerate(reference_names) if name in mapping}


def _closure_fraction(fractions: Sequence[Fraction]) -> Fraction:
    """K(xi_1, .., xi_m) for fractional xi, as one (numerator, denominator) pair."""
    one = Polynomial.constant(1)
    previous, current = (one, one), (one, one)
    for numerator, denominator in fractions:
        value = (current[0] * denominator * previous[1] - numerator * previous[0] * current[1],
                 current[1] * denominator * previous[1])
        previous, current = current, value
    return current


def _corner_maps(spec: RegionSpec, fractions: Sequence[Fraction]) -> Iterator[Tuple[int, int]]:
    """(shift, direction) such that printed corner i is generated corner shift + direction * i."""
    k = spec.arity
    translations = spec.translation_polys()
    factors = spec.crossing_polys()
    for direction in (1, -1):
        for shift in range(k):
            corners = [(shift + direction * i) % k for i in range(k)]
            if all((numerator * translations[g] * translations[(g + 1) % k] - denominator * factors[g]).is_zero()
                   for (numerator, denominator), g in zip(fractions, corners)):
                yield shift, direction


def _scaled_equal(generated: Polynomial, printed: Fraction, spec: RegionSpec, start: int) -> bool:
    """generated = t_j..t_{j+k-2} K and printed = numerator / denominator are the same relation."""
    translations = spec.translation_polys()
    scale = Polynomial.constant(1)
    for m in range(spec.arity - 1):
        scale = scale * translations[(start + m) % spec.arity]
    numerator, denominator = printed
    return (generated * denominator - numerator * scale).is_zero()


def match_printed(system: EquationSystem, printed: Sequence[PrintedRegion], reference_names: Sequence[str],
                  mapping: Dict[str, str]) -> Optional[PrintedMatch]:
    """
    Compare the generated relations with printed ones as polynomials.

    Triangle relations must agree up to sign. For larger regions every printed corner fraction
    must equal a generated one identically (cross-multiplied), with the corners in cyclic order
    either way round; the corner matched to the first printed relation gives the region's start.

    Args:
        system: Generated system
        printed: One PrintedRegion per non-bigon region
        reference_names: Reference variable name of each printed variable index
        mapping: Reference name -> generated name

    Returns:
        PrintedMatch, or None when some printed region has no generated counterpart
    """
    rename = _renamer(system, reference_names, mapping)
    if len(rename) != len(reference_names):
        logger.debug("Mapping leaves %d printed variables unnamed", len(reference_names) - len(rename))
        return None
    regions: Dict[int, int] = {}
    starts: Dict[int, int] = {}
    for position, region in enumerate(printed):
        found = None
        for spec in system.specs:
            if spec.region in regions.values():
                continue
            if region.fractions:
                if spec.arity != len(region.fractions):
                    continue
                fractions = [(n.rename(rename), d.rename(rename)) for n, d in region.fractions]
                for shift, direction in _corner_maps(spec, fractions):
                    # a reversed walk runs each printed relation backwards; continuants are symmetric
                    found = shift if direction == 1 else (shift - spec.arity + 4 - RELATIONS_PER_REGION) % spec.arity
                    break
            elif spec.arity == 3:
                ours = region_relations(spec)
                theirs = [p.rename(rename) for p in region.relations]
                if all(any(p == q or p == -q for q in theirs) for p in ours):
                    found = 0
            if found is not None:
                regions[position] = spec.region
                if region.fractions:
                    starts[spec.region] = found
                break
        if found is None:
            logger.info("Printed region %d matches no generated region", position)
            return None
    return PrintedMatch(regions, starts, _aligned(system, printed, rename, regions, starts))


def _printed_index(equation: int, direction: int) -> int:
    """Printed relation that the system's equation at this index must equal."""
    return equation if direction == 1 else RELATIONS_PER_REGION - 1 - equation


def _aligned(system: EquationSystem, printed: Sequence[PrintedRegion], rename: Dict[int, int],
             regions: Dict[int, int], starts: Dict[int, int]) -> bool:
    """Whether the system's own equations are exactly the printed relations."""
    for position, region_id in regions.items():
        region = printed[position]
        if not region.fractions:
            continue
        if system.start_for(region_id) != starts[region_id]:
            return False
        spec = system.spec_for(region_id)
        k = spec.arity
        fractions = [(n.rename(rename), d.rename(rename)) for n, d in region.fractions]
        _, direction = next(_corner_maps(spec, fractions))
        equations = [e.polynomial for e in system.equations if e.region == region_id]
        for index, equation in enumerate(equations):
            i = _printed_index(index, direction)
            relation = _closure_fraction([fractions[(i + m) % k] for m in range(k - 2)])
            if not _scaled_equal(equation, relation, spec, starts[region_id] + index):
                return False
    return True
