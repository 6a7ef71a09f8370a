from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chainparams.chain_core import ChainType
from chainparams.chambers import build_complex, chamber_adjacent_to_line, chamber_decomposition, locate
from chainparams.errors import AmbiguityError, ValidationError
from chainparams.exact_geometry import AffineFunctional, Box
from chainparams.finite_field import oracle_exists_semistable
from chainparams.parameter_space import rank_maximal_region, MapFlags

T = ChainType.parse


@pytest.fixture(scope="module")
def reference():
    return chamber_decomposition(T("1,1,1:2,1,0"), Box.square(-5, 5))


def test_one_parameter_segments():
    c = chamber_decomposition(T("1,1:1,0"), Box((F(0),), (F(5),)))
    assert len(c.of_dimension(1)) == 3
    assert [p.sample for p in c.of_dimension(0)] == [(1,), (3,), (5,)]


def test_reference_counts(reference):
    # frozen after the first computation
    assert len(reference.walls) == 29
    counts = [len(reference.of_dimension(k)) for k in (2, 1, 0)]
    assert counts == [80, 106, 41]


def test_reference_areas_and_samples(reference):
    assert sum(c.area for c in reference.of_dimension(2)) == 100
    for c in reference.of_dimension(2):
        assert all(line.value(c.sample) != 0 for line in reference.lines)


def test_reference_adjacency_flips_one_sign(reference):
    cells = {c.id: c for c in reference.of_dimension(2)}
    for c in cells.values():
        assert c.neighbors
        for j in c.neighbors:
            assert sum(a != b for a, b in zip(c.signs, cells[j].signs)) == 1


def test_lower_faces_specialize_neighbors(reference):
    by_id = {c.id: c for c in reference}
    for c in reference.of_dimension(1) + reference.of_dimension(0):
        zeros = sum(s == 0 for s in c.signs)
        assert zeros == 1 if c.dimension == 1 else zeros >= 2
        for j in c.neighbors:
            other = by_id[j]
            if other.dimension > c.dimension:
                assert all(a == b or a == 0 for a, b in zip(c.signs, other.signs))


def test_ids_are_deterministic(reference):
    again = chamber_decomposition(T("1,1,1:2,1,0"), Box.square(-5, 5))
    assert again.chambers == reference.chambers


@settings(max_examples=50)
@given(st.tuples(st.fractions(-5, 5, max_denominator=7), st.fractions(-5, 5, max_denominator=7)))
def test_locate_matches_signs(reference, point):
    c = reference.chambers[locate(reference, point)]
    assert c.signs == reference.signs_at(point)


def test_locate_outside_box(reference):
    with pytest.raises(ValidationError):
        locate(reference, (6, 0))


def test_chamber_next_to_kernel_line():
    t = T("2,1,1:3,0,0")
    region = rank_maximal_region(t, MapFlags(phi1_injective=True))
    line = region.by_label("sub(im phi1,E1,E2)")
    local = chamber_decomposition(t, Box.square(4, 5), [h.functional for h in region.halfspaces])
    cid = chamber_adjacent_to_line(local, line.functional, -1, region.halfspaces)
    chamber = local.chambers[cid]
    assert chamber.sample == (F(13, 3), F(13, 3))
    assert set(chamber.vertices) == {(4, 4), (5, 4), (4, 5)}
    wide = chamber_decomposition(t, Box.square(0, 10), [h.functional for h in region.halfspaces])
    with pytest.raises(AmbiguityError):
        chamber_adjacent_to_line(wide, line.functional, -1, region.halfspaces)


def test_build_complex_without_lines():
    c = build_complex([], Box.square(0, 1))
    assert len(c) == 1 and c.chambers[0].area == 1


def _inner_points(chamber):
    # midpoints between the sample and each vertex stay in the open cell
    return [tuple((s + v) / 2 for s, v in zip(chamber.sample, vertex)) for vertex in chamber.vertices]


@pytest.mark.parametrize("ranks", [(1, 2, 1), (2, 1, 1), (1, 1, 1)])
def test_semistability_constant_on_chambers(ranks):
    # linear chains have degree zero, so only the degree-zero walls matter
    t = ChainType(ranks, (0, 0, 0))
    complex_ = chamber_decomposition(t, Box.square(-2, 2))
    for c in complex_.of_dimension(2):
        verdicts = {oracle_exists_semistable(ranks, (0,) + p, 2) for p in [c.sample] + _inner_points(c)}
        assert len(verdicts) == 1, (ranks, c.sample)


def test_unknown_line_rejected(reference):
    with pytest.raises(ValidationError):
        reference.line_index(AffineFunctional((F(1), F(0)), F(7, 13)))
