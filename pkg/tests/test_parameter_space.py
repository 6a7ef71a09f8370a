from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from chainparams.chain_core import ChainType, ProblemInstance, alpha_slope
from chainparams.errors import PreconditionError, ValidationError
from chainparams.exact_geometry import AffineFunctional, Box
from chainparams.linear_chains import in_v_set
from chainparams.parameter_space import (
    PARALLELOGRAM_LABELS,
    IMPROPER,
    FlipFiltration,
    MapFlags,
    SubchainSignature,
    birationality_boundary,
    composite_surjective_region,
    enumerate_walls,
    extremal_summary,
    flip_codim_lower_bound,
    flip_codim_minimizer,
    flip_dim_bound,
    has_improper_walls,
    r2g2_region,
    rank_maximal_region,
    region_1m1,
    region_m1n,
    standard_halfspace,
    standard_hyperplane,
    triple_bounds,
    vanishing_flags,
    wall_for_signature,
)
from chainparams.parameter_space.regions import lower_bound_e0, lower_bound_e0e1

T = ChainType.parse
points = st.tuples(st.fractions(-30, 30, max_denominator=5), st.fractions(-30, 30, max_denominator=5))


@st.composite
def two_param_types(draw, min_rank=1, max_rank=3):
    ranks = tuple(draw(st.lists(st.integers(min_rank, max_rank), min_size=3, max_size=3)))
    degrees = tuple(draw(st.integers(-8, 8)) for _ in ranks)
    return ChainType(ranks, degrees)


def line_values(functionals):
    """Solutions alpha_1 of one-parameter functionals."""
    return sorted(f.constant / f.coefficients[0] for f in functionals)


def slope_sign(t, left, alpha):
    # sign of mu(left) - mu(t), computed from raw degrees
    return (alpha_slope(left, (0,) + tuple(alpha)) > alpha_slope(t, (0,) + tuple(alpha))) - (
        alpha_slope(left, (0,) + tuple(alpha)) < alpha_slope(t, (0,) + tuple(alpha))
    )


# -- standard hyperplanes --------------------------------------------------


def test_standard_hyperplane_examples():
    assert line_values([standard_hyperplane(T("2,1:3,1"), 0)]) == [F(1, 2)]
    assert triple_bounds(T("2,1:3,1"))[0] == F(1, 2)
    t = T("1,1,1:2,1,0")
    assert standard_hyperplane(t, 0).canonical().format() == "a1 + a2 = 3"
    assert standard_hyperplane(t, 1).canonical().format() == "a1 - 2 a2 = -3"
    with pytest.raises(ValidationError):
        standard_hyperplane(t, 2)


@settings(max_examples=60)
@given(two_param_types(), points, st.integers(0, 1))
def test_standard_halfspace_is_truncation_slope_bound(t, alpha, i):
    truncation = ChainType(
        tuple(r if j <= i else 0 for j, r in enumerate(t.ranks)),
        tuple(d if j <= i else 0 for j, d in enumerate(t.degrees)),
    )
    assert standard_halfspace(t, i).contains(alpha) == (slope_sign(t, truncation, alpha) <= 0)


# -- walls -------------------------------------------------------------------


def test_wall_examples():
    t = T("2,1:3,1")
    w = wall_for_signature(t, SubchainSignature((1, 1), 2))
    assert w.is_proper and line_values([w.functional]) == [2]
    assert triple_bounds(t)[1] == 2
    w = wall_for_signature(t, SubchainSignature((2, 0), 3))
    assert w.is_proper and line_values([w.functional]) == [F(1, 2)]
    assert wall_for_signature(T("2,2:1,1"), SubchainSignature((1, 1), 1)).kind == IMPROPER
    with pytest.raises(ValidationError):
        wall_for_signature(t, SubchainSignature((3, 0), 1))


def test_has_improper_examples():
    assert not has_improper_walls(T("2,1:3,1"))
    assert has_improper_walls(T("2,2:1,1"))
    assert not has_improper_walls(T("3,1,1:0,0,1"))


def _brute_force_walls(t, box, span=40):
    """Every (s, e) with e in a wide window, solved directly from the slope equation."""
    import itertools

    found = set()
    r, d = t.total_rank, t.total_degree
    for s in itertools.product(*(range(x + 1) for x in t.ranks)):
        size = sum(s)
        if not 0 < size < r:
            continue
        for e in range(-span, span + 1):
            coefficients = tuple(F(t.ranks[j] * size - s[j] * r) for j in range(1, t.n + 1))
            if not any(coefficients):
                continue
            f = AffineFunctional(coefficients, F(r * e - size * d))
            if box.meets(f):
                found.add(f.canonical())
    return found


def test_walls_for_11_in_unit_window():
    walls = enumerate_walls(T("1,1:1,0"), Box((F(0),), (F(5),)))
    assert line_values([w.functional for w in walls]) == [1, 3, 5]
    assert {w.functional for w in walls} == _brute_force_walls(T("1,1:1,0"), Box((F(0),), (F(5),)))


def test_improper_walls_excluded():
    walls = enumerate_walls(T("2,2:1,1"), Box((F(-5),), (F(5),)))
    assert walls and all(w.is_proper for w in walls)


@settings(max_examples=25, deadline=None)
@given(two_param_types(max_rank=2))
def test_walls_match_brute_force(t):
    box = Box.square(-3, 3)
    assert {w.functional for w in enumerate_walls(t, box)} == _brute_force_walls(t, box)


def test_complement_symmetry_example():
    t = T("1,1,1:2,1,0")
    sigma = SubchainSignature((1, 1, 0), 1)
    assert wall_for_signature(t, sigma).functional == wall_for_signature(t, sigma.complement(t)).functional


# -- regions -----------------------------------------------------------------


def test_rank_maximal_region_examples():
    t = T("2,1,1:3,0,0")
    assert len(rank_maximal_region(t).halfspaces) == 2
    r = rank_maximal_region(t, MapFlags(phi1_injective=True))
    assert r.by_label("sub(im phi1,E1,E2)").functional.canonical().format() == "a1 + a2 = 9"
    with pytest.raises(ValidationError):
        rank_maximal_region(t, MapFlags(phi2_gen_surjective=True, phi1_gen_surjective=True))


@settings(max_examples=60)
@given(two_param_types(), points)
def test_unconditional_bounds_are_standard_truncations(t, alpha):
    assert lower_bound_e0(t).contains(alpha) == standard_halfspace(t, 0).contains(alpha)
    assert lower_bound_e0e1(t).contains(alpha) == standard_halfspace(t, 1).contains(alpha)


def _cramer(f, g):
    (a, b), (c, e) = f.coefficients, g.coefficients
    det = a * e - b * c
    return ((f.constant * e - b * g.constant) / det, (a * g.constant - c * f.constant) / det)


def test_composite_surjective_parallelogram():
    t = T("1,3,2:5,2,0")
    region = composite_surjective_region(t)
    lines = [region.by_label(x).functional for x in PARALLELOGRAM_LABELS]
    # two parallel pairs
    assert lines[0].canonical().coefficients == lines[1].canonical().coefficients
    assert lines[2].canonical().coefficients == lines[3].canonical().coefficients
    expected = {_cramer(f, g) for f in lines[:2] for g in lines[2:]}
    cell = region.cell(Box.square(-100, 100), PARALLELOGRAM_LABELS)
    assert set(cell.vertices) == expected and len(expected) == 4
    with pytest.raises(PreconditionError):
        composite_surjective_region(T("1,1,1:0,0,0"))


def test_region_m1n_examples():
    r = region_m1n(T("2,1,1:3,0,0"))
    assert (r.constants["A_I"], r.constants["A_II"], r.constants["A_III"]) == (9, 6, 3)
    assert "A_IV" not in r.constants and r.constants["nonempty_interior"]
    r = region_m1n(T("2,1,2:3,1,0"))
    assert r.constants["A_IV"] == 9 and r.constants["printed_condition"] == 6
    with pytest.raises(ValidationError):
        region_m1n(T("1,1,1:0,0,0"))


def test_region_1m1_examples():
    r = region_1m1(T("1,2,1:2,0,0"))
    c = r.constants
    assert (c["A_I"], c["A_II"], c["A_III"], c["A_IV"]) == (6, 2, -2, -10)
    assert c["nonempty_interior"]
    iii, iv = r.halfspaces[2].functional, r.halfspaces[3].functional
    assert iii.coefficients == iv.coefficients == (-2, 1)
    assert len(r.annotations) == 2


@settings(max_examples=40)
@given(st.integers(2, 4), st.integers(1, 3), st.tuples(*[st.integers(-6, 6)] * 3), points)
def test_region_m1n_agrees_with_general_bounds(m, n, degrees, alpha):
    t = ChainType((m, 1, n), degrees)
    r = region_m1n(t)
    assert r.by_label("sub(E0,0,0)").contains(alpha) == lower_bound_e0(t).contains(alpha)
    assert r.by_label("sub(E0,E1,0)").contains(alpha) == lower_bound_e0e1(t).contains(alpha)
    full = rank_maximal_region(t, MapFlags(phi1_injective=True))
    assert r.by_label("sub(im phi1,E1,E2)").contains(alpha) == full.by_label("sub(im phi1,E1,E2)").contains(alpha)


@settings(max_examples=40)
@given(st.integers(2, 4), st.tuples(*[st.integers(-6, 6)] * 3), points)
def test_region_1m1_agrees_with_general_bounds(m, degrees, alpha):
    t = ChainType((1, m, 1), degrees)
    r = region_1m1(t)
    full = rank_maximal_region(t, MapFlags(phi1_gen_surjective=True, phi2_injective=True))
    for label in ("sub(E0,0,0)", "sub(E0,E1,0)", "sub(E0,im phi2,E2)", "sub(0,ker phi1,0)"):
        assert r.by_label(label).contains(alpha) == full.by_label(label).contains(alpha), label


def test_r2g2_examples():
    r = r2g2_region(2, 2)
    assert [h.format() for h in r.halfspaces] == ["a1 >= 2", "-a1 + a2 >= 2"]
    assert [h.format() for h in r2g2_region(1, 3).halfspaces] == ["a1 >= 4"]
    assert r.contains((3, 6)) and not r.contains((3, 4))
    with pytest.raises(ValidationError):
        r2g2_region(2, 1)


# -- birationality boundary --------------------------------------------------


def test_boundary_triples():
    values = line_values(b.functional for b in birationality_boundary(T("1,2:1,0"), Box((F(0),), (F(5),))))
    assert values == [1, 4] == list(triple_bounds(T("1,2:1,0")))
    wide = line_values(b.functional for b in birationality_boundary(T("1,2:1,0"), Box((F(-20),), (F(20),))))
    assert wide == [F(1 + 3 * k) for k in range(-7, 7)]
    values = line_values(b.functional for b in birationality_boundary(T("1,1:1,0"), Box((F(-4),), (F(4),))))
    assert values == [1] and triple_bounds(T("1,1:1,0")) == (1, None)


def test_standard_hyperplanes_on_boundary():
    t = T("1,1,1:2,1,0")
    found = {b.functional for b in birationality_boundary(t, Box.square(-5, 5))}
    assert {standard_hyperplane(t, i).canonical() for i in range(2)} <= found


@settings(max_examples=20, deadline=None)
@given(two_param_types(max_rank=2))
def test_boundary_provenance(t):
    for b in birationality_boundary(t, Box.square(-4, 4)):
        left, right = b.split.left, b.split.right
        assert left + right == t
        assert in_v_set(left.ranks, right.ranks).member
        # the split slopes agree at points of the hyperplane
        f = b.functional
        c1, c2 = f.coefficients
        p = (f.constant / c1, F(0)) if c1 else (F(0), f.constant / c2)
        assert alpha_slope(left, (0,) + p) == alpha_slope(right, (0,) + p)


# -- vanishing, flips, extremal --------------------------------------------


def test_vanishing_examples():
    assert vanishing_flags((0, 3, 6), 2).h2_vanishes
    assert vanishing_flags((0, 2, 4), 2, D=(1, 2), eps={1: 0, 2: 0}, stability_flags={1: True, 2: True}).h2_vanishes
    assert not vanishing_flags((0, 1, 2), 2).h2_vanishes
    with pytest.raises(ValidationError):
        vanishing_flags((0, 2, 4), 2, D=(1,))
    assert vanishing_flags((0, 1), 2, slopes=(1, 2)).h0_vanishes


def test_flip_examples():
    piece = T("1,1,1:0,0,0")
    assert flip_dim_bound(FlipFiltration((piece, piece)), 2) == 4
    assert flip_codim_lower_bound(2) == 1 and flip_codim_minimizer(2) == 2
    assert flip_codim_lower_bound(5) == 4
    with pytest.raises(ValidationError):
        FlipFiltration((piece,))


@pytest.mark.parametrize("g", range(2, 11))
def test_flip_codim_is_genus_minus_one(g):
    # direct scan of the codimension term over a long range of m
    terms = {m: m * (m - 1) // 2 * (g - 1) + (m * (m - 3) + 2) // 2 for m in range(2, 60)}
    assert flip_codim_lower_bound(g) == min(terms.values()) == g - 1
    assert flip_codim_minimizer(g) == 2


def test_extremal_examples():
    s = extremal_summary(ProblemInstance(2, T("2,1,1:3,0,0")))
    assert (s.dimension, s.fiber_dimension, s.base) == (7, 3, "J^0 x X^(0) x U^s(1,3)")
    s = extremal_summary(ProblemInstance(2, T("1,2,1:2,0,0")))
    assert (s.dimension, s.fiber_dimension) == (7, 1)
    s = extremal_summary(ProblemInstance(2, T("2,1,2:3,1,0")))
    assert (s.dimension, s.b2) == (9, 4)
    with pytest.raises(PreconditionError):
        extremal_summary(ProblemInstance(2, T("1,2,1:0,0,2")))


@settings(max_examples=50)
@given(st.integers(2, 6), st.integers(2, 6), st.tuples(*[st.integers(-10, 10)] * 3))
def test_extremal_dimension_consistent(m, g, degrees):
    t = ChainType((1, m, 1), degrees)
    assume(degrees[0] > degrees[2])
    s = extremal_summary(ProblemInstance(g, t))
    assert s.dimension == s.general_dimension
