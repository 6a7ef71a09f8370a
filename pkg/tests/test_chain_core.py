from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from chainparams.chain_core import (
    ChainType,
    ProblemInstance,
    StabilityParameter,
    alpha_degree,
    alpha_from_tau,
    alpha_slope,
    chi_holomorphic,
    convert_parameters,
    dual_type,
    dualize,
    ext1_dim_under_vanishing,
    moduli_dimension,
    riemann_roch_chi,
    shift,
)
from chainparams.errors import PreconditionError, ValidationError

T = ChainType.parse


def bundle_chi(r2, d2, r1, d1, g):
    # Riemann-Roch for Hom(E2, E1), zero bundles allowed
    return r2 * d1 - r1 * d2 + r2 * r1 * (1 - g)


def chi_oracle(t2, t1, g):
    """Sum over the two terms of the hom complex, written independently."""
    n = len(t1.ranks)
    diag = sum(bundle_chi(t2.ranks[i], t2.degrees[i], t1.ranks[i], t1.degrees[i], g) for i in range(n))
    off = sum(bundle_chi(t2.ranks[i], t2.degrees[i], t1.ranks[i - 1], t1.degrees[i - 1], g) for i in range(1, n))
    return diag - off


@st.composite
def chain_types(draw, length=None, min_rank=0):
    n = draw(st.integers(2, 4)) if length is None else length
    ranks = draw(st.lists(st.integers(min_rank, 3), min_size=n, max_size=n))
    assume(any(ranks))
    degrees = [draw(st.integers(-10, 10)) if r else 0 for r in ranks]
    return ChainType(tuple(ranks), tuple(degrees))


@st.composite
def splits(draw):
    t1 = draw(chain_types())
    t2 = draw(chain_types(length=len(t1.ranks)))
    return t1, t2


genera = st.integers(2, 6)
params = st.lists(st.fractions(-10, 10, max_denominator=6), min_size=1, max_size=3)


def test_parse_and_str():
    t = T("1,1,1:2,1,0")
    assert t.ranks == (1, 1, 1) and t.degrees == (2, 1, 0)
    assert str(t) == "(1,1,1;2,1,0)"
    assert T("1,1;1,0") == T("1,1:1,0")


def test_zero_rank_slot_needs_zero_degree():
    with pytest.raises(ValidationError):
        ChainType((1, 0), (1, 3))
    with pytest.raises(ValidationError):
        ChainType((1, -1), (0, 0))


def test_genus_and_normalization_checks():
    with pytest.raises(ValidationError):
        ProblemInstance(1, T("1,1:0,0"))
    with pytest.raises(ValidationError):
        StabilityParameter((1, 2))


def test_alpha_degree_and_slope():
    t = T("1,1,1:2,1,0")
    assert alpha_degree(t, (0, 1, 2)) == 6
    assert alpha_slope(t, (0, 1, 2)) == 2
    assert alpha_degree(T("2,1:3,1"), (0, F(1, 2))) == F(9, 2)
    assert alpha_slope(t, shift((0, 1, 2), 5)) == 7


def test_dualize_examples():
    t, a = dualize(T("1,2,1:2,0,0"), (0, 1, 3))
    assert t == T("1,2,1:0,0,-2") and a.values == (0, 2, 3)
    t, a = dualize(T("1,1:1,0"), (0, 2))
    assert t == T("1,1:0,-1") and a.values == (0, 2)


def test_chi_examples():
    assert chi_holomorphic(T("0,1,0:0,5,0"), T("1,0,0:3,0,0"), 2) == 3
    assert chi_holomorphic(T("1,1,1:0,0,0"), T("1,1,1:0,0,0"), 2) == -1
    assert chi_holomorphic(T("0,2,0:0,1,0"), T("1,1,1:5,1,1"), 4) == -8


def test_riemann_roch_examples():
    assert riemann_roch_chi(1, 0, 1, 0, 2) == -1
    assert riemann_roch_chi(1, 3, 1, 0, 2) == -4
    assert riemann_roch_chi(2, 4, 2, 4, 3) == -8


def test_moduli_dimension_examples():
    assert moduli_dimension(ProblemInstance(2, T("2,1,1:3,0,0"))) == 7
    assert moduli_dimension(ProblemInstance(2, T("1,1:1,0"))) == 3
    assert moduli_dimension(ProblemInstance(2, T("1,1,1:0,0,0"))) == 2
    with pytest.raises(PreconditionError):
        moduli_dimension(ProblemInstance(2, T("1,0:1,0")))


def test_ext1_examples():
    # extension of (0, Q1, 0) by (E2 -> E2 -> E2(D)), m=3, d0=5, d2=1
    assert ext1_dim_under_vanishing(T("0,2,0:0,1,0"), T("1,1,1:5,1,1"), 2) == 8
    # Ext^1(Q0, E1) for bundles, as chains with an empty second slot
    assert ext1_dim_under_vanishing(T("1,0:3,0"), T("1,0:0,0"), 2) == 4
    with pytest.raises(PreconditionError):
        ext1_dim_under_vanishing(T("1,0:0,0"), T("1,0:9,0"), 2)


def test_tau_examples():
    t = T("1,1,1:2,1,0")
    assert convert_parameters(t, (0, 1, 2)).values == (2, 1, 0)
    assert alpha_from_tau((2, 1, 0)).values == (0, 1, 2)


@given(splits(), genera)
def test_chi_matches_hom_complex_oracle(pair, g):
    t1, t2 = pair
    assert chi_holomorphic(t2, t1, g) == chi_oracle(t2, t1, g)


@given(splits(), genera)
def test_chi_additivity(pair, g):
    a, b = pair
    t = a + b
    lhs = chi_holomorphic(t, t, g)
    rhs = chi_holomorphic(a, a, g) + chi_holomorphic(b, b, g) + chi_holomorphic(b, a, g) + chi_holomorphic(a, b, g)
    assert lhs == rhs


@given(splits(), genera)
def test_chi_duality(pair, g):
    t1, t2 = pair
    assert chi_holomorphic(t2, t1, g) == chi_holomorphic(dual_type(t1), dual_type(t2), g)


@given(chain_types(), st.data())
def test_dualize_involution(t, data):
    free = data.draw(st.lists(st.fractions(-10, 10, max_denominator=6), min_size=t.n, max_size=t.n))
    alpha = StabilityParameter.from_free(free)
    t2, a2 = dualize(*dualize(t, alpha))
    assert t2 == t and a2 == alpha


@given(chain_types(), st.data(), st.fractions(-5, 5, max_denominator=4))
def test_slope_shift_covariance(t, data, beta):
    assume(t.total_rank > 0)
    alpha = (0,) + tuple(data.draw(st.lists(st.fractions(-10, 10, max_denominator=6), min_size=t.n, max_size=t.n)))
    assert alpha_slope(t, shift(alpha, beta)) == alpha_slope(t, alpha) + beta


@given(chain_types(min_rank=1), genera)
def test_dimension_is_one_minus_chi(t, g):
    assert moduli_dimension(ProblemInstance(g, t)) == 1 - chi_holomorphic(t, t, g)


@given(chain_types(), st.data())
def test_tau_round_trip(t, data):
    assume(t.total_rank > 0)
    free = data.draw(st.lists(st.fractions(-10, 10, max_denominator=6), min_size=t.n, max_size=t.n))
    alpha = StabilityParameter.from_free(free)
    assert alpha_from_tau(convert_parameters(t, alpha)) == alpha
