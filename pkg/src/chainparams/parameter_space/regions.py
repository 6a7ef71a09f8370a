"""Inequality systems bounding the parameters of semistable 3-chains.

Each halfspace carries a label naming the test subchain (or the hypothesis)
that produces it.  Coordinates are ``(alpha_1, alpha_2)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..chain_core import ChainType, dual_type
from ..errors import PreconditionError, ValidationError
from ..exact_geometry import AffineFunctional, Box, ConvexCell, Halfspace, polygon_from_halfspaces
from .walls import standard_halfspace

F = Fraction

# Labels name the subchain whose slope inequality gives the bound.
SUB_E0 = "sub(E0,0,0)"
SUB_E0E1 = "sub(E0,E1,0)"
IM_PHI1 = "sub(im phi1,E1,E2)"
KER_PHI2 = "sub(0,0,ker phi2)"
IM_PHI2 = "sub(E0,im phi2,E2)"
KER_PHI1 = "sub(0,ker phi1,0)"
KER_COMPOSITE = "sub(0,phi2 ker(phi1 phi2),ker(phi1 phi2))"
IM_PHI2_PLUS_KER_COMPOSITE = "sum[sub(E0,im phi2,E2), sub(0,phi2 ker,ker)]"
COMPOSITE_ZERO_KERNEL = "sub(0,ker phi1,E2) when phi1 phi2 = 0"
COMPOSITE_ZERO_IMAGE = "sub(0,phi2(E2),E2) when phi1 phi2 = 0"


@dataclass(frozen=True)
class RegionReport:
    halfspaces: tuple[Halfspace, ...]
    constants: dict = field(default_factory=dict)
    annotations: tuple[Halfspace, ...] = ()
    notes: tuple[str, ...] = ()

    def labels(self) -> list[str]:
        return [h.label for h in self.halfspaces]

    def by_label(self, label: str) -> Halfspace:
        for h in self.halfspaces + self.annotations:
            if h.label == label:
                return h
        raise KeyError(label)

    def contains(self, alpha: Sequence) -> bool:
        return all(h.contains(alpha) for h in self.halfspaces)

    def cell(self, box: Box, labels: Sequence[str] | None = None) -> ConvexCell | None:
        chosen = self.halfspaces if labels is None else tuple(self.by_label(x) for x in labels)
        return polygon_from_halfspaces(chosen, box)


def _three_slots(t: ChainType) -> tuple[int, int, int, int, int, int]:
    if len(t.ranks) != 3:
        raise ValidationError("this inequality system is for 3-chains")
    if min(t.ranks) <= 0:
        raise PreconditionError("every rank must be positive", "positive-ranks")
    return t.ranks + t.degrees


def _ineq(a1, a2, sense, rhs, label) -> Halfspace:
    return Halfspace.from_inequality((F(a1), F(a2)), sense, F(rhs), label)


def standard_region(t: ChainType) -> RegionReport:
    """Halfspaces from all standard truncations (any chain length)."""
    return RegionReport(tuple(standard_halfspace(t, i) for i in range(t.n)))


@dataclass(frozen=True)
class MapFlags:
    """Caller-asserted properties of the maps ``phi1: E1 -> E0`` and ``phi2: E2 -> E1``."""

    phi1_injective: bool = False
    phi1_gen_surjective: bool = False
    phi2_injective: bool = False
    phi2_gen_surjective: bool = False
    composite_gen_surjective: bool = False

    def check(self, r0: int, r1: int, r2: int) -> None:
        problems = []
        if self.phi1_injective and r1 > r0:
            problems.append("phi1 cannot be injective when r1 > r0")
        if self.phi1_gen_surjective and r1 < r0:
            problems.append("phi1 cannot be generically surjective when r1 < r0")
        if self.phi2_injective and r2 > r1:
            problems.append("phi2 cannot be injective when r2 > r1")
        if self.phi2_gen_surjective and r2 < r1:
            problems.append("phi2 cannot be generically surjective when r2 < r1")
        if self.composite_gen_surjective and (r2 < r0 or r1 < r0):
            problems.append("phi1 phi2 cannot be generically surjective when r2 < r0 or r1 < r0")
        if problems:
            raise ValidationError("; ".join(problems))


def lower_bound_e0(t: ChainType) -> Halfspace:
    r0, r1, r2, d0, d1, d2 = _three_slots(t)
    return _ineq(r1, r2, ">=", F(r1 + r2, r0) * d0 - d1 - d2, SUB_E0)


def lower_bound_e0e1(t: ChainType) -> Halfspace:
    r0, r1, r2, d0, d1, d2 = _three_slots(t)
    return _ineq(-r1, r0 + r1, ">=", d0 + d1 - F(r0 + r1, r2) * d2, SUB_E0E1)


def _im_phi2_rhs(r0, r1, r2, d0, d1, d2) -> Fraction:
    return -d0 + F(r0 + 2 * r2, r1 - r2) * d1 - F(r0 + 2 * r1, r1 - r2) * d2


def _ker_composite_rhs(r0, r1, r2, d0, d1, d2) -> Fraction:
    return F(-r0 + r1 + 3 * r2, r2 - r0) * d0 + 2 * d1 - F(3 * r0 + r1 - r2, r2 - r0) * d2


def rank_maximal_region(t: ChainType, flags: MapFlags = MapFlags()) -> RegionReport:
    """Bounds satisfied by semistable 3-chains whose maps have the flagged ranks."""
    r0, r1, r2, d0, d1, d2 = parts = _three_slots(t)
    flags.check(r0, r1, r2)
    hs = [lower_bound_e0(t), lower_bound_e0e1(t)]
    if r0 > r1 and flags.phi1_injective:
        rhs = F(2 * r1 + r2, r0 - r1) * d0 - F(2 * r0 + r2, r0 - r1) * d1 - d2
        hs.append(_ineq(r1, r2, "<=", rhs, IM_PHI1))
    if r1 < r2 and flags.phi2_gen_surjective:
        rhs = d0 + F(r0 + 2 * r2, r2 - r1) * d1 - F(r0 + 2 * r1, r2 - r1) * d2
        hs.append(_ineq(-r1, r0 + r1, "<=", rhs, KER_PHI2))
    if r1 > r2 and flags.phi2_injective:
        hs.append(_ineq(-(r0 + r2), r2, "<=", _im_phi2_rhs(*parts), IM_PHI2))
    if r0 < r1 and flags.phi1_gen_surjective:
        rhs = F(2 * r1 + r2, r1 - r0) * d0 - F(2 * r0 + r2, r1 - r0) * d1 + d2
        hs.append(_ineq(r0 + r2, -r2, "<=", rhs, KER_PHI1))
    composite = r0 < r1 > r2 and r0 < r2 and flags.composite_gen_surjective
    if composite:
        hs.append(_ineq(r0 - r1 + r2, r0 + r1 - r2, "<=", _ker_composite_rhs(*parts), KER_COMPOSITE))
    if composite and r1 > r2 and flags.phi2_injective:
        k = _im_phi2_rhs(*parts) + _ker_composite_rhs(*parts)
        hs.append(_ineq(-r1, r0 + r1, "<=", k, IM_PHI2_PLUS_KER_COMPOSITE))
    return RegionReport(tuple(hs))


PARALLELOGRAM_LABELS = (SUB_E0E1, IM_PHI2_PLUS_KER_COMPOSITE, IM_PHI2, KER_PHI1)


def composite_surjective_region(t: ChainType) -> RegionReport:
    """Rank-maximal region when ``r0 < r1 > r2``, ``r0 < r2`` and ``phi1 phi2`` is generically onto.

    Surjectivity of the composite forces ``phi1`` generically onto, and rank
    maximality leaves ``phi2`` injective since ``r2 < r1``.  Four of the
    resulting bounds form a parallelogram, selectable with
    :data:`PARALLELOGRAM_LABELS`.
    """
    r0, r1, r2 = t.ranks
    if not (r0 < r1 > r2 and r0 < r2):
        raise PreconditionError("needs r0 < r1 > r2 and r0 < r2", "composite-surjective-pattern")
    flags = MapFlags(phi1_gen_surjective=True, phi2_injective=True, composite_gen_surjective=True)
    return rank_maximal_region(t, flags)


def alpha2_lower_bound(t: ChainType) -> Fraction:
    """Lower bound on ``alpha_2`` obtained by adding the two standard bounds."""
    r0, r1, r2, d0, d1, d2 = _three_slots(t)
    return F(d0, r0) - F(d2, r2)


def kernel_phi2_bound(t: ChainType, kernel_rank: int) -> Halfspace:
    """Bound for ``r1 > r2`` when ``phi2`` has a kernel of the given rank."""
    r0, r1, r2, d0, d1, d2 = _three_slots(t)
    if not r1 > r2:
        raise PreconditionError("needs r1 > r2", "kernel-bound-pattern")
    if not 1 <= kernel_rank <= r2:
        raise ValidationError("kernel rank must lie in [1, r2]")
    r = r0 + r1 + r2
    r_k6 = (r2 - r1) * d0 + (r0 + 2 * r2) * d1 - (r0 + 2 * r1) * d2
    a2 = kernel_rank * r + r2 * r - r2 * (r0 + 2 * r2)
    a1 = kernel_rank * r - r2 * r + (r0 + 2 * r2) * r1
    return _ineq(-a1, a2, "<=", r_k6, f"kernel phi2 rank {kernel_rank}")


def cokernel_phi1_bound(t: ChainType, kernel_rank: int) -> Halfspace:
    """Bound for ``r0 < r1`` when the dual of ``phi1`` has a kernel of the given rank.

    This is the previous bound applied to the dual chain and pulled back along
    ``(alpha_1, alpha_2) -> (alpha_2 - alpha_1, alpha_2)``.
    """
    r0, r1, r2, d0, d1, d2 = _three_slots(t)
    if not r0 < r1:
        raise PreconditionError("needs r0 < r1", "kernel-bound-pattern")
    dual = kernel_phi2_bound(dual_type(t), kernel_rank)
    c1, c2 = dual.functional.coefficients
    pulled = AffineFunctional((-c1, c1 + c2), dual.functional.constant)
    return Halfspace(pulled, dual.sense, f"kernel dual phi1 rank {kernel_rank}")


@dataclass(frozen=True)
class RegionFamily:
    """One branch of the case analysis for unbounded parameter regions.

    ``symbolic`` lists ``(coefficients, name)`` for bounds whose right side is a
    type constant that is not computed here.
    """

    name: str
    condition: str
    halfspaces: tuple[Halfspace, ...]
    symbolic: tuple[tuple[tuple[int, int], str], ...] = ()
    bounded: bool = False


def unbounded_region_families(t: ChainType) -> list[RegionFamily]:
    r0, r1, r2 = t.ranks
    base = (lower_bound_e0(t), lower_bound_e0e1(t))
    bounded = RegionFamily("R0", "remaining chains", (), bounded=True)
    if r0 != r1 == r2:
        return [
            bounded,
            RegionFamily("R1", "phi2 injective", base, (((r1, r2), "upper bound K"),)),
        ]
    if r0 == r1 == r2:
        return [
            bounded,
            RegionFamily("R1", "phi2 injective, phi1 not", base, (((r1, r2), "upper bound K'"),)),
            RegionFamily("R2", "phi1 injective, phi2 not", base, (((-r1, r0 + r1), "upper bound K''"),)),
            RegionFamily("R3", "phi1 and phi2 injective", base),
        ]
    if r0 < r1 > r2 and r0 == r2:
        flags = MapFlags(phi1_gen_surjective=True, phi2_injective=True)
        region = rank_maximal_region(t, flags)
        chosen = tuple(region.by_label(x) for x in (SUB_E0, IM_PHI2, KER_PHI1))
        return [bounded, RegionFamily("R1", "rank maximal", chosen)]
    raise PreconditionError(f"no unbounded-family description for ranks {t.ranks}", "unbounded-families")


# -- the two families studied in detail --------------------------------------


def region_m1n(t: ChainType) -> RegionReport:
    """Region for ranks ``(m, 1, n)`` with ``m >= 2``."""
    (m, one, n), (d0, d1, d2) = t.ranks, t.degrees
    if one != 1 or m < 2 or n < 1:
        raise ValidationError("expected ranks (m, 1, n) with m >= 2")
    a_i = (n + 2) * d0 - (2 * m + n) * d1 + (1 - m) * d2
    a_ii = (n + 1) * d0 - m * d1 - m * d2
    a_iii = n * d0 + n * d1 - (m + 1) * d2
    hs = [
        _ineq(m - 1, (m - 1) * n, "<=", a_i, IM_PHI1),
        _ineq(m, m * n, ">=", a_ii, SUB_E0),
        _ineq(-n, (m + 1) * n, ">=", a_iii, SUB_E0E1),
    ]
    constants = {"A_I": a_i, "A_II": a_ii, "A_III": a_iii}
    # Parallel pairs bound strips; the region has interior iff both strips do.
    strip_i = m * a_i - (m - 1) * a_ii
    constants["strip_I_II"] = strip_i
    nonempty = strip_i > 0
    if n > 1:
        a_iv = (n - 1) * d0 + (m + 2 * n) * d1 - (m + 2) * d2
        hs.append(_ineq(-(n - 1), (m + 1) * (n - 1), "<=", a_iv, KER_PHI2))
        constants["A_IV"] = a_iv
        strip_ii = n * a_iv - (n - 1) * a_iii
        constants["strip_III_IV"] = strip_ii
        constants["printed_condition"] = (m + 1) * (n * d1 - d2) - m * d2
        nonempty = nonempty and strip_ii > 0
    constants["nonempty_interior"] = nonempty
    return RegionReport(tuple(hs), constants)


def region_1m1(t: ChainType) -> RegionReport:
    """Region for ranks ``(1, m, 1)`` with ``m >= 2``."""
    (one, m, one_b), (d0, d1, d2) = t.ranks, t.degrees
    if one != 1 or one_b != 1 or m < 2:
        raise ValidationError("expected ranks (1, m, 1) with m >= 2")
    a_i = (m + 1) * d0 - d1 - d2
    a_ii = d0 + d1 - (m + 1) * d2
    a_iii = -d0 + F(3, m - 1) * d1 - F(2 * m + 1, m - 1) * d2
    a_iv = -F(2 * m + 1, m - 1) * d0 + F(3, m - 1) * d1 - d2
    hs = (
        _ineq(m, 1, ">=", a_i, SUB_E0),
        _ineq(-m, m + 1, ">=", a_ii, SUB_E0E1),
        _ineq(-2, 1, "<=", a_iii, IM_PHI2),
        _ineq(-2, 1, ">=", a_iv, KER_PHI1),
    )
    annotations = (
        _ineq(m - 2, 2, "<=", 2 * (m + 1) * d0 - 2 * d1 - 2 * d2, COMPOSITE_ZERO_KERNEL),
        _ineq(-m + 2, m, "<=", 2 * d0 + 2 * d1 - 2 * (m + 1) * d2, COMPOSITE_ZERO_IMAGE),
    )
    constants = {
        "A_I": a_i,
        "A_II": a_ii,
        "A_III": a_iii,
        "A_IV": a_iv,
        "nonempty_interior": a_iii > a_iv,
    }
    return RegionReport(hs, constants, annotations)


def r2g2_region(n: int, g: int) -> RegionReport:
    """Parameters whose consecutive gaps are all at least ``2g - 2``."""
    if g < 2:
        raise ValidationError("genus must be at least 2")
    if n < 1:
        raise ValidationError("need at least one free parameter")
    hs = []
    for i in range(1, n + 1):
        coefficients = [F(0)] * n
        coefficients[i - 1] = F(1)
        if i > 1:
            coefficients[i - 2] = F(-1)
        hs.append(Halfspace.from_inequality(coefficients, ">=", 2 * g - 2, f"gap-{i}"))
    return RegionReport(tuple(hs))
