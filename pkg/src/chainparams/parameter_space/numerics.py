"""Vanishing predicates, flip-locus bounds and summaries of extremal chambers."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ..chain_core import (
    AlphaLike,
    ChainType,
    ProblemInstance,
    alpha_slope,
    chi_holomorphic,
    moduli_dimension,
    _alpha,
)
from ..errors import PreconditionError, ValidationError
from ..exact_geometry import RationalLike, as_rational


@dataclass(frozen=True)
class VanishingReport:
    h2_vanishes: bool
    h0_vanishes: bool | None = None
    reasons: tuple[str, ...] = ()


def vanishing_flags(
    alpha: AlphaLike,
    g: int,
    D: Sequence[int] = (),
    eps: Mapping[int, RationalLike] | None = None,
    stability_flags: Mapping[int, bool] | None = None,
    maps_maximal_rank: bool = False,
    slopes: tuple[RationalLike, RationalLike] | None = None,
    second_stable: bool = False,
    isomorphic: bool = False,
) -> VanishingReport:
    """Sufficient conditions for the vanishing of the top and bottom hypercohomology.

    The top group vanishes when every gap ``alpha_i - alpha_{i-1}`` outside
    ``D`` exceeds ``2g - 2`` and every gap in ``D`` reaches ``2g - 2`` with the
    caller asserting stability for the parameter perturbed by ``eps[i]`` in
    direction ``i``.  ``maps_maximal_rank`` asserts the alternative hypothesis
    that each relevant map is injective or generically surjective.

    ``slopes = (mu(C'), mu(C''))`` enables the bottom-group test.
    """
    values = _alpha(alpha)
    if values[0] != 0:
        raise ValidationError("alpha must be normalized")
    if g < 2:
        raise ValidationError("genus must be at least 2")
    n = len(values) - 1
    D = tuple(sorted(set(D)))
    if any(not 1 <= i <= n for i in D):
        raise ValidationError(f"D must be a subset of 1..{n}")
    eps = dict(eps or {})
    stability_flags = dict(stability_flags or {})
    missing = [i for i in D if i not in eps]
    if missing:
        raise ValidationError(f"missing perturbation eps for indices {missing}")
    if any(as_rational(eps[i]) < 0 for i in D):
        raise ValidationError("perturbations must be nonnegative")

    reasons = []
    h2 = True
    bound = 2 * g - 2
    for i in range(1, n + 1):
        gap = values[i] - values[i - 1]
        if i in D:
            if gap < bound:
                h2 = False
                reasons.append(f"gap {i} is {gap} < {bound}")
            elif not stability_flags.get(i, False):
                h2 = False
                reasons.append(f"stability for the perturbation in direction {i} not asserted")
        elif gap <= bound:
            h2 = False
            reasons.append(f"gap {i} is {gap} <= {bound}")
    if not h2 and maps_maximal_rank:
        h2 = True
        reasons.append("maps of maximal rank asserted")

    h0 = None
    if slopes is not None:
        mu1, mu2 = (as_rational(x) for x in slopes)
        if mu1 < mu2:
            h0 = True
        elif mu1 == mu2 and second_stable:
            h0 = not isomorphic
    return VanishingReport(h2, h0, tuple(reasons))


# -- flips -------------------------------------------------------------------


@dataclass(frozen=True)
class FlipFiltration:
    """Types ``t_1, ..., t_m`` of the graded pieces of a Jordan-Hoelder filtration."""

    types: tuple[ChainType, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "types", tuple(self.types))
        if len(self.types) < 2:
            raise ValidationError("a flip filtration needs at least two pieces")
        if len({len(t.ranks) for t in self.types}) != 1:
            raise ValidationError("pieces must have the same length")

    @property
    def m(self) -> int:
        return len(self.types)

    @property
    def parent(self) -> ChainType:
        total = self.types[0]
        for t in self.types[1:]:
            total = total + t
        return total


def flip_dim_bound(f: FlipFiltration, g: int, parent: ChainType | None = None) -> int:
    """Upper bound on the dimension of the family of chains with these graded pieces."""
    if g < 2:
        raise ValidationError("genus must be at least 2")
    if parent is not None and f.parent != parent:
        raise ValidationError("graded pieces do not sum to the parent type")
    m = f.m
    total = sum(chi_holomorphic(f.types[j], f.types[i], g) for i in range(m) for j in range(i, m))
    return -total - m * (m - 3) // 2


def flip_codim_bound(f: FlipFiltration, g: int) -> int:
    """Lower bound on the codimension of that family in the moduli space."""
    m = f.m
    total = sum(chi_holomorphic(f.types[j], f.types[i], g) for i in range(m) for j in range(i + 1, m))
    return -total + (m * (m - 3) + 2) // 2


def _codim_term(m: int, g: int) -> int:
    return m * (m - 1) // 2 * (g - 1) + (m * (m - 3) + 2) // 2


def flip_codim_terms(g: int, m_max: int = 10) -> dict[int, int]:
    if g < 2:
        raise ValidationError("genus must be at least 2")
    if m_max < 2:
        raise ValidationError("m ranges over integers >= 2")
    return {m: _codim_term(m, g) for m in range(2, m_max + 1)}


def flip_codim_lower_bound(g: int) -> int:
    """Minimum over ``m >= 2`` of the codimension estimate.

    The term increases with ``m`` (consecutive differences are
    ``m(g-1) + m - 1 > 0``), so scanning a short range is exhaustive.
    """
    return min(flip_codim_terms(g).values())


def flip_codim_minimizer(g: int) -> int:
    terms = flip_codim_terms(g)
    return min(terms, key=lambda m: (terms[m], m))


# -- extremal chambers ------------------------------------------------------


@dataclass(frozen=True)
class ExtremalSummary:
    pattern: str
    dimension: int
    general_dimension: int
    fiber_dimension: int | None = None
    base: str = ""
    b2: int | None = None
    checks: dict = field(default_factory=dict)


def _require(condition: bool, message: str, label: str) -> None:
    if not condition:
        raise PreconditionError(message, label)


def extremal_summary(inst: ProblemInstance) -> ExtremalSummary:
    t, g = inst.chain_type, inst.genus
    if len(t.ranks) != 3:
        raise PreconditionError("extremal summaries cover 3-chains only", "extremal-pattern")
    general = moduli_dimension(inst)
    (r0, r1, r2), (d0, d1, d2) = t.ranks, t.degrees

    if r1 == 1 and r2 == 1 and r0 >= 2:
        m = r0
        _require(d1 < Fraction(d0, m), f"needs d1 < d0/m, got d1={d1}, d0/m={Fraction(d0, m)}", "nonempty-interior")
        dim = d0 - (m - 1) * d1 - d2 + (m - 1) * m * (g - 1) + g
        fiber = d0 - m * d1 + (m - 1) * (g - 1) - 1
        base = f"J^{d1} x X^({d1 - d2}) x U^s({m - 1},{d0 - d1})"
        summary = ExtremalSummary("(m,1,1)", dim, general, fiber, base, checks={"d1 < d0/m": True})
    elif r1 == 1 and r0 >= 2 and r2 > 1:
        m, n = r0, r2
        b2 = n * d1 - d2 + (n - 1) * (2 * g - 2)
        _require(b2 > 0, f"needs b2 > 0, got {b2}", "b2-positive")
        _require(d0 > m * d1, f"needs d0 > m d1, got d0={d0}, m d1={m * d1}", "d0-exceeds-m-d1")
        dim = (g - 1) * (m * m + 1 + n * n - m - n) + (d0 - m * d1) + (n * d1 - d2) + 1
        summary = ExtremalSummary("(m,1,n)", dim, general, b2=b2, checks={"b2 > 0": True, "d0 > m d1": True})
    elif r0 == 1 and r2 == 1 and r1 >= 2:
        m = r1
        _require(d0 > d2, f"needs d0 > d2, got d0={d0}, d2={d2}", "d0-exceeds-d2")
        dim = (m - 1) ** 2 * (g - 1) + g + m * (d0 - d2)
        fiber = (m - 1) * (d0 - d2) - 1
        base = f"J^{d2} x X^({d0 - d2}) x U^s({m - 1},{d1 - d2})"
        summary = ExtremalSummary("(1,m,1)", dim, general, fiber, base, checks={"d0 > d2": True})
    else:
        raise PreconditionError(f"rank pattern {t.ranks} has no extremal summary", "extremal-pattern")
    if summary.dimension != general:
        raise AssertionError(f"pattern dimension {summary.dimension} != general {general}")
    return summary


# -- equal-slope screening --------------------------------------------------


def standard_bounds_hold(t: ChainType, alpha: AlphaLike) -> bool:
    """Slope inequalities every semistable chain of type ``t`` satisfies at ``alpha``.

    Slots of rank zero split the chain into direct summands; within each
    summand every lower truncation is a subchain, and each summand is itself
    a subchain.  Only these type-level consequences are checked.
    """
    values = _alpha(alpha)
    mu = alpha_slope(t, values)
    blocks, current = [], []
    for j, r in enumerate(t.ranks):
        if r:
            current.append(j)
        elif current:
            blocks.append(current)
            current = []
    if current:
        blocks.append(current)

    def slope(slots) -> Fraction:
        rank = sum(t.ranks[j] for j in slots)
        return sum((t.degrees[j] + values[j] * t.ranks[j] for j in slots), Fraction(0)) / rank

    for block in blocks:
        for k in range(1, len(block) + 1):
            prefix = block[:k]
            if sum(t.ranks[j] for j in prefix) < t.total_rank and slope(prefix) > mu:
                return False
    return True
