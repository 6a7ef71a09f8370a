"""Where the comparison map between hom complexes stops being an isomorphism.

For a rank split ``r = r' + r''`` admitting linear chains with no Hom and no
Ext from ``r''`` to ``r'``, every compatible degree split gives a hyperplane
``mu_alpha(t') = mu_alpha(t'')``.  The union of these hyperplanes is the
boundary of the birationality region.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from ..chain_core import ChainType, TypeSplit, alpha_slope
from ..errors import ValidationError
from ..exact_geometry import AffineFunctional, Box, RationalLike, as_point
from ..linear_chains import in_v_set


@dataclass(frozen=True)
class BoundaryHyperplane:
    functional: AffineFunctional
    split: TypeSplit


@lru_cache(maxsize=None)
def v_set_rank_splits(ranks: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    """All ``(r', r'')`` with ``r' + r'' = ranks``, both nonzero, in the V-set."""
    out = []
    for left in product(*(range(x + 1) for x in ranks)):
        right = tuple(x - y for x, y in zip(ranks, left))
        if any(left) and any(right) and in_v_set(left, right).member:
            out.append((left, right))
    return tuple(out)


def _split_for(t: ChainType, left_ranks: Sequence[int], right_ranks: Sequence[int], left_total: int) -> TypeSplit:
    """A degree split with the given left total degree, respecting zero-rank slots."""
    left_deg = [0] * len(t.ranks)
    free = []
    for j, (a, b, d) in enumerate(zip(left_ranks, right_ranks, t.degrees)):
        if a and not b:
            left_deg[j] = d
        elif a and b:
            free.append(j)
    forced = sum(left_deg)
    if free:
        left_deg[free[0]] = left_total - forced
    elif left_total != forced:
        raise ValidationError("left total degree is forced for this rank split")
    left = ChainType(tuple(left_ranks), tuple(left_deg))
    return TypeSplit(left, t - left)


def _degree_options(t: ChainType, left_ranks, right_ranks) -> tuple[int, bool]:
    """Forced part of the left degree and whether a free slot exists."""
    forced = sum(d for a, b, d in zip(left_ranks, right_ranks, t.degrees) if a and not b)
    free = any(a and b for a, b in zip(left_ranks, right_ranks))
    return forced, free


def _split_functional(t: ChainType, left_ranks, left_total: int) -> AffineFunctional:
    # size'' (D' + sum alpha r') - size' (D'' + sum alpha r'') = 0
    s1 = sum(left_ranks)
    r, d = t.total_rank, t.total_degree
    coefficients = tuple(Fraction(r * left_ranks[j] - s1 * t.ranks[j]) for j in range(1, t.n + 1))
    return AffineFunctional(coefficients, Fraction(s1 * d - r * left_total))


def birationality_boundary(t: ChainType, box: Box) -> list[BoundaryHyperplane]:
    """Boundary hyperplanes meeting the closed box, each with a witnessing type split."""
    if t.n not in (1, 2):
        raise ValidationError("boundary enumeration is implemented for one or two free parameters")
    if box.dimension != t.n:
        raise ValidationError("box dimension must equal the number of free parameters")
    if t.total_rank == 0:
        raise ValidationError("zero total rank")
    r, d = t.total_rank, t.total_degree
    found: dict[AffineFunctional, BoundaryHyperplane] = {}
    for left_ranks, right_ranks in v_set_rank_splits(t.ranks):
        s1 = sum(left_ranks)
        forced, free = _degree_options(t, left_ranks, right_ranks)
        linear = AffineFunctional(_split_functional(t, left_ranks, 0).coefficients, Fraction(0))
        if linear.is_constant:
            continue  # proportional splits never lie in the V-set; guard anyway
        lo, hi = box.value_range(linear)
        # linear(alpha) = s1 d - r D'
        totals = range(math.ceil((s1 * d - hi) / r), math.floor((s1 * d - lo) / r) + 1)
        for left_total in totals if free else [forced]:
            f = _split_functional(t, left_ranks, left_total)
            if not box.meets(f):
                continue
            canonical = f.canonical()
            if canonical not in found:
                found[canonical] = BoundaryHyperplane(
                    canonical, _split_for(t, left_ranks, right_ranks, left_total)
                )
    return sorted(found.values(), key=lambda b: (b.functional.coefficients, b.functional.constant))


def on_boundary(t: ChainType, alpha_free: Sequence[RationalLike]) -> TypeSplit | None:
    """A type split whose slope equality holds at ``alpha``, or None."""
    point = as_point(alpha_free)
    if len(point) != t.n:
        raise ValidationError("expected the free parameters (alpha_1, ..., alpha_n)")
    r, d = t.total_rank, t.total_degree
    for left_ranks, right_ranks in v_set_rank_splits(t.ranks):
        s1 = sum(left_ranks)
        forced, free = _degree_options(t, left_ranks, right_ranks)
        linear = AffineFunctional(_split_functional(t, left_ranks, 0).coefficients, Fraction(0))
        left_total = (s1 * d - linear.value(point)) / r
        if left_total.denominator != 1:
            continue
        left_total = int(left_total)
        if free or left_total == forced:
            return _split_for(t, left_ranks, right_ranks, left_total)
    return None


# -- triples ----------------------------------------------------------------


def triple_bounds(t: ChainType) -> tuple[Fraction, Fraction | None]:
    """``(alpha_m, alpha_M)`` for a two-slot type; ``alpha_M`` is None (infinite) when ``r0 = r1``."""
    if len(t.ranks) != 2 or min(t.ranks) <= 0:
        raise ValidationError("triple bounds need a two-slot type with positive ranks")
    (r0, r1), (d0, d1) = t.ranks, t.degrees
    low = Fraction(d0, r0) - Fraction(d1, r1)
    if r0 == r1:
        return low, None
    return low, (1 + Fraction(r0 + r1, abs(r0 - r1))) * low


def boundary_component(t: ChainType, box: Box, point: RationalLike) -> tuple[Fraction | None, Fraction | None]:
    """Nearest boundary values below and above ``point`` on the line, within the box."""
    if t.n != 1:
        raise ValidationError("components are computed on the one-parameter line")
    x = Fraction(point)
    values = sorted(b.functional.constant / b.functional.coefficients[0] for b in birationality_boundary(t, box))
    below = [v for v in values if v < x]
    above = [v for v in values if v > x]
    return (below[-1] if below else None), (above[0] if above else None)


def split_slopes(split: TypeSplit, alpha: Sequence[RationalLike]) -> tuple[Fraction, Fraction]:
    return alpha_slope(split.left, alpha), alpha_slope(split.right, alpha)


def iter_degree_splits(t: ChainType, left_ranks: Sequence[int], degree_range: range) -> Iterator[TypeSplit]:
    """Type splits with the given left ranks, free slots ranging over ``degree_range``."""
    right_ranks = tuple(a - b for a, b in zip(t.ranks, left_ranks))
    free = [j for j, (a, b) in enumerate(zip(left_ranks, right_ranks)) if a and b]
    base = [d if (a and not b) else 0 for a, b, d in zip(left_ranks, right_ranks, t.degrees)]
    for choice in product(degree_range, repeat=len(free)):
        degrees = list(base)
        for j, value in zip(free, choice):
            degrees[j] = value
        left = ChainType(tuple(left_ranks), tuple(degrees))
        yield TypeSplit(left, t - left)
