"""Standard hyperplanes and walls of the stability-parameter space.

Coordinates are the free parameters ``(alpha_1, ..., alpha_n)``; ``alpha_0``
is fixed at zero throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Iterator, Sequence

from ..chain_core import ChainType
from ..errors import PreconditionError, ValidationError
from ..exact_geometry import AffineFunctional, Box, Halfspace

PROPER, IMPROPER, EMPTY = "proper", "improper", "empty"


def standard_hyperplane(t: ChainType, i: int) -> AffineFunctional:
    """Slope equality between the chain and its truncation ``(E_0, ..., E_i, 0, ..., 0)``.

    The functional is oriented so that semistability requires it to be ``<= 0``.
    """
    n = t.n
    if not 0 <= i <= n - 1:
        raise ValidationError(f"standard index must lie in [0, {n - 1}], got {i}")
    low_rank, high_rank = sum(t.ranks[: i + 1]), sum(t.ranks[i + 1 :])
    if low_rank == 0 or high_rank == 0:
        raise PreconditionError("truncation has zero rank on one side", "positive-partial-ranks")
    low_deg, high_deg = sum(t.degrees[: i + 1]), sum(t.degrees[i + 1 :])
    coefficients = tuple(
        Fraction(t.ranks[j] * high_rank if j <= i else -t.ranks[j] * low_rank) for j in range(1, n + 1)
    )
    return AffineFunctional(coefficients, Fraction(low_rank * high_deg - high_rank * low_deg))


def standard_halfspace(t: ChainType, i: int) -> Halfspace:
    return Halfspace(standard_hyperplane(t, i), "<=", f"standard-truncation-{i}")


@dataclass(frozen=True)
class SubchainSignature:
    """Ranks ``s_j`` and total degree ``e`` of a prospective subchain."""

    s: tuple[int, ...]
    e: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "s", tuple(self.s))
        if any(isinstance(x, bool) or not isinstance(x, int) for x in self.s + (self.e,)):
            raise ValidationError("signature entries must be integers")

    def check_against(self, t: ChainType) -> None:
        if len(self.s) != len(t.ranks):
            raise ValidationError("signature length does not match the type")
        if any(not 0 <= s <= r for s, r in zip(self.s, t.ranks)):
            raise ValidationError("need 0 <= s_j <= r_j in every slot")
        if not 0 < sum(self.s) < t.total_rank:
            raise ValidationError("signature must have total rank strictly between 0 and r")

    def complement(self, t: ChainType) -> "SubchainSignature":
        return SubchainSignature(tuple(r - s for r, s in zip(t.ranks, self.s)), t.total_degree - self.e)

    def __str__(self) -> str:
        return f"({','.join(map(str, self.s))};{self.e})"


@dataclass(frozen=True)
class Wall:
    functional: AffineFunctional
    signature: SubchainSignature
    kind: str

    @property
    def is_proper(self) -> bool:
        return self.kind == PROPER


def _wall_terms(t: ChainType, s: Sequence[int]) -> tuple[tuple[int, ...], int]:
    size, r = sum(s), t.total_rank
    return tuple(t.ranks[j] * size - s[j] * r for j in range(1, t.n + 1)), size


def wall_for_signature(t: ChainType, sigma: SubchainSignature) -> Wall:
    """Locus where a subchain with signature ``sigma`` has the same slope as the chain."""
    sigma.check_against(t)
    coefficients, size = _wall_terms(t, sigma.s)
    constant = t.total_rank * sigma.e - size * t.total_degree
    raw = AffineFunctional(tuple(Fraction(c) for c in coefficients), Fraction(constant))
    if raw.is_constant:
        return Wall(raw, sigma, IMPROPER if constant == 0 else EMPTY)
    return Wall(raw.canonical(), sigma, PROPER)


def rank_signatures(t: ChainType) -> Iterator[tuple[int, ...]]:
    """All ``s`` with ``0 <= s_j <= r_j`` and ``0 < sum(s) < r``, lexicographically."""
    for s in product(*(range(r + 1) for r in t.ranks)):
        if 0 < sum(s) < t.total_rank:
            yield s


def enumerate_walls(t: ChainType, box: Box) -> list[Wall]:
    """Every proper wall meeting the closed box, one per distinct hyperplane.

    For each rank signature the admissible degrees ``e`` are exactly those for
    which the wall's constant lies between the extreme values of its linear
    part over the box corners.
    """
    if t.n not in (1, 2):
        raise ValidationError("wall enumeration is implemented for one or two free parameters")
    if box.dimension != t.n:
        raise ValidationError("box dimension must equal the number of free parameters")
    r, d = t.total_rank, t.total_degree
    found: dict[AffineFunctional, Wall] = {}
    for s in rank_signatures(t):
        coefficients, size = _wall_terms(t, s)
        if not any(coefficients):
            continue
        linear = AffineFunctional(tuple(Fraction(c) for c in coefficients), Fraction(0))
        lo, hi = box.value_range(linear)
        # linear(alpha) = r e - size d
        e_min = math.ceil((lo + size * d) / r)
        e_max = math.floor((hi + size * d) / r)
        for e in range(e_min, e_max + 1):
            wall = wall_for_signature(t, SubchainSignature(s, e))
            found.setdefault(wall.functional, wall)
    return sorted(found.values(), key=lambda w: (w.functional.coefficients, w.functional.constant))


def improper_walls(t: ChainType) -> list[Wall]:
    """Signatures whose wall is the whole parameter space."""
    r, d = t.total_rank, t.total_degree
    out = []
    for s in rank_signatures(t):
        coefficients, size = _wall_terms(t, s)
        if any(coefficients) or (size * d) % r:
            continue
        out.append(wall_for_signature(t, SubchainSignature(s, size * d // r)))
    return out


def has_improper_walls(t: ChainType) -> bool:
    return bool(improper_walls(t))


def improper_gcd(t: ChainType) -> int:
    """``gcd(r_1, ..., r_n, d)``; improper walls are impossible when it is 1."""
    return reduce(math.gcd, t.ranks[1:] + (t.total_degree,), 0)


def proportional_gcd(t: ChainType) -> int:
    """``gcd(r_0, ..., r_n, d)``; improper walls exist exactly when it exceeds 1."""
    return reduce(math.gcd, t.ranks + (t.total_degree,), 0)
