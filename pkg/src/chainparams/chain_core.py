"""Chain types, slopes, duality and the numerical invariants built on them.

A chain type records the ranks ``r_j`` and degrees ``d_j`` of bundles
``E_n -> ... -> E_0`` on a curve.  Stability parameters are rational vectors
``(alpha_0, ..., alpha_n)`` normalized to ``alpha_0 = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import PreconditionError, ValidationError
from .exact_geometry import RationalLike, as_point, as_rational


def _int_tuple(values: Iterable[int], what: str) -> tuple[int, ...]:
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, int):
            raise ValidationError(f"{what} must be integers, got {v!r}")
        out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class ChainType:
    ranks: tuple[int, ...]
    degrees: tuple[int, ...]

    def __post_init__(self) -> None:
        ranks = _int_tuple(self.ranks, "ranks")
        degrees = _int_tuple(self.degrees, "degrees")
        object.__setattr__(self, "ranks", ranks)
        object.__setattr__(self, "degrees", degrees)
        if len(ranks) != len(degrees):
            raise ValidationError("ranks and degrees must have the same length")
        if len(ranks) < 2:
            raise ValidationError("a chain needs at least two slots")
        if any(r < 0 for r in ranks):
            raise ValidationError("ranks must be nonnegative")
        for j, (r, d) in enumerate(zip(ranks, degrees)):
            if r == 0 and d != 0:
                raise ValidationError(f"slot {j} has rank 0 but degree {d}")

    @classmethod
    def parse(cls, text: str) -> "ChainType":
        """Parse ``"r0,r1,...:d0,d1,..."`` (``;`` also accepted as separator)."""
        cleaned = text.strip().strip("()").replace(";", ":")
        try:
            left, right = cleaned.split(":")
            ranks = tuple(int(x) for x in left.split(","))
            degrees = tuple(int(x) for x in right.split(","))
        except ValueError as exc:
            raise ValidationError(f"cannot parse chain type {text!r}") from exc
        return cls(ranks, degrees)

    @property
    def n(self) -> int:
        """Index of the last slot; the chain has ``n + 1`` bundles."""
        return len(self.ranks) - 1

    @property
    def total_rank(self) -> int:
        return sum(self.ranks)

    @property
    def total_degree(self) -> int:
        return sum(self.degrees)

    def __add__(self, other: "ChainType") -> "ChainType":
        if len(other.ranks) != len(self.ranks):
            raise ValidationError("chain types of different lengths")
        return ChainType(
            tuple(a + b for a, b in zip(self.ranks, other.ranks)),
            tuple(a + b for a, b in zip(self.degrees, other.degrees)),
        )

    def __sub__(self, other: "ChainType") -> "ChainType":
        if len(other.ranks) != len(self.ranks):
            raise ValidationError("chain types of different lengths")
        return ChainType(
            tuple(a - b for a, b in zip(self.ranks, other.ranks)),
            tuple(a - b for a, b in zip(self.degrees, other.degrees)),
        )

    def __str__(self) -> str:
        return f"({','.join(map(str, self.ranks))};{','.join(map(str, self.degrees))})"


@dataclass(frozen=True)
class ProblemInstance:
    genus: int
    chain_type: ChainType

    def __post_init__(self) -> None:
        if isinstance(self.genus, bool) or not isinstance(self.genus, int):
            raise ValidationError("genus must be an integer")
        if self.genus < 2:
            raise ValidationError("genus must be at least 2")


@dataclass(frozen=True)
class StabilityParameter:
    """Normalized parameter ``(0, alpha_1, ..., alpha_n)``."""

    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        values = as_point(self.values)
        object.__setattr__(self, "values", values)
        if len(values) < 2:
            raise ValidationError("a stability parameter has at least two entries")
        if values[0] != 0:
            raise ValidationError("stability parameters are normalized to alpha_0 = 0")

    @classmethod
    def from_free(cls, free: Sequence[RationalLike]) -> "StabilityParameter":
        """Build from ``(alpha_1, ..., alpha_n)``."""
        return cls((Fraction(0),) + as_point(free))

    @property
    def free(self) -> tuple[Fraction, ...]:
        return self.values[1:]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, index):
        return self.values[index]


@dataclass(frozen=True)
class TauVector:
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", as_point(self.values))


@dataclass(frozen=True)
class TypeSplit:
    """A decomposition ``t = left + right`` into two nonzero types."""

    left: ChainType
    right: ChainType

    def __post_init__(self) -> None:
        if len(self.left.ranks) != len(self.right.ranks):
            raise ValidationError("split sides have different lengths")
        if self.left.total_rank == 0 or self.right.total_rank == 0:
            raise ValidationError("both sides of a split need positive total rank")

    @property
    def parent(self) -> ChainType:
        return self.left + self.right


AlphaLike = Union[StabilityParameter, Sequence[RationalLike]]


def _alpha(alpha: AlphaLike) -> tuple[Fraction, ...]:
    if isinstance(alpha, StabilityParameter):
        return alpha.values
    return as_point(alpha)


def _check_lengths(t: ChainType, alpha: Sequence) -> None:
    if len(alpha) != len(t.ranks):
        raise ValidationError(f"parameter has {len(alpha)} entries, type has {len(t.ranks)} slots")


def alpha_degree(t: ChainType, alpha: AlphaLike) -> Fraction:
    values = _alpha(alpha)
    _check_lengths(t, values)
    return sum((d + a * r for r, d, a in zip(t.ranks, t.degrees, values)), Fraction(0))


def alpha_slope(t: ChainType, alpha: AlphaLike) -> Fraction:
    if t.total_rank == 0:
        raise ValidationError("slope of a type with zero total rank is undefined")
    return alpha_degree(t, alpha) / t.total_rank


def dual_type(t: ChainType) -> ChainType:
    return ChainType(tuple(reversed(t.ranks)), tuple(-d for d in reversed(t.degrees)))


def dual_parameter(alpha: AlphaLike) -> StabilityParameter:
    values = _alpha(alpha)
    n = len(values) - 1
    return StabilityParameter(tuple(values[n] - values[n - j] for j in range(n + 1)))


def dualize(t: ChainType, alpha: AlphaLike) -> tuple[ChainType, StabilityParameter]:
    """Type and parameter of the dual chain ``E_0^* -> ... -> E_n^*``."""
    values = _alpha(alpha)
    _check_lengths(t, values)
    return dual_type(t), dual_parameter(values)


def chi_holomorphic(t2: ChainType, t1: ChainType, g: int) -> int:
    """Euler characteristic of the hom complex from a chain of type ``t2`` to one of type ``t1``."""
    if len(t2.ranks) != len(t1.ranks):
        raise ValidationError("types must have the same length")
    r2, d2, r1, d1 = t2.ranks, t2.degrees, t1.ranks, t1.degrees
    rank_part = sum(a * b for a, b in zip(r2, r1)) - sum(r2[i] * r1[i - 1] for i in range(1, len(r1)))
    diagonal = sum(r2[i] * d1[i] - r1[i] * d2[i] for i in range(len(r1)))
    shifted = sum(r2[i] * d1[i - 1] - r1[i - 1] * d2[i] for i in range(1, len(r1)))
    return (1 - g) * rank_part + diagonal - shifted


def riemann_roch_chi(rank_e: int, deg_e: int, rank_f: int, deg_f: int, g: int) -> int:
    """``chi(E, F) = dim Hom(E, F) - dim Ext^1(E, F)`` for bundles on a genus ``g`` curve."""
    if rank_e <= 0 or rank_f <= 0:
        raise ValidationError("ranks must be positive")
    return (1 - g) * rank_e * rank_f + rank_e * deg_f - rank_f * deg_e


def _instance_parts(inst: ProblemInstance) -> tuple[ChainType, int]:
    return inst.chain_type, inst.genus


def moduli_dimension(inst: ProblemInstance) -> int:
    """Expected dimension of the moduli space of stable chains of the given type."""
    t, g = _instance_parts(inst)
    r, d = t.ranks, t.degrees
    if any(x == 0 for x in r):
        raise PreconditionError("the dimension formula needs every rank positive", "positive-ranks")
    quadratic = sum(x * x for x in r) - sum(r[i] * r[i - 1] for i in range(1, len(r)))
    linear = sum(r[i] * d[i - 1] - r[i - 1] * d[i] for i in range(1, len(r)))
    return (g - 1) * quadratic + linear + 1


def ext1_dim_under_vanishing(t2: ChainType, t1: ChainType, g: int, h0: int = 0) -> int:
    """``h0 - chi`` assuming the second hypercohomology group vanishes."""
    if h0 < 0:
        raise ValidationError("h0 must be nonnegative")
    value = h0 - chi_holomorphic(t2, t1, g)
    if value < 0:
        raise PreconditionError(
            f"negative Ext^1 dimension {value}: the vanishing assumptions are inconsistent",
            "h2-vanishing",
        )
    return value


def convert_parameters(t: ChainType, alpha: AlphaLike) -> TauVector:
    """Gauge-theoretic parameters ``tau_j = mu_alpha(t) - alpha_j``."""
    values = _alpha(alpha)
    mu = alpha_slope(t, values)
    return TauVector(tuple(mu - a for a in values))


def alpha_from_tau(tau: TauVector | Sequence[RationalLike]) -> StabilityParameter:
    values = tau.values if isinstance(tau, TauVector) else as_point(tau)
    return StabilityParameter(tuple(values[0] - x for x in values))


def shift(alpha: AlphaLike, beta: RationalLike) -> tuple[Fraction, ...]:
    """Add ``beta`` to every entry (leaves stability unchanged)."""
    b = as_rational(beta)
    return tuple(a + b for a in _alpha(alpha))
