"""Linear chains: representations of the linearly oriented type-A quiver.

Indecomposables are interval modules ``[p, q]`` (one-dimensional in slots
``p..q`` with identity maps).  Everything about Hom and Ext between direct
sums reduces to pairings of intervals.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .chain_core import dual_parameter
from .errors import CapExceededError, PreconditionError, ValidationError
from .exact_geometry import RationalLike, as_point
from .finite_field import EXISTENCE_CAP, oracle_exists_semistable

DECOMPOSITION_CAP = 12


def _dims(values: Sequence[int], what: str = "dimension vector") -> tuple[int, ...]:
    out = tuple(values)
    if len(out) < 2:
        raise ValidationError(f"{what} needs length >= 2")
    if any(isinstance(x, bool) or not isinstance(x, int) or x < 0 for x in out):
        raise ValidationError(f"{what} entries must be nonnegative integers")
    return out


@dataclass(frozen=True, order=True)
class IntervalModule:
    p: int
    q: int
    n: int

    def __post_init__(self) -> None:
        if not 0 <= self.p <= self.q <= self.n:
            raise ValidationError(f"need 0 <= p <= q <= n, got p={self.p} q={self.q} n={self.n}")

    def __str__(self) -> str:
        return f"[{self.p},{self.q}]"


def interval_dimension_vector(m: IntervalModule) -> tuple[int, ...]:
    return tuple(int(m.p <= j <= m.q) for j in range(m.n + 1))


@dataclass(frozen=True)
class Pairing:
    hom: int
    ext: int
    chi: int


def _overlap(a: int, b: int, c: int, d: int) -> int:
    return max(0, min(b, d) - max(a, c) + 1)


def interval_pairing(m2: IntervalModule, m1: IntervalModule) -> Pairing:
    """Hom and Ext from ``m2`` to ``m1``."""
    if m1.n != m2.n:
        raise ValidationError("interval modules live in chains of different length")
    p1, q1, p2, q2 = m1.p, m1.q, m2.p, m2.q
    hom = int(q1 >= q2 >= p1 >= p2)
    chi = _overlap(p1, q1, p2, q2) - _overlap(p1 + 1, q1 + 1, p2, q2)
    return Pairing(hom, hom - chi, chi)


def chi_linear(r2: Sequence[int], r1: Sequence[int]) -> int:
    """Euler form ``dim Hom - dim Ext`` between linear chains of the given dimensions."""
    r2, r1 = _dims(r2), _dims(r1)
    if len(r2) != len(r1):
        raise ValidationError("dimension vectors of different length")
    return sum(a * b for a, b in zip(r2, r1)) - sum(r2[i] * r1[i - 1] for i in range(1, len(r1)))


@dataclass(frozen=True)
class IntervalDecomposition:
    """A multiset of intervals, stored as a sorted tuple with repeats."""

    intervals: tuple[IntervalModule, ...]

    @property
    def multiplicities(self) -> dict[IntervalModule, int]:
        return dict(sorted(Counter(self.intervals).items()))

    def dimension_vector(self, n: int) -> tuple[int, ...]:
        out = [0] * (n + 1)
        for m in self.intervals:
            for j in range(m.p, m.q + 1):
                out[j] += 1
        return tuple(out)

    def __str__(self) -> str:
        return " + ".join(f"{k}*{m}" if k > 1 else str(m) for m, k in self.multiplicities.items()) or "0"


def enumerate_interval_decompositions(
    r: Sequence[int], cap: int = DECOMPOSITION_CAP
) -> list[IntervalDecomposition]:
    """Every multiset of intervals with total dimension vector ``r``."""
    dims = _dims(r)
    if sum(dims) > cap:
        raise CapExceededError(f"total dimension {sum(dims)} exceeds cap {cap}")
    n = len(dims) - 1
    found: list[IntervalDecomposition] = []

    def grow(rest: list[int], floor: tuple[int, int], chosen: list[IntervalModule]) -> None:
        start = next((j for j, x in enumerate(rest) if x), None)
        if start is None:
            found.append(IntervalDecomposition(tuple(chosen)))
            return
        # The lowest occupied slot must begin some interval.
        for end in range(start, n + 1):
            if rest[end] == 0:
                break
            if (start, end) < floor:
                continue
            for j in range(start, end + 1):
                rest[j] -= 1
            grow(rest, (start, end), chosen + [IntervalModule(start, end, n)])
            for j in range(start, end + 1):
                rest[j] += 1

    grow(list(dims), (0, 0), [])
    return found


def decomposition_pairing(d2: IntervalDecomposition, d1: IntervalDecomposition) -> Pairing:
    """Hom/Ext between direct sums, by additivity over summand pairs."""
    hom = ext = chi = 0
    for a in d2.intervals:
        for b in d1.intervals:
            pr = interval_pairing(a, b)
            hom, ext, chi = hom + pr.hom, ext + pr.ext, chi + pr.chi
    return Pairing(hom, ext, chi)


@dataclass(frozen=True)
class VSetResult:
    member: bool
    left: IntervalDecomposition | None = None
    right: IntervalDecomposition | None = None

    def __bool__(self) -> bool:
        return self.member


def _orthogonal(a: IntervalModule, b: IntervalModule) -> bool:
    pr = interval_pairing(a, b)
    return pr.hom == 0 and pr.ext == 0


def in_v_set(r1: Sequence[int], r2: Sequence[int], cap: int = DECOMPOSITION_CAP) -> VSetResult:
    """Whether some linear chains of dimensions ``r1`` (target) and ``r2`` (source)
    have no Hom and no Ext from the source to the target.

    Equivalently, the comparison map between their hom complexes is an
    isomorphism.  Witness decompositions are returned when they exist.
    """
    r1, r2 = _dims(r1), _dims(r2)
    if len(r1) != len(r2):
        raise ValidationError("dimension vectors of different length")
    if not any(r1) or not any(r2):
        raise ValidationError("both dimension vectors must be nonzero")
    if chi_linear(r2, r1) != 0:
        return VSetResult(False)
    rights = enumerate_interval_decompositions(r2, cap)
    for left in enumerate_interval_decompositions(r1, cap):
        allowed = {
            m for m in {m for d in rights for m in d.intervals}
            if all(_orthogonal(m, b) for b in left.intervals)
        }
        for right in rights:
            if all(m in allowed for m in right.intervals):
                return VSetResult(True, left, right)
    return VSetResult(False)


# -- three-slot classification ----------------------------------------------


@dataclass(frozen=True)
class ParameterSet:
    """A subset of the (alpha_1, alpha_2) plane: the origin, a ray or a cone."""

    description: str
    predicate: Callable[[Fraction, Fraction], bool]

    def contains(self, alpha: Sequence[RationalLike]) -> bool:
        values = as_point(alpha)
        if len(values) == 3:
            if values[0] != 0:
                raise ValidationError("expected a normalized parameter with alpha_0 = 0")
            values = values[1:]
        if len(values) != 2:
            raise ValidationError("expected (alpha_1, alpha_2) or (0, alpha_1, alpha_2)")
        return self.predicate(values[0], values[1])


def _origin() -> ParameterSet:
    return ParameterSet("{(0,0)}", lambda a1, a2: a1 == 0 and a2 == 0)


def _ray(x: int, y: int) -> ParameterSet:
    # lambda * (x, y) with lambda >= 0
    def on_ray(a1: Fraction, a2: Fraction) -> bool:
        return a1 * y == a2 * x and a1 * x + a2 * y >= 0

    return ParameterSet(f"{{t({x},{y}) : t >= 0}}", on_ray)


_CONE = ParameterSet(
    "{a1 <= 2 a2, a1 + a2 >= 0}", lambda a1, a2: a1 <= 2 * a2 and a1 + a2 >= 0
)


@dataclass(frozen=True)
class LinearClassification:
    ranks: tuple[int, int, int]
    case: str
    semistable_set: ParameterSet
    map_requirement: str
    subcases: tuple[tuple[str, str], ...] = ()

    def contains(self, alpha: Sequence[RationalLike]) -> bool:
        return self.semistable_set.contains(alpha)


def _direct_case(r0: int, r1: int, r2: int) -> LinearClassification | None:
    ranks = (r0, r1, r2)
    if r0 > r1 and r1 != r2:
        return LinearClassification(ranks, "i", _origin(), "none")
    if r0 < r1 > r2:
        if r0 == r2:
            ray = _ray(1, 2)
            return LinearClassification(
                ranks, "ii", ParameterSet("{(0,0)} u " + ray.description, ray.predicate),
                "f1 o f2 isomorphism off the origin",
            )
        return LinearClassification(ranks, "ii", _origin(), "none")
    if r0 != r1 and r1 == r2:
        return LinearClassification(ranks, "iii", _ray(-1, 1), "f2 isomorphism off the origin")
    if r0 == r1 == r2:
        return LinearClassification(
            ranks, "iv", _CONE, "see subcases",
            subcases=(
                ("boundary ray t(-1,1)", "f2 isomorphism"),
                ("boundary ray t(2,1)", "f1 isomorphism"),
                ("interior", "f1 and f2 isomorphisms"),
            ),
        )
    return None


def classify_linear_3chain_parameters(r: Sequence[int]) -> LinearClassification:
    """Parameters ``(alpha_1, alpha_2)`` admitting semistable linear chains of dimension ``r``.

    Patterns with no direct description are handled through the dual chain,
    whose parameter is ``(0, alpha_2 - alpha_1, alpha_2)``; those carry a
    ``-dual`` case label.
    """
    dims = _dims(r)
    if len(dims) != 3:
        raise ValidationError("classification is for three-slot chains")
    if min(dims) <= 0:
        raise PreconditionError("every rank must be positive", "positive-ranks")
    direct = _direct_case(*dims)
    if direct is not None:
        return direct
    mirrored = _direct_case(*reversed(dims))
    if mirrored is None:  # pragma: no cover - every ordering is covered
        raise PreconditionError(f"rank pattern {dims} is unclassified", "unclassified")

    def pulled_back(a1: Fraction, a2: Fraction) -> bool:
        d = dual_parameter((0, a1, a2))
        return mirrored.semistable_set.predicate(d[1], d[2])

    descriptions = {"i": "{(0,0)}", "iii": "{t(2,1) : t >= 0}"}
    requirement = mirrored.map_requirement.replace("f2", "f1")
    return LinearClassification(
        dims,
        f"{mirrored.case}-dual",
        ParameterSet(descriptions[mirrored.case], pulled_back),
        requirement,
    )


def ray_asymptotic_semistable(r: Sequence[int], gamma: Sequence[RationalLike]) -> bool:
    """Whether gamma-semistable linear chains of dimension ``r`` exist."""
    dims = _dims(r)
    values = as_point(gamma)
    if len(values) != len(dims):
        raise ValidationError("parameter length does not match the dimension vector")
    if all(v == values[0] for v in values):
        return True
    if len(dims) == 3 and min(dims) > 0:
        return classify_linear_3chain_parameters(dims).contains(tuple(v - values[0] for v in values))
    if sum(dims) > EXISTENCE_CAP:
        raise CapExceededError(f"no closed form for {dims} and the oracle cap is {EXISTENCE_CAP}")
    return oracle_exists_semistable(dims, values, q=2)
