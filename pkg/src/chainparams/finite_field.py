"""Brute-force linear chains over F_2 and F_3.

This is the independent oracle: it never consults the interval-module
formulas, only raw matrices, subspace enumeration and Gaussian elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .errors import CapExceededError, ValidationError
from .exact_geometry import RationalLike, as_point

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]
Subspace = frozenset  # of Vector

SUPPORTED_PRIMES = (2, 3)
SINGLE_REP_CAP = 8
EXISTENCE_CAP = 6


def _check_prime(q: int) -> None:
    if q not in SUPPORTED_PRIMES:
        raise ValidationError(f"field size must be one of {SUPPORTED_PRIMES}, got {q}")


def zero_matrix(rows: int, cols: int) -> Matrix:
    return tuple(tuple(0 for _ in range(cols)) for _ in range(rows))


def identity_matrix(size: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(size)) for i in range(size))


def transpose(m: Matrix, rows: int, cols: int) -> Matrix:
    return tuple(tuple(m[i][j] for i in range(rows)) for j in range(cols))


def apply(m: Matrix, v: Vector, q: int) -> Vector:
    return tuple(sum(a * b for a, b in zip(row, v)) % q for row in m)


def rank_mod_p(rows: Sequence[Sequence[int]], q: int) -> int:
    """Rank of an integer matrix over F_q by Gaussian elimination."""
    work = [[x % q for x in row] for row in rows]
    if not work:
        return 0
    cols = len(work[0])
    rank = 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(work)) if work[r][col]), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = pow(work[rank][col], q - 2, q)
        work[rank] = [(x * inv) % q for x in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col]:
                factor = work[r][col]
                work[r] = [(a - factor * b) % q for a, b in zip(work[r], work[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class FiniteFieldRep:
    """Linear chain ``V_n -> ... -> V_0`` over F_q.

    ``maps[i - 1]`` is the ``dims[i-1] x dims[i]`` matrix of ``f_i: V_i -> V_{i-1}``.
    """

    q: int
    dims: tuple[int, ...]
    maps: tuple[Matrix, ...]

    def __post_init__(self) -> None:
        _check_prime(self.q)
        if len(self.dims) < 2 or any(d < 0 for d in self.dims):
            raise ValidationError("dimension vector needs length >= 2 and nonnegative entries")
        if len(self.maps) != len(self.dims) - 1:
            raise ValidationError("need one map per arrow")
        for i, m in enumerate(self.maps, start=1):
            rows, cols = self.dims[i - 1], self.dims[i]
            if len(m) != rows or any(len(row) != cols for row in m):
                raise ValidationError(f"map f_{i} must be {rows}x{cols}")

    @classmethod
    def identity_chain(cls, dims: Sequence[int], q: int = 2) -> "FiniteFieldRep":
        """All maps are the standard inclusion or projection of maximal rank."""
        dims = tuple(dims)
        maps = tuple(
            tuple(tuple(int(a == b) for b in range(dims[i])) for a in range(dims[i - 1]))
            for i in range(1, len(dims))
        )
        return cls(q, dims, maps)

    def dual(self) -> "FiniteFieldRep":
        """Transpose every map and reverse the chain."""
        n = len(self.dims) - 1
        dims = tuple(reversed(self.dims))
        maps = tuple(
            transpose(self.maps[n - i], self.dims[n - i], self.dims[n - i + 1]) for i in range(1, n + 1)
        )
        return FiniteFieldRep(self.q, dims, maps)


def all_reps(dims: Sequence[int], q: int) -> Iterator[FiniteFieldRep]:
    """Every map tuple with the given dimension vector (no quotienting)."""
    dims = tuple(dims)
    shapes = [(dims[i - 1], dims[i]) for i in range(1, len(dims))]
    entry_counts = [r * c for r, c in shapes]
    for entries in product(range(q), repeat=sum(entry_counts)):
        maps = []
        pos = 0
        for (rows, cols), count in zip(shapes, entry_counts):
            flat = entries[pos : pos + count]
            pos += count
            maps.append(tuple(tuple(flat[r * cols : (r + 1) * cols]) for r in range(rows)))
        yield FiniteFieldRep(q, dims, tuple(maps))


@lru_cache(maxsize=None)
def subspaces(k: int, q: int) -> tuple[Subspace, ...]:
    """All subspaces of F_q^k, each as the frozenset of its vectors."""
    zero = tuple([0] * k)
    found = {frozenset([zero])}
    frontier = [frozenset([zero])]
    vectors = list(product(range(q), repeat=k))
    while frontier:
        nxt = []
        for space in frontier:
            for v in vectors:
                if v in space:
                    continue
                grown = frozenset(
                    tuple((a + c * b) % q for a, b in zip(w, v)) for w in space for c in range(q)
                )
                if grown not in found:
                    found.add(grown)
                    nxt.append(grown)
        frontier = nxt
    return tuple(sorted(found, key=lambda s: (len(s), sorted(s))))


def subspace_dim(space: Subspace, q: int) -> int:
    size, d = len(space), 0
    while size > 1:
        size //= q
        d += 1
    return d


def closed_subchains(rep: FiniteFieldRep) -> Iterator[tuple[Subspace, ...]]:
    """Tuples ``(W_0, ..., W_n)`` with ``f_i(W_i)`` inside ``W_{i-1}``."""
    q, dims, n = rep.q, rep.dims, len(rep.dims) - 1

    def extend(j: int, upper: tuple[Subspace, ...]) -> Iterator[tuple[Subspace, ...]]:
        # ``upper`` holds W_{j+1}, ..., W_n; choose W_j.
        if j < 0:
            yield upper
            return
        if j == n:
            image: set = set()
        else:
            image = {apply(rep.maps[j], v, q) for v in upper[0]}
        for w in subspaces(dims[j], q):
            if image <= w:
                yield from extend(j - 1, (w,) + upper)

    yield from extend(n, ())


def subchain_dimension_vectors(rep: FiniteFieldRep) -> frozenset[tuple[int, ...]]:
    return frozenset(tuple(subspace_dim(w, rep.q) for w in sub) for sub in closed_subchains(rep))


@dataclass(frozen=True)
class SemistabilityVerdict:
    semistable: bool
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.semistable


def _linear_slope(dims: Sequence[int], alpha: Sequence[Fraction]) -> Fraction:
    return sum((a * d for a, d in zip(alpha, dims)), Fraction(0)) / sum(dims)


def verdict_from_profile(
    dims: Sequence[int],
    profile: frozenset[tuple[int, ...]],
    alpha: Sequence[Fraction],
    strict: bool,
) -> SemistabilityVerdict:
    total = sum(dims)
    if total == 0:
        return SemistabilityVerdict(True)
    mu = _linear_slope(dims, alpha)
    worst: tuple[Fraction, tuple[int, ...]] | None = None
    for sub in profile:
        size = sum(sub)
        if size == 0 or size == total:
            continue
        excess = _linear_slope(sub, alpha) - mu
        bad = excess >= 0 if strict else excess > 0
        if bad and (worst is None or excess > worst[0] or (excess == worst[0] and sub < worst[1])):
            worst = (excess, sub)
    return SemistabilityVerdict(worst is None, None if worst is None else worst[1])


def _alpha_for(dims: Sequence[int], alpha: Sequence[RationalLike]) -> tuple[Fraction, ...]:
    values = as_point(alpha)
    if len(values) != len(dims):
        raise ValidationError("parameter length does not match the dimension vector")
    return values


def oracle_is_semistable(
    rep: FiniteFieldRep, alpha: Sequence[RationalLike], strict: bool = False
) -> SemistabilityVerdict:
    """Check every closed subchain of ``rep`` against the alpha-slope inequality."""
    if sum(rep.dims) > SINGLE_REP_CAP:
        raise CapExceededError(f"total dimension {sum(rep.dims)} exceeds {SINGLE_REP_CAP}")
    values = _alpha_for(rep.dims, alpha)
    return verdict_from_profile(rep.dims, subchain_dimension_vectors(rep), values, strict)


@lru_cache(maxsize=None)
def _profiles(dims: tuple[int, ...], q: int) -> tuple[frozenset, ...]:
    seen = {subchain_dimension_vectors(rep) for rep in all_reps(dims, q)}
    return tuple(sorted(seen, key=lambda s: sorted(s)))


def oracle_exists_semistable(
    dims: Sequence[int], alpha: Sequence[RationalLike], q: int = 2, strict: bool = False
) -> bool:
    """Whether some map tuple over F_q with these dimensions is alpha-(semi)stable."""
    _check_prime(q)
    dims = tuple(dims)
    if sum(dims) > EXISTENCE_CAP:
        raise CapExceededError(f"total dimension {sum(dims)} exceeds {EXISTENCE_CAP}")
    values = _alpha_for(dims, alpha)
    return any(verdict_from_profile(dims, p, values, strict).semistable for p in _profiles(dims, q))


def hom_ext_by_elimination(source: FiniteFieldRep, target: FiniteFieldRep) -> tuple[int, int]:
    """``(dim Hom, dim Ext^1)`` from ``source`` to ``target`` via the commuting-square system.

    Unknowns are the entries of ``psi_i: source_i -> target_i``; each arrow
    contributes the equations ``psi_{i-1} f_i = f'_i psi_i``.  Hom is the
    kernel and Ext^1 the cokernel of this linear map.
    """
    if source.q != target.q or len(source.dims) != len(target.dims):
        raise ValidationError("representations must share field and length")
    q, a, b = source.q, source.dims, target.dims
    offsets, pos = [], 0
    for i in range(len(a)):
        offsets.append(pos)
        pos += b[i] * a[i]
    unknowns = pos

    def var(i: int, row: int, col: int) -> int:
        return offsets[i] + row * a[i] + col

    equations = []
    for i in range(1, len(a)):
        f_src, f_tgt = source.maps[i - 1], target.maps[i - 1]
        for row in range(b[i - 1]):
            for col in range(a[i]):
                eq = [0] * unknowns
                for k in range(a[i - 1]):
                    eq[var(i - 1, row, k)] += f_src[k][col]
                for k in range(b[i]):
                    eq[var(i, k, col)] -= f_tgt[row][k]
                equations.append(eq)
    rank = rank_mod_p(equations, q) if unknowns else 0
    return unknowns - rank, len(equations) - rank
