"""Exact rational linear geometry over the stability-parameter space.

Everything here works over :class:`fractions.Fraction`; floats are rejected
at the boundary.  Two dimensional routines (polygon clipping and the line
arrangement) are the only ones that enumerate cells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

from .errors import ValidationError

Rational = Fraction
RationalLike = Union[int, Fraction, str]
Point = tuple[Fraction, ...]

SENSES = (">=", ">", "<=", "<")


def as_rational(value: RationalLike) -> Fraction:
    """Convert ``value`` to a Fraction, refusing floats."""
    if isinstance(value, bool):
        raise ValidationError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"not a rational: {value!r}") from exc
    raise ValidationError(f"expected int, Fraction or 'p/q' string, got {type(value).__name__}")


def as_point(values: Iterable[RationalLike]) -> Point:
    return tuple(as_rational(v) for v in values)


def format_rational(value: Fraction) -> str:
    """Serialize as ``"p/q"`` (or ``"p"`` for integers)."""
    value = as_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b) if a and b else max(a, b)


@dataclass(frozen=True)
class AffineFunctional:
    """The map ``alpha -> sum(c_i * alpha_i) - constant``."""

    coefficients: tuple[Fraction, ...]
    constant: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", as_point(self.coefficients))
        object.__setattr__(self, "constant", as_rational(self.constant))
        if not self.coefficients:
            raise ValidationError("a functional needs at least one coefficient")

    @property
    def dimension(self) -> int:
        return len(self.coefficients)

    @property
    def is_zero(self) -> bool:
        return self.is_constant and self.constant == 0

    @property
    def is_constant(self) -> bool:
        """All coefficients vanish (the zero set is empty or everything)."""
        return all(c == 0 for c in self.coefficients)

    @property
    def is_degenerate(self) -> bool:
        return self.is_constant

    def value(self, alpha: Sequence[RationalLike]) -> Fraction:
        if len(alpha) != self.dimension:
            raise ValidationError(
                f"point has dimension {len(alpha)}, functional has {self.dimension}"
            )
        total = sum((c * as_rational(a) for c, a in zip(self.coefficients, alpha)), Fraction(0))
        return total - self.constant

    def sign_at(self, alpha: Sequence[RationalLike]) -> int:
        v = self.value(alpha)
        return (v > 0) - (v < 0)

    def scaled(self, factor: RationalLike) -> "AffineFunctional":
        k = as_rational(factor)
        return AffineFunctional(tuple(c * k for c in self.coefficients), self.constant * k)

    def __neg__(self) -> "AffineFunctional":
        return self.scaled(-1)

    def __add__(self, other: "AffineFunctional") -> "AffineFunctional":
        if other.dimension != self.dimension:
            raise ValidationError("cannot add functionals of different dimension")
        return AffineFunctional(
            tuple(a + b for a, b in zip(self.coefficients, other.coefficients)),
            self.constant + other.constant,
        )

    def normalizing_factor(self) -> Fraction:
        """Positive or negative rational ``k`` with ``k * self`` canonical."""
        entries = list(self.coefficients) + [self.constant]
        if all(e == 0 for e in entries):
            return Fraction(1)
        denominators = reduce(_lcm, (e.denominator for e in entries), 1)
        integers = [int(e * denominators) for e in entries]
        divisor = reduce(math.gcd, (abs(i) for i in integers), 0)
        factor = Fraction(denominators, divisor)
        lead = next((c for c in self.coefficients if c != 0), self.constant)
        return factor if lead > 0 else -factor

    def canonical(self) -> "AffineFunctional":
        """Coprime integer entries, first nonzero coefficient positive."""
        return self.scaled(self.normalizing_factor())

    def same_hyperplane(self, other: "AffineFunctional") -> bool:
        return self.canonical() == other.canonical()

    def format(self, names: Sequence[str] | None = None) -> str:
        """Human-readable equation such as ``"a1 - 2 a2 = -3"``."""
        names = names or [f"a{i + 1}" for i in range(self.dimension)]
        terms: list[str] = []
        for c, name in zip(self.coefficients, names):
            if c == 0:
                continue
            magnitude = abs(c)
            body = name if magnitude == 1 else f"{format_rational(magnitude)} {name}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(f"+ {body}" if c > 0 else f"- {body}")
        lhs = " ".join(terms) if terms else "0"
        return f"{lhs} = {format_rational(self.constant)}"

    def __str__(self) -> str:
        return self.format()


def functional_from_equation(coefficients: Sequence[RationalLike], rhs: RationalLike) -> AffineFunctional:
    """``sum(c_i alpha_i) = rhs`` as a functional vanishing on that hyperplane."""
    return AffineFunctional(as_point(coefficients), as_rational(rhs))


def evaluate(f: AffineFunctional, alpha: Sequence[RationalLike]) -> Fraction:
    return f.value(alpha)


_FLIP = {">=": "<=", ">": "<", "<=": ">=", "<": ">"}


@dataclass(frozen=True)
class Halfspace:
    """``functional(alpha) <sense> 0``."""

    functional: AffineFunctional
    sense: str = "<="
    label: str = ""

    def __post_init__(self) -> None:
        if self.sense not in SENSES:
            raise ValidationError(f"unknown sense {self.sense!r}")
        if self.functional.is_degenerate:
            raise ValidationError("halfspace boundary must be a genuine hyperplane")

    @classmethod
    def from_inequality(
        cls,
        coefficients: Sequence[RationalLike],
        sense: str,
        rhs: RationalLike,
        label: str = "",
    ) -> "Halfspace":
        """``sum(c_i alpha_i) <sense> rhs``."""
        return cls(functional_from_equation(coefficients, rhs), sense, label)

    @property
    def is_strict(self) -> bool:
        return self.sense in (">", "<")

    def contains(self, alpha: Sequence[RationalLike]) -> bool:
        v = self.functional.value(alpha)
        return {
            ">=": v >= 0,
            ">": v > 0,
            "<=": v <= 0,
            "<": v < 0,
        }[self.sense]

    def strictly_contains(self, alpha: Sequence[RationalLike]) -> bool:
        v = self.functional.value(alpha)
        return v > 0 if self.sense in (">=", ">") else v < 0

    def as_upper_bound(self) -> AffineFunctional:
        """Functional ``h`` with this halfspace equal to ``h <= 0`` (closure)."""
        return self.functional if self.sense in ("<=", "<") else -self.functional

    def canonical(self) -> "Halfspace":
        k = self.functional.normalizing_factor()
        sense = self.sense if k > 0 else _FLIP[self.sense]
        return Halfspace(self.functional.scaled(k), sense, self.label)

    def as_lower_bound(self) -> "Halfspace":
        """Same halfspace written ``f >= 0`` (or ``> 0``) with coprime integer coefficients."""
        k = abs(self.functional.normalizing_factor())
        f = self.functional.scaled(k)
        if self.sense in ("<=", "<"):
            return Halfspace(-f, _FLIP[self.sense], self.label)
        return Halfspace(f, self.sense, self.label)

    def closure(self) -> "Halfspace":
        return Halfspace(self.functional, {">": ">=", "<": "<="}.get(self.sense, self.sense), self.label)

    def format(self, names: Sequence[str] | None = None) -> str:
        f = self.functional
        eq = f.format(names)
        lhs, rhs = eq.rsplit(" = ", 1)
        return f"{lhs} {self.sense} {rhs}"


@dataclass(frozen=True)
class Box:
    lower: Point
    upper: Point

    def __post_init__(self) -> None:
        object.__setattr__(self, "lower", as_point(self.lower))
        object.__setattr__(self, "upper", as_point(self.upper))
        if len(self.lower) != len(self.upper) or not self.lower:
            raise ValidationError("box bounds must be nonempty and of equal length")
        if any(lo >= hi for lo, hi in zip(self.lower, self.upper)):
            raise ValidationError("box needs lower < upper in every coordinate")

    @classmethod
    def square(cls, low: RationalLike, high: RationalLike, dimension: int = 2) -> "Box":
        return cls((low,) * dimension, (high,) * dimension)

    @property
    def dimension(self) -> int:
        return len(self.lower)

    def corners(self) -> list[Point]:
        corners: list[Point] = [()]
        for lo, hi in zip(self.lower, self.upper):
            corners = [c + (x,) for c in corners for x in (lo, hi)]
        return corners

    def contains(self, alpha: Sequence[RationalLike]) -> bool:
        point = as_point(alpha)
        return len(point) == self.dimension and all(
            lo <= x <= hi for lo, x, hi in zip(self.lower, point, self.upper)
        )

    def volume(self) -> Fraction:
        return reduce(lambda acc, pair: acc * (pair[1] - pair[0]), zip(self.lower, self.upper), Fraction(1))

    def halfspaces(self) -> list[Halfspace]:
        out = []
        for i in range(self.dimension):
            unit = tuple(Fraction(int(j == i)) for j in range(self.dimension))
            out.append(Halfspace.from_inequality(unit, ">=", self.lower[i], label="box"))
            out.append(Halfspace.from_inequality(unit, "<=", self.upper[i], label="box"))
        return out

    def value_range(self, f: AffineFunctional) -> tuple[Fraction, Fraction]:
        """Minimum and maximum of ``f`` over the box (attained at corners)."""
        values = [f.value(c) for c in self.corners()]
        return min(values), max(values)

    def meets(self, f: AffineFunctional) -> bool:
        lo, hi = self.value_range(f)
        return lo <= 0 <= hi

    def polygon(self) -> list[Point]:
        if self.dimension != 2:
            raise ValidationError("polygon view needs a two dimensional box")
        (x0, y0), (x1, y1) = self.lower, self.upper
        return [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]


# -- planar polygons ------------------------------------------------------


def polygon_area(vertices: Sequence[Point]) -> Fraction:
    """Signed shoelace area; positive for counterclockwise order."""
    total = Fraction(0)
    for (x0, y0), (x1, y1) in zip(vertices, list(vertices[1:]) + list(vertices[:1])):
        total += x0 * y1 - x1 * y0
    return total / 2


def centroid(vertices: Sequence[Point]) -> Point:
    count = len(vertices)
    return (
        sum((v[0] for v in vertices), Fraction(0)) / count,
        sum((v[1] for v in vertices), Fraction(0)) / count,
    )


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _tidy(vertices: list[Point]) -> list[Point]:
    """Drop repeated and collinear vertices of a convex polygon."""
    out: list[Point] = []
    for v in vertices:
        if not out or out[-1] != v:
            out.append(v)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    changed = True
    while changed and len(out) >= 3:
        changed = False
        for i in range(len(out)):
            prev, cur, nxt = out[i - 1], out[i], out[(i + 1) % len(out)]
            if _cross(prev, cur, nxt) == 0:
                del out[i]
                changed = True
                break
    return out


def _segment_crossing(p: Point, q: Point, fp: Fraction, fq: Fraction) -> Point:
    t = fp / (fp - fq)
    return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def clip_polygon(vertices: Sequence[Point], upper: AffineFunctional) -> list[Point]:
    """Intersect a convex polygon with the closed halfplane ``upper <= 0``."""
    if not vertices:
        return []
    out: list[Point] = []
    values = [upper.value(v) for v in vertices]
    for i, (p, fp) in enumerate(zip(vertices, values)):
        q, fq = vertices[(i + 1) % len(vertices)], values[(i + 1) % len(vertices)]
        if fp <= 0:
            out.append(p)
        if (fp < 0 < fq) or (fq < 0 < fp):
            out.append(_segment_crossing(p, q, fp, fq))
    return _tidy(out)


@dataclass(frozen=True)
class ConvexCell:
    """A full-dimensional convex polygon with its defining halfspaces."""

    halfspaces: tuple[Halfspace, ...]
    vertices: tuple[Point, ...]
    sample: Point

    @property
    def area(self) -> Fraction:
        return polygon_area(self.vertices)

    def contains(self, alpha: Sequence[RationalLike]) -> bool:
        return all(h.contains(alpha) for h in self.halfspaces)

    def is_bounded_by(self, f: AffineFunctional) -> bool:
        """Whether ``f`` vanishes along a whole edge of the cell."""
        n = len(self.vertices)
        return any(
            f.value(self.vertices[i]) == 0 and f.value(self.vertices[(i + 1) % n]) == 0
            for i in range(n)
        )


def polygon_from_halfspaces(halfspaces: Sequence[Halfspace], box: Box) -> ConvexCell | None:
    """Intersection of ``halfspaces`` with ``box``.

    Returns None when the intersection has empty interior.  Strict senses do
    not change the polygon (a closure), but they are kept on the cell so that
    membership tests see them.
    """
    if box.dimension != 2:
        raise ValidationError("polygon_from_halfspaces works in two dimensions")
    polygon: list[Point] = box.polygon()
    for h in halfspaces:
        if h.functional.dimension != 2:
            raise ValidationError("halfspace dimension does not match the box")
        polygon = clip_polygon(polygon, h.as_upper_bound())
        if len(polygon) < 3:
            return None
    if polygon_area(polygon) <= 0:
        return None
    return ConvexCell(tuple(box.halfspaces()) + tuple(halfspaces), tuple(polygon), centroid(polygon))


# -- line arrangement -----------------------------------------------------


SignVector = tuple[int, ...]


@dataclass(frozen=True)
class Face:
    """A cell of the arrangement of dimension 2, 1 or 0."""

    dimension: int
    sample: Point
    signs: SignVector
    vertices: tuple[Point, ...] = ()

    @property
    def area(self) -> Fraction:
        return polygon_area(self.vertices) if self.dimension == 2 else Fraction(0)


@dataclass(frozen=True)
class Arrangement:
    lines: tuple[AffineFunctional, ...]
    box: Box
    cells: tuple[Face, ...]
    edges: tuple[Face, ...]
    vertices: tuple[Face, ...]
    adjacency: tuple[tuple[int, int], ...] = field(default=())

    def signs_at(self, alpha: Sequence[RationalLike]) -> SignVector:
        return tuple(line.sign_at(alpha) for line in self.lines)


def dedupe_lines(lines: Iterable[AffineFunctional]) -> list[AffineFunctional]:
    seen: dict[AffineFunctional, None] = {}
    for line in lines:
        if line.is_degenerate:
            raise ValidationError("degenerate functional in arrangement input")
        seen.setdefault(line.canonical(), None)
    return list(seen)


def _line_box_segment(line: AffineFunctional, box: Box) -> tuple[Point, Point] | None:
    """Portion of the line inside the closed box, if it has positive length."""
    points: list[Point] = []
    corners = box.polygon()
    for i, p in enumerate(corners):
        q = corners[(i + 1) % 4]
        fp, fq = line.value(p), line.value(q)
        if fp == 0:
            points.append(p)
        if (fp < 0 < fq) or (fq < 0 < fp):
            points.append(_segment_crossing(p, q, fp, fq))
    unique = sorted(set(points))
    if len(unique) < 2:
        return None
    return unique[0], unique[-1]


def _intersection(a: AffineFunctional, b: AffineFunctional) -> Point | None:
    (a1, a2), (b1, b2) = a.coefficients, b.coefficients
    det = a1 * b2 - a2 * b1
    if det == 0:
        return None
    x = (a.constant * b2 - a2 * b.constant) / det
    y = (a1 * b.constant - a.constant * b1) / det
    return (x, y)


def arrangement_2d(lines: Iterable[AffineFunctional], box: Box) -> Arrangement:
    """Planar subdivision of ``box`` cut out by ``lines``.

    Cells of a line arrangement are convex, so a sign vector identifies at
    most one 2-cell and no merging step is needed.
    """
    if box.dimension != 2:
        raise ValidationError("arrangement_2d needs a two dimensional box")
    unique = dedupe_lines(lines)
    for line in unique:
        if line.dimension != 2:
            raise ValidationError("arrangement lines must live in the plane")

    pieces: list[tuple[list[Point], list[int]]] = [(box.polygon(), [])]
    for line in unique:
        next_pieces = []
        for polygon, signs in pieces:
            below = clip_polygon(polygon, line)
            above = clip_polygon(polygon, -line)
            below_ok = len(below) >= 3 and polygon_area(below) > 0
            above_ok = len(above) >= 3 and polygon_area(above) > 0
            if below_ok and above_ok:
                next_pieces.append((below, signs + [-1]))
                next_pieces.append((above, signs + [1]))
            else:
                next_pieces.append((polygon, signs + [line.sign_at(centroid(polygon))]))
        pieces = next_pieces

    cells = sorted(
        (Face(2, centroid(poly), tuple(signs), tuple(poly)) for poly, signs in pieces),
        key=lambda f: f.sample,
    )

    def signs_at(point: Point) -> SignVector:
        return tuple(line.sign_at(point) for line in unique)

    crossings: dict[Point, None] = {}
    for i, a in enumerate(unique):
        for b in unique[i + 1 :]:
            p = _intersection(a, b)
            if p is not None and box.contains(p):
                crossings.setdefault(p, None)
    vertex_faces = sorted((Face(0, p, signs_at(p), (p,)) for p in crossings), key=lambda f: f.sample)

    edge_faces: list[Face] = []
    for line in unique:
        segment = _line_box_segment(line, box)
        if segment is None:
            continue
        start, end = segment
        cuts = sorted({start, end} | {p for p in crossings if line.value(p) == 0 and start <= p <= end})
        for p, q in zip(cuts, cuts[1:]):
            mid = ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)
            edge_faces.append(Face(1, mid, signs_at(mid), (p, q)))
    edge_faces.sort(key=lambda f: f.sample)

    index = {cell.signs: k for k, cell in enumerate(cells)}
    pairs: set[tuple[int, int]] = set()
    for edge in edge_faces:
        zero = [k for k, s in enumerate(edge.signs) if s == 0]
        if len(zero) != 1:
            continue
        k = zero[0]
        sides = []
        for s in (-1, 1):
            signs = list(edge.signs)
            signs[k] = s
            sides.append(index.get(tuple(signs)))
        if None not in sides:
            pairs.add((min(sides), max(sides)))

    return Arrangement(tuple(unique), box, tuple(cells), tuple(edge_faces), tuple(vertex_faces), tuple(sorted(pairs)))
