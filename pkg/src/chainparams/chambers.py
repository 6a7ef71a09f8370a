"""Chambers of the wall arrangement and queries against them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .chain_core import ChainType
from .errors import AmbiguityError, ValidationError
from .exact_geometry import (
    AffineFunctional,
    Box,
    Halfspace,
    Point,
    RationalLike,
    arrangement_2d,
    as_point,
    dedupe_lines,
)
from .parameter_space.walls import Wall, enumerate_walls


@dataclass(frozen=True)
class Chamber:
    id: int
    dimension: int
    sample: Point
    signs: tuple[int, ...]
    bounding_walls: tuple[int, ...]
    neighbors: tuple[int, ...]
    vertices: tuple[Point, ...] = ()

    @property
    def area(self) -> Fraction:
        from .exact_geometry import polygon_area

        return polygon_area(self.vertices) if self.dimension == 2 else Fraction(0)


@dataclass(frozen=True)
class ChamberComplex:
    box: Box
    lines: tuple[AffineFunctional, ...]
    walls: tuple[Wall, ...]
    chambers: tuple[Chamber, ...]

    def __iter__(self):
        return iter(self.chambers)

    def __len__(self) -> int:
        return len(self.chambers)

    def of_dimension(self, dimension: int) -> list[Chamber]:
        return [c for c in self.chambers if c.dimension == dimension]

    def signs_at(self, alpha: Sequence[RationalLike]) -> tuple[int, ...]:
        return tuple(line.sign_at(alpha) for line in self.lines)

    def line_index(self, line: AffineFunctional) -> int:
        canonical = line.canonical()
        for k, existing in enumerate(self.lines):
            if existing == canonical:
                return k
        raise ValidationError(f"line {line} is not part of the arrangement")


def _faces_2d(lines: list[AffineFunctional], box: Box) -> list[dict]:
    arrangement = arrangement_2d(lines, box)
    cells = {cell.signs: ("c", k) for k, cell in enumerate(arrangement.cells)}
    faces = []
    links: list[tuple] = [(("c", a), ("c", b)) for a, b in arrangement.adjacency]
    for k, cell in enumerate(arrangement.cells):
        n = len(cell.vertices)
        on_edge = tuple(
            i for i, line in enumerate(arrangement.lines)
            if any(
                line.value(cell.vertices[j]) == 0 and line.value(cell.vertices[(j + 1) % n]) == 0
                for j in range(n)
            )
        )
        faces.append(dict(key=("c", k), dimension=2, sample=cell.sample, signs=cell.signs,
                          vertices=cell.vertices, bounding=on_edge))
    vertex_keys = {v.sample: ("v", k) for k, v in enumerate(arrangement.vertices)}
    for k, edge in enumerate(arrangement.edges):
        zero = tuple(i for i, s in enumerate(edge.signs) if s == 0)
        faces.append(dict(key=("e", k), dimension=1, sample=edge.sample, signs=edge.signs,
                          vertices=edge.vertices, bounding=zero))
        for s in (-1, 1):
            signs = tuple(s if i in zero else x for i, x in enumerate(edge.signs))
            if signs in cells:
                links.append((("e", k), cells[signs]))
        for end in edge.vertices:
            if end in vertex_keys:
                links.append((vertex_keys[end], ("e", k)))
    for k, vertex in enumerate(arrangement.vertices):
        zero = tuple(i for i, s in enumerate(vertex.signs) if s == 0)
        faces.append(dict(key=("v", k), dimension=0, sample=vertex.sample, signs=vertex.signs,
                          vertices=vertex.vertices, bounding=zero))
    return faces, links


def _faces_1d(lines: list[AffineFunctional], box: Box) -> tuple[list[dict], list]:
    points = sorted({line.constant / line.coefficients[0] for line in lines})
    lo, hi = box.lower[0], box.upper[0]
    cuts = [lo] + [p for p in points if lo < p < hi] + [hi]

    def signs(x: Fraction) -> tuple[int, ...]:
        return tuple(line.sign_at((x,)) for line in lines)

    faces, links = [], []
    vertex_keys = {}
    for k, p in enumerate(points):
        if lo <= p <= hi:
            sv = signs(p)
            vertex_keys[p] = ("v", k)
            faces.append(dict(key=("v", k), dimension=0, sample=(p,), signs=sv, vertices=((p,),),
                              bounding=tuple(i for i, s in enumerate(sv) if s == 0)))
    for k, (a, b) in enumerate(zip(cuts, cuts[1:])):
        mid = (a + b) / 2
        faces.append(dict(key=("c", k), dimension=1, sample=(mid,), signs=signs(mid),
                          vertices=((a,), (b,)), bounding=()))
        if k:
            links.append((("c", k - 1), ("c", k)))
        for end in (a, b):
            if end in vertex_keys:
                links.append((vertex_keys[end], ("c", k)))
    return faces, links


def build_complex(lines: Iterable[AffineFunctional], box: Box, walls: Sequence[Wall] = ()) -> ChamberComplex:
    """Chambers of every dimension for an arrangement of lines (or points on a segment).

    Neighbors of a top-dimensional chamber are the top-dimensional chambers
    sharing a facet with it; lower-dimensional chambers list their incident
    pieces one dimension up and down.
    """
    unique = dedupe_lines(lines)
    if box.dimension == 2:
        faces, links = _faces_2d(unique, box)
    elif box.dimension == 1:
        faces, links = _faces_1d(unique, box)
    else:
        raise ValidationError("chambers are computed for one or two free parameters")
    top = box.dimension
    faces.sort(key=lambda f: (-f["dimension"], f["sample"]))
    ids = {f["key"]: i for i, f in enumerate(faces)}
    neighbors: dict[int, set[int]] = {i: set() for i in range(len(faces))}
    for a, b in links:
        i, j = ids[a], ids[b]
        same_top = faces[i]["dimension"] == faces[j]["dimension"] == top
        if same_top or faces[i]["dimension"] < top:
            neighbors[i].add(j)
        if same_top or faces[j]["dimension"] < top:
            neighbors[j].add(i)
    chambers = tuple(
        Chamber(i, f["dimension"], f["sample"], f["signs"], f["bounding"], tuple(sorted(neighbors[i])), f["vertices"])
        for i, f in enumerate(faces)
    )
    return ChamberComplex(box, tuple(unique), tuple(walls), chambers)


def chamber_decomposition(
    t: ChainType, box: Box, extra_lines: Sequence[AffineFunctional] = ()
) -> ChamberComplex:
    """Chambers cut out of ``box`` by the proper walls of ``t`` (plus optional extra lines)."""
    walls = enumerate_walls(t, box)
    lines = [w.functional for w in walls] + list(extra_lines)
    return build_complex(lines, box, walls)


def locate(complex_: ChamberComplex, alpha: Sequence[RationalLike]) -> int:
    """Id of the chamber containing ``alpha``; points on walls go to the lowest-dimensional piece."""
    point = as_point(alpha)
    if not complex_.box.contains(point):
        raise ValidationError("point lies outside the box")
    signs = complex_.signs_at(point)
    zeros = sum(1 for s in signs if s == 0)
    top = complex_.box.dimension
    if zeros >= 2 or (top == 1 and zeros == 1):
        for c in complex_.chambers:
            if c.dimension == 0 and c.sample == point:
                return c.id
    elif zeros == 1:
        for c in complex_.chambers:
            if c.dimension == 1 and c.signs == signs and _on_segment(point, c.vertices):
                return c.id
    else:
        for c in complex_.chambers:
            if c.dimension == top and c.signs == signs:
                return c.id
    raise AssertionError(f"no chamber found for {point}")  # pragma: no cover


def _on_segment(point: Point, ends: tuple[Point, ...]) -> bool:
    (x0, y0), (x1, y1) = ends
    return min(x0, x1) <= point[0] <= max(x0, x1) and min(y0, y1) <= point[1] <= max(y0, y1)


def chamber_adjacent_to_line(
    complex_: ChamberComplex,
    line: AffineFunctional,
    side: int,
    region: Iterable[Halfspace] = (),
) -> int:
    """The unique 2-chamber on ``side`` of ``line`` inside ``region`` with an edge on ``line``."""
    if side not in (-1, 1):
        raise ValidationError("side must be +1 or -1")
    if complex_.box.dimension != 2:
        raise ValidationError("adjacency to a line needs two parameters")
    if not complex_.box.meets(line):
        raise ValidationError("line does not meet the box")
    k = complex_.line_index(line)
    region = tuple(region)
    sign_factor = 1 if line.normalizing_factor() > 0 else -1
    wanted = side * sign_factor
    candidates = [
        c.id for c in complex_.of_dimension(2)
        if c.signs[k] == wanted and k in c.bounding_walls and all(h.strictly_contains(c.sample) for h in region)
    ]
    if not candidates:
        raise ValidationError("no chamber of the requested region touches the line")
    if len(candidates) > 1:
        raise AmbiguityError(f"{len(candidates)} chambers touch the line", tuple(candidates))
    return candidates[0]
