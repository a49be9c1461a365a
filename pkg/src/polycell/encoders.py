"""Encoders from concrete tiling problems to polycells, and decoders back.

Two families are supported:

* domino tilings of polyominoes (squares oriented clockwise when
  ``col + row`` is even, counterclockwise otherwise);
* codimension-one rhombus tilings of regions of Z^d, whose cells are the
  ``d + 1`` circuits that walk a monotone path through a unit hypercube and
  come back along its diagonal.  ``d = 2`` gives lozenge tilings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import factorial
from typing import Iterable

from .core import Cell, DirectedGraph, Embedding, Polycell, PolycellError
from .tilings import Tiling

Point = tuple[int, ...]
Simplex = tuple[Point, tuple[int, ...]]  # (min corner, axis permutation, 0-based)

MAX_DIMENSION = 6


# -- regions ------------------------------------------------------------------


@dataclass(frozen=True)
class PolyominoRegion:
    occupied: frozenset[tuple[int, int]]

    def __post_init__(self):
        if not self.occupied:
            raise PolycellError("polyomino region is empty")

    @classmethod
    def of(cls, squares: Iterable[tuple[int, int]]) -> "PolyominoRegion":
        return cls(frozenset((int(c), int(r)) for c, r in squares))

    @classmethod
    def from_ascii(cls, text: str) -> "PolyominoRegion":
        """``#`` occupied, ``.`` empty; the first line is the top row."""
        lines = [ln.rstrip("\r") for ln in text.splitlines()]
        lines = [ln for ln in lines if ln.strip() and not ln.lstrip().startswith(";")]
        squares = []
        for i, line in enumerate(lines):
            row = len(lines) - 1 - i
            for col, ch in enumerate(line):
                if ch == "#":
                    squares.append((col, row))
                elif ch not in ". ":
                    raise PolycellError(f"line {i + 1}: unexpected character {ch!r}")
        return cls.of(squares)

    def to_ascii(self) -> str:
        cols = [c for c, _ in self.occupied]
        rows = [r for _, r in self.occupied]
        lines = []
        for r in range(max(rows), min(rows) - 1, -1):
            lines.append(
                "".join("#" if (c, r) in self.occupied else "." for c in range(min(cols), max(cols) + 1))
            )
        return "\n".join(lines) + "\n"

    def __len__(self) -> int:
        return len(self.occupied)


@dataclass(frozen=True)
class RhombusRegion:
    """A union of unit hypercubes, optionally with extra single simplices.

    Extra simplices make regions such as hexagons expressible: a hexagon
    has diagonal boundary edges, which no union of whole hypercubes can have.
    """

    d: int
    hypercubes: frozenset[Point]
    simplices: frozenset[Simplex] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.d < 2:
            raise PolycellError("rhombus regions need d >= 2")
        if not self.hypercubes and not self.simplices:
            raise PolycellError("rhombus region is empty")
        for x in self.hypercubes:
            if len(x) != self.d:
                raise PolycellError(f"point {x} is not {self.d}-dimensional")
        for x, perm in self.simplices:
            if len(x) != self.d or sorted(perm) != list(range(self.d)):
                raise PolycellError(f"bad simplex {(x, perm)}")

    def all_simplices(self) -> frozenset[Simplex]:
        perms = list(itertools.permutations(range(self.d)))
        out = {(x, p) for x in self.hypercubes for p in perms}
        return frozenset(out | self.simplices)


@dataclass(frozen=True, order=True)
class TilePlacement:
    kind: str | int  # "H"/"V" for dominoes, alpha in 1..d+1 for rhombi
    position: Point


# -- shared construction ------------------------------------------------------


def _build(cycles: list[list[Point]], k: int, kind: str, dim: int, interior_count: int | None) -> Polycell:
    """Assemble a polycell from vertex cycles given as lattice points.

    Boundary edges are those lying in fewer than ``interior_count`` cells
    (or in exactly one cell when ``interior_count`` is None).
    """
    points = sorted({p for cyc in cycles for p in cyc})
    vid = {p: i for i, p in enumerate(points)}
    pairs = set()
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            if (vid[b], vid[a]) in pairs:
                raise PolycellError(f"inconsistent orientation of segment {a}-{b}")
            pairs.add((vid[a], vid[b]))
    edges = sorted(pairs)
    eid = {pair: i for i, pair in enumerate(edges)}
    cells = []
    uses = [0] * len(edges)
    for cyc in cycles:
        ids = tuple(eid[vid[a], vid[b]] for a, b in zip(cyc, cyc[1:] + cyc[:1]))
        for e in ids:
            uses[e] += 1
        cells.append(Cell(ids))
    need = 2 if interior_count is None else interior_count
    boundary = frozenset(e for e, u in enumerate(uses) if u < need)
    nu = min(v for e in boundary for v in edges[e]) if boundary else None
    return Polycell(
        graph=DirectedGraph(tuple(range(len(points))), tuple(edges)),
        cells=tuple(cells),
        k=k,
        boundary=boundary,
        nu=nu,
        embedding=Embedding(kind, dim, tuple(points)),
    )


# -- polyominoes --------------------------------------------------------------


def square_cycle(c: int, r: int) -> list[Point]:
    if (c + r) % 2 == 0:  # white: clockwise with y pointing up
        return [(c, r), (c, r + 1), (c + 1, r + 1), (c + 1, r)]
    return [(c, r), (c + 1, r), (c + 1, r + 1), (c, r + 1)]


def encode_polyomino(R: PolyominoRegion) -> Polycell:
    squares = sorted(R.occupied)
    return _build([square_cycle(c, r) for c, r in squares], 4, "polyomino", 2, None)


def decode_dominoes(R: PolyominoRegion, P: Polycell, Q: Tiling) -> list[TilePlacement]:
    squares = sorted(R.occupied)
    if len(squares) != len(P.cells):
        raise PolycellError("polycell does not encode this region")
    out = []
    for e in sorted(Q.edges):
        cells = P.edge_cells[e]
        if len(cells) != 2:
            raise PolycellError(f"edge {e} does not separate two squares")
        (c1, r1), (c2, r2) = sorted(squares[c] for c in cells)
        kind = "H" if r1 == r2 else "V"
        out.append(TilePlacement(kind, (c1, r1)))
    return sorted(out)


def domino_squares(p: TilePlacement) -> tuple[tuple[int, int], tuple[int, int]]:
    c, r = p.position
    return ((c, r), (c + 1, r)) if p.kind == "H" else ((c, r), (c, r + 1))


def connected_regions(R: PolyominoRegion) -> list[PolyominoRegion]:
    """Split R into edge-connected polyominoes; domino tilings factor over them."""
    left = set(R.occupied)
    parts = []
    while left:
        stack = [min(left)]
        part = set(stack)
        left -= part
        while stack:
            c, r = stack.pop()
            for q in ((c + 1, r), (c - 1, r), (c, r + 1), (c, r - 1)):
                if q in left:
                    left.remove(q)
                    part.add(q)
                    stack.append(q)
        parts.append(PolyominoRegion(frozenset(part)))
    return sorted(parts, key=lambda p: min(p.occupied))


def rectangle(cols: int, rows: int) -> PolyominoRegion:
    return PolyominoRegion.of((c, r) for c in range(cols) for r in range(rows))


def aztec_diamond(n: int) -> PolyominoRegion:
    squares = []
    for c in range(2 * n):
        for r in range(2 * n):
            if abs(2 * c + 1 - 2 * n) + abs(2 * r + 1 - 2 * n) <= 2 * n:
                squares.append((c, r))
    return PolyominoRegion.of(squares)


# -- rhombus tilings ----------------------------------------------------------


def _unit(d: int, j: int) -> Point:
    return tuple(1 if i == j else 0 for i in range(d))


def _add(a: Point, b: Point) -> Point:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Point, b: Point) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def simplex_cycle(x: Point, perm: tuple[int, ...]) -> list[Point]:
    cyc = [x]
    for axis in perm:
        cyc.append(_add(cyc[-1], _unit(len(x), axis)))
    return cyc  # closing step from x + e_{d+1} back to x is the diagonal edge


def encode_rhombus(R: RhombusRegion, max_dimension: int = MAX_DIMENSION) -> Polycell:
    if R.d > max_dimension:
        raise PolycellError(f"d = {R.d} exceeds the dimension cap {max_dimension}")
    simplices = sorted(R.all_simplices())
    cycles = [simplex_cycle(x, p) for x, p in simplices]
    return _build(cycles, R.d + 1, "rhombus", R.d, factorial(R.d))


def placement_simplices(d: int, p: TilePlacement) -> frozenset[Simplex]:
    """The d! simplices forming the rhombus tile, computed geometrically."""
    perms = list(itertools.permutations(range(d)))
    if p.kind == d + 1:
        x = _sub(p.position, (1,) * d)
        return frozenset((x, q) for q in perms)
    axis = p.kind - 1
    out = set()
    for q in perms:
        t = q.index(axis)
        x = p.position
        for a in q[:t]:
            x = _sub(x, _unit(d, a))
        out.add((x, q))
    return frozenset(out)


def decode_rhombus(R: RhombusRegion, P: Polycell, Q: Tiling) -> list[TilePlacement]:
    if P.embedding is None or P.embedding.kind != "rhombus":
        raise PolycellError("polycell carries no rhombus geometry")
    d = R.d
    coords = P.embedding.coords
    diagonal = (-1,) * d
    out = []
    for e in sorted(Q.edges):
        a, b = (coords[v] for v in P.graph.edges[e])
        delta = _sub(b, a)
        if delta == diagonal:
            alpha = d + 1
        else:
            alpha = delta.index(1) + 1
        out.append(TilePlacement(alpha, a))
    return sorted(out)


def hexagon(n: int) -> RhombusRegion:
    """Hexagon of side n in the triangular lattice (d = 2)."""
    cubes, simplices = set(), set()
    for i in range(2 * n):
        for j in range(2 * n):
            lower = -n <= i - j <= n - 1  # triangle x, x+e1, x+e1+e2
            upper = -n + 1 <= i - j <= n  # triangle x, x+e2, x+e1+e2
            if lower and upper:
                cubes.add((i, j))
            elif lower:
                simplices.add(((i, j), (0, 1)))
            elif upper:
                simplices.add(((i, j), (1, 0)))
    return RhombusRegion(2, frozenset(cubes), frozenset(simplices))


def parse_points(text: str) -> RhombusRegion:
    """First line ``d``; then one hypercube min-corner per line.

    A line ``x1 .. xd : p1 .. pd`` adds a single simplex whose monotone path
    steps along axes p1, ..., pd (numbered from 1).
    """
    lines = [(i + 1, ln.split("#", 1)[0].strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(n, ln) for n, ln in lines if ln]
    if not lines:
        raise PolycellError("empty points file")
    try:
        d = int(lines[0][1])
    except ValueError:
        raise PolycellError(f"line {lines[0][0]}: expected the dimension") from None
    cubes, simplices = set(), set()
    for n, ln in lines[1:]:
        point, _, perm = ln.partition(":")
        try:
            x = tuple(int(t) for t in point.split())
            p = tuple(int(t) - 1 for t in perm.split())
        except ValueError:
            raise PolycellError(f"line {n}: expected integers") from None
        if len(x) != d:
            raise PolycellError(f"line {n}: expected {d} coordinates")
        if perm:
            simplices.add((x, p))
        else:
            cubes.add(x)
    return RhombusRegion(d, frozenset(cubes), frozenset(simplices))


def format_points(R: RhombusRegion) -> str:
    lines = [str(R.d)]
    lines += [" ".join(map(str, x)) for x in sorted(R.hypercubes)]
    for x, p in sorted(R.simplices):
        lines.append(" ".join(map(str, x)) + " : " + " ".join(str(a + 1) for a in p))
    return "\n".join(lines) + "\n"


# -- recovering regions from embedded polycells -------------------------------


def region_of(P: Polycell) -> PolyominoRegion | RhombusRegion:
    emb = P.embedding
    if emb is None:
        raise PolycellError("polycell carries no geometry")
    pts = emb.coords
    if emb.kind == "polyomino":
        squares = []
        for cell in P.cells:
            vs = [pts[P.graph.edges[e][0]] for e in cell.edges]
            squares.append(min(vs))
        return PolyominoRegion.of(squares)
    if emb.kind == "rhombus":
        d = emb.dim
        found = set()
        for cell in P.cells:
            steps = []
            start = None
            for e in cell.edges:
                a, b = (pts[v] for v in P.graph.edges[e])
                delta = _sub(b, a)
                if delta == (-1,) * d:
                    start = b
                else:
                    steps.append((a, delta.index(1)))
            steps.sort(key=lambda s: sum(s[0]))
            found.add((start, tuple(axis for _, axis in steps)))
        perms = set(itertools.permutations(range(d)))
        corners = {x for x, _ in found}
        cubes = {x for x in corners if {(x, p) for p in perms} <= found}
        rest = {(x, p) for x, p in found if x not in cubes}
        return RhombusRegion(d, frozenset(cubes), frozenset(rest))
    raise PolycellError(f"unknown geometry {emb.kind!r}")
