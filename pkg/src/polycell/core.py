"""Graph substrate: directed graphs, cells, polycells, flows, travels and flux.

Vertices and edges are dense non-negative integers.  A flow is any
integer sequence (or mapping) indexed by edge id.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence, Union

Flow = Union[Sequence[int], Mapping[int, int]]


class PolycellError(ValueError):
    """Base class for errors raised by this package."""


class InvalidPolycellError(PolycellError):
    pass


class PreconditionError(PolycellError):
    """An operation was called outside of its domain."""


class NotATensionError(PolycellError):
    pass


@dataclass(frozen=True)
class DirectedGraph:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]  # edge id -> (source, target)

    def source(self, e: int) -> int:
        return self.edges[e][0]

    def target(self, e: int) -> int:
        return self.edges[e][1]


@dataclass(frozen=True)
class Cell:
    edges: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class Embedding:
    """Optional geometry attached by the encoders (used for rendering)."""

    kind: str  # "polyomino" or "rhombus"
    dim: int
    coords: tuple[tuple[int, ...], ...]  # vertex id -> lattice point


@dataclass(frozen=True)
class Tile:
    anchor: int
    cells: frozenset[int]


@dataclass(frozen=True)
class Travel:
    """A walk in the undirected edge graph; each step is ``(edge, forward)``."""

    steps: tuple[tuple[int, bool], ...]

    def __add__(self, other: "Travel") -> "Travel":
        return Travel(self.steps + other.steps)

    def reversed(self) -> "Travel":
        return Travel(tuple((e, not fwd) for e, fwd in reversed(self.steps)))

    def endpoints(self, graph: DirectedGraph) -> tuple[int, int]:
        """Return (start, end), checking that consecutive steps connect."""
        if not self.steps:
            raise PolycellError("empty travel has no endpoints")
        start = cur = None
        for e, fwd in self.steps:
            if not 0 <= e < len(graph.edges):
                raise PolycellError(f"unknown edge {e}")
            a, b = graph.edges[e] if fwd else graph.edges[e][::-1]
            if cur is None:
                start = a
            elif cur != a:
                raise PolycellError(f"travel is disconnected at edge {e}")
            cur = b
        return start, cur

    @classmethod
    def around(cls, cell: Cell) -> "Travel":
        return cls(tuple((e, True) for e in cell.edges))

    @classmethod
    def along(cls, graph: DirectedGraph, path: Sequence[int]) -> "Travel":
        """Build the travel visiting ``path`` (a vertex sequence)."""
        index = {}
        for e, (a, b) in enumerate(graph.edges):
            index[a, b] = (e, True)
            index[b, a] = (e, False)
        return cls(tuple(index[a, b] for a, b in zip(path, path[1:])))


def flux(flow: Flow, travel: Travel) -> int:
    total = 0
    for e, forward in travel.steps:
        try:
            value = flow[e]
        except (IndexError, KeyError):
            raise PolycellError(f"flow has no value for edge {e}") from None
        total += value if forward else -value
    return total


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)
    # Whether the cells span the integer cycle lattice; None when not computed.
    integer_span: bool | None = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=True)
class Polycell:
    graph: DirectedGraph
    cells: tuple[Cell, ...]
    k: int
    boundary: frozenset[int]
    nu: int | None
    embedding: Embedding | None = field(default=None, compare=False)

    # -- adjacency, cached per instance ------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.graph.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.graph.edges)

    @cached_property
    def out_edges(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in range(self.n_vertices)]
        for e, (a, _) in enumerate(self.graph.edges):
            out[a].append(e)
        return tuple(map(tuple, out))

    @cached_property
    def in_edges(self) -> tuple[tuple[int, ...], ...]:
        inc = [[] for _ in range(self.n_vertices)]
        for e, (_, b) in enumerate(self.graph.edges):
            inc[b].append(e)
        return tuple(map(tuple, inc))

    @cached_property
    def incident(self) -> tuple[tuple[tuple[int, int, int], ...], ...]:
        """Per vertex, sorted ``(neighbor, edge, sign)`` with sign +1 for out-edges."""
        adj = [[] for _ in range(self.n_vertices)]
        for e, (a, b) in enumerate(self.graph.edges):
            adj[a].append((b, e, 1))
            adj[b].append((a, e, -1))
        return tuple(tuple(sorted(row)) for row in adj)

    @cached_property
    def edge_cells(self) -> tuple[tuple[int, ...], ...]:
        cells = [[] for _ in range(self.n_edges)]
        for c, cell in enumerate(self.cells):
            for e in set(cell.edges):
                if 0 <= e < self.n_edges:
                    cells[e].append(c)
        return tuple(map(tuple, cells))

    @cached_property
    def interior_edges(self) -> tuple[int, ...]:
        return tuple(e for e in range(self.n_edges) if e not in self.boundary)

    @cached_property
    def boundary_vertices(self) -> frozenset[int]:
        return frozenset(v for e in self.boundary for v in self.graph.edges[e])

    @cached_property
    def interior_vertices(self) -> tuple[int, ...]:
        bv = self.boundary_vertices
        return tuple(v for v in self.graph.vertices if v not in bv)

    @cached_property
    def report(self) -> ValidationReport:
        return validate(self)

    @cached_property
    def balanced(self) -> bool:
        return is_balanced_boundary(self)

    @cached_property
    def cells_span_cycles(self) -> bool:
        return _cell_rank(self) == _cycle_rank(self)

    @cached_property
    def contractible(self) -> bool:
        return is_contractible(self)

    @cached_property
    def full(self) -> bool:
        return is_full(self)

    def require_valid(self) -> None:
        if not self.report.ok:
            raise InvalidPolycellError("; ".join(self.report.violations))

    def require_contractible(self) -> None:
        self.require_valid()
        if not self.contractible:
            raise PreconditionError("polycell is not contractible")


# -- validation ---------------------------------------------------------------


def validate(P: Polycell) -> ValidationReport:
    """List every violated structural invariant of ``P``."""
    out: list[str] = []
    g = P.graph
    n, m = len(g.vertices), len(g.edges)
    if tuple(g.vertices) != tuple(range(n)):
        out.append("vertex ids are not dense from 0")
    seen: dict[tuple[int, int], int] = {}
    edges_ok = True
    for e, (a, b) in enumerate(g.edges):
        if not (0 <= a < n and 0 <= b < n):
            out.append(f"edge {e} has an unknown endpoint")
            edges_ok = False
            continue
        if a == b:
            out.append(f"edge {e} is a loop")
        if (a, b) in seen:
            out.append(f"edges {seen[a, b]} and {e} are parallel")
        if (b, a) in seen:
            out.append(f"edges {seen[b, a]} and {e} are anti-parallel")
        seen[a, b] = e
    if P.k < 2:
        out.append(f"k = {P.k} is smaller than 2")

    for c, cell in enumerate(P.cells):
        if any(not 0 <= e < m for e in cell.edges):
            out.append(f"cell {c} references an unknown edge")
            continue
        if len(cell) != P.k:
            out.append(f"cell {c} has length {len(cell)}, expected k = {P.k}")
        if edges_ok and not _is_elementary_circuit(g, cell.edges):
            out.append(f"cell is not an elementary circuit: cell {c}")

    # Each tile (all cells through an interior edge) must pin down that edge.
    reported = set()
    for e, cs in enumerate(P.edge_cells):
        if e in P.boundary or len(cs) < 2:
            continue
        common = set.intersection(*(set(P.cells[c].edges) for c in cs))
        if len(common) > 1 and cs not in reported:
            reported.add(cs)
            out.append(f"cells share more than one edge: cells {list(cs)} share edges {sorted(common)}")

    used = set(e for cell in P.cells for e in cell.edges)
    for e in range(m):
        if e not in used:
            out.append(f"edge {e} belongs to no cell")
    for e in sorted(P.boundary):
        if not 0 <= e < m:
            out.append(f"boundary edge {e} is unknown")
        elif e not in used:
            out.append(f"boundary edge {e} is not an edge of any cell")
    if P.cells:
        if P.nu is None or P.nu not in P.boundary_vertices:
            out.append(f"nu = {P.nu} is not a boundary vertex")
        if edges_ok and not _connected(P):
            out.append("undirected edge graph is not connected")
    elif P.nu is not None or m:
        out.append("polycell without cells must have no edges and no nu")

    report = ValidationReport(out)
    if not out:
        report.integer_span = _cells_integer_span(P)
    return report


def _is_elementary_circuit(g: DirectedGraph, edges: Sequence[int]) -> bool:
    if len(edges) < 2:
        return False
    visited = set()
    for i, e in enumerate(edges):
        a, b = g.edges[e]
        if g.edges[edges[(i + 1) % len(edges)]][0] != b or a in visited:
            return False
        visited.add(a)
    return True


def _connected(P: Polycell) -> bool:
    if P.n_vertices == 0:
        return True
    return len(_bfs_order(P.incident, 0)) == P.n_vertices


def _bfs_order(adj, root: int) -> list[int]:
    seen = {root}
    order = [root]
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w, _, _ in adj[v]:
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    return order


# -- potentials ---------------------------------------------------------------


def propagate_potential(adj, flow: Flow, root: int) -> tuple[dict[int, int], tuple[int, int] | None]:
    """Breadth-first potential from ``root`` (value 0) along ``adj``.

    ``adj`` is a per-vertex sequence of ``(neighbor, edge, sign)``.  Returns the
    potential on the reached vertices and the first inconsistent
    ``(edge, vertex)`` pair, or None when every traversed edge agrees.
    """
    pot = {root: 0}
    queue = deque([root])
    conflict = None
    while queue:
        v = queue.popleft()
        for w, e, sign in adj[v]:
            expected = pot[v] + sign * flow[e]
            if w not in pot:
                pot[w] = expected
                queue.append(w)
            elif pot[w] != expected and conflict is None:
                conflict = (e, w)
    return pot, conflict


def boundary_adjacency(P: Polycell):
    adj = {v: [] for v in P.boundary_vertices}
    for e in sorted(P.boundary):
        a, b = P.graph.edges[e]
        adj[a].append((b, e, 1))
        adj[b].append((a, e, -1))
    return {v: sorted(row) for v, row in adj.items()}


def is_balanced_boundary(P: Polycell) -> bool:
    """Every closed travel on the boundary has zero flux under the all-ones flow."""
    adj = boundary_adjacency(P)
    ones = [1] * P.n_edges
    remaining = set(adj)
    while remaining:
        root = min(remaining)
        pot, conflict = propagate_potential(adj, ones, root)
        if conflict is not None:
            return False
        remaining -= pot.keys()
    return True


def is_full(P: Polycell) -> bool:
    """The undirected boundary is connected."""
    adj = boundary_adjacency(P)
    if not adj:
        return not P.cells
    root = min(adj)
    return len(_bfs_order(adj, root)) == len(adj)


def is_tension(P: Polycell, flow: Flow) -> bool:
    """Zero flux on every closed travel of P."""
    remaining = set(range(P.n_vertices))
    while remaining:
        root = min(remaining)
        pot, conflict = propagate_potential(P.incident, flow, root)
        if conflict is not None:
            return False
        remaining -= pot.keys()
    return True


def is_contractible(P: Polycell) -> bool:
    """Balanced boundary, and the cell circuits span the cycle space over Q."""
    if not P.report.ok:
        return False
    return P.balanced and P.cells_span_cycles


def tiles(P: Polycell) -> list[Tile]:
    return [Tile(e, frozenset(P.edge_cells[e])) for e in P.interior_edges]


# -- exact linear algebra -----------------------------------------------------


def _cell_matrix(P: Polycell) -> list[list[int]]:
    rows = []
    for cell in P.cells:
        row = [0] * P.n_edges
        for e in cell.edges:
            row[e] += 1
        rows.append(row)
    return rows


def _cycle_rank(P: Polycell) -> int:
    components = 0
    remaining = set(range(P.n_vertices))
    while remaining:
        components += 1
        remaining -= set(_bfs_order(P.incident, min(remaining)))
    return P.n_edges - P.n_vertices + components


def _cell_rank(P: Polycell) -> int:
    return integer_rank(_cell_matrix(P))


def integer_rank(matrix: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    a = [list(row) for row in matrix]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    rank, prev = 0, 1
    for col in range(cols):
        pivot = next((r for r in range(rank, rows) if a[r][col]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][col]
        for r in range(rank + 1, rows):
            factor = a[r][col]
            a[r] = [(p * x - factor * y) // prev for x, y in zip(a[r], a[rank])]
        prev = p
        rank += 1
        if rank == rows:
            break
    return rank


def invariant_factors(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form (absolute values)."""
    a = [list(row) for row in matrix]
    factors = []
    while a and a[0]:
        nz = [(abs(x), i, j) for i, row in enumerate(a) for j, x in enumerate(row) if x]
        if not nz:
            break
        _, i, j = min(nz)
        a[0], a[i] = a[i], a[0]
        for row in a:
            row[0], row[j] = row[j], row[0]
        while True:
            p = a[0][0]
            bad = False
            for r in range(1, len(a)):
                q = a[r][0] // p
                if q:
                    a[r] = [x - q * y for x, y in zip(a[r], a[0])]
                if a[r][0]:
                    bad = True
            for c in range(1, len(a[0])):
                q = a[0][c] // p
                if q:
                    for row in a:
                        row[c] -= q * row[0]
                if a[0][c]:
                    bad = True
            if not bad:
                # p must divide every remaining entry for a true Smith form
                offender = next(
                    (r for r in range(1, len(a)) if any(x % p for x in a[r][1:])), None
                )
                if offender is None:
                    break
                a[0] = [x + y for x, y in zip(a[0], a[offender])]
                continue
            nz = [(abs(a[r][0]), r, 0) for r in range(len(a)) if a[r][0]]
            nz += [(abs(a[0][c]), 0, c) for c in range(len(a[0])) if a[0][c]]
            _, r, c = min(nz)
            a[0], a[r] = a[r], a[0]
            for row in a:
                row[0], row[c] = row[c], row[0]
        factors.append(abs(a[0][0]))
        a = [row[1:] for row in a[1:]]
    return factors


def _cells_integer_span(P: Polycell) -> bool:
    """Whether cell circuits generate the integer cycle lattice.

    The cycle lattice is saturated in Z^E, so the cells generate it iff they
    span it over Q and every invariant factor of the cell matrix is 1.
    """
    if not P.cells:
        return _cycle_rank(P) == 0
    factors = invariant_factors(_cell_matrix(P))
    return len(factors) == _cycle_rank(P) and all(f == 1 for f in factors)


__all__ = [
    "Cell",
    "DirectedGraph",
    "Embedding",
    "Flow",
    "InvalidPolycellError",
    "NotATensionError",
    "Polycell",
    "PolycellError",
    "PreconditionError",
    "Tile",
    "Travel",
    "ValidationReport",
    "flux",
    "integer_rank",
    "invariant_factors",
    "is_balanced_boundary",
    "is_contractible",
    "is_full",
    "is_tension",
    "propagate_potential",
    "tiles",
    "validate",
]
