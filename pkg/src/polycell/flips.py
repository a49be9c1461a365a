"""Flips, flip-accessibility graphs, lattice operations and edge firing.

A flip at an interior vertex x lowers its height by k.  It is legal exactly
when every outgoing edge of x is a tiling edge and no incoming edge is; the
flip then swaps the two sets.  This local description needs no height
function, so flips are available on non-contractible polycells too.  On a
contractible polycell it coincides with "x is a strict local maximum".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import Polycell, PolycellError, PreconditionError
from .tilings import Tiling, heights_of, tiling_from_heights


class FlipError(PolycellError):
    pass


@dataclass
class FlipGraph:
    tilings: list[Tiling]
    edges: set[tuple[int, int]] = field(default_factory=set)
    # vertex flipped along each edge
    labels: dict[tuple[int, int], int] = field(default_factory=dict)

    def index(self) -> dict[Tiling, int]:
        return {t: i for i, t in enumerate(self.tilings)}

    def components(self) -> list[list[int]]:
        parent = list(range(len(self.tilings)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, list[int]] = {}
        for i in range(len(self.tilings)):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())

    def to_dot(self) -> str:
        lines = ["digraph flips {"]
        lines += [f"  {i};" for i in range(len(self.tilings))]
        lines += [f'  {a} -> {b} [label="{self.labels[a, b]}"];' for a, b in sorted(self.edges)]
        lines.append("}")
        return "\n".join(lines) + "\n"


# -- local moves ---------------------------------------------------------------


def can_flip_down(P: Polycell, Q: Tiling, x: int) -> bool:
    if x in P.boundary_vertices:
        return False
    edges = Q.edges
    return all(e in edges for e in P.out_edges[x]) and not any(e in edges for e in P.in_edges[x])


def can_flip_up(P: Polycell, Q: Tiling, x: int) -> bool:
    if x in P.boundary_vertices:
        return False
    edges = Q.edges
    return all(e in edges for e in P.in_edges[x]) and not any(e in edges for e in P.out_edges[x])


def maximal_vertices(P: Polycell, Q: Tiling) -> list[int]:
    """Interior vertices around which a flip is possible."""
    return [x for x in P.interior_vertices if can_flip_down(P, Q, x)]


def minimal_vertices(P: Polycell, Q: Tiling) -> list[int]:
    """Interior vertices around which a reverse flip is possible."""
    return [x for x in P.interior_vertices if can_flip_up(P, Q, x)]


def local_maxima(P: Polycell, heights: Sequence[int]) -> list[int]:
    """Interior strict local maxima of a height function."""
    return [
        x
        for x in P.interior_vertices
        if all(heights[w] < heights[x] for w, _, _ in P.incident[x])
    ]


def flip(P: Polycell, Q: Tiling, x: int) -> Tiling:
    if not can_flip_down(P, Q, x):
        raise FlipError(f"vertex {x} is not a maximal interior vertex")
    return Tiling((Q.edges - set(P.out_edges[x])) | set(P.in_edges[x]))


def flip_up(P: Polycell, Q: Tiling, x: int) -> Tiling:
    if not can_flip_up(P, Q, x):
        raise FlipError(f"vertex {x} is not a minimal interior vertex")
    return Tiling((Q.edges - set(P.in_edges[x])) | set(P.out_edges[x]))


def flip_terminal(P: Polycell, Q: Tiling, descending: bool = False) -> Tiling:
    """Flip at maximal vertices until none remain.

    Picks the smallest (or largest) maximal vertex each round; the result
    does not depend on that choice.
    """
    while True:
        candidates = maximal_vertices(P, Q)
        if not candidates:
            return Q
        Q = flip(P, Q, candidates[-1] if descending else candidates[0])


def reverse_terminal(P: Polycell, Q: Tiling) -> Tiling:
    while True:
        candidates = minimal_vertices(P, Q)
        if not candidates:
            return Q
        Q = flip_up(P, Q, candidates[0])


def is_flip_terminal(P: Polycell, Q: Tiling) -> bool:
    return not maximal_vertices(P, Q)


# -- graphs on tilings -----------------------------------------------------------


def flip_graph(P: Polycell, all_tilings: Iterable[Tiling]) -> FlipGraph:
    graph = FlipGraph(sorted(all_tilings))
    index = graph.index()
    for i, Q in enumerate(graph.tilings):
        for x in maximal_vertices(P, Q):
            j = index.get(flip(P, Q, x))
            if j is None:
                raise PolycellError("tiling set is not closed under flips")
            graph.edges.add((i, j))
            graph.labels[i, j] = x
    return graph


def count_components(P: Polycell, all_tilings: Iterable[Tiling]) -> int:
    """Number of flip-terminal tilings; equals the flip-graph component count."""
    return sum(1 for Q in all_tilings if is_flip_terminal(P, Q))


# -- lattice operations ----------------------------------------------------------


def _combine(P: Polycell, Q1: Tiling, Q2: Tiling, pick) -> Tiling:
    P.require_contractible()
    h1, h2 = heights_of(P, Q1), heights_of(P, Q2)
    merged = [pick(a, b) for a, b in zip(h1, h2)]
    try:
        return tiling_from_heights(P, merged)
    except PolycellError:
        raise PreconditionError("tilings are not in a common component") from None


def meet(P: Polycell, Q1: Tiling, Q2: Tiling) -> Tiling:
    """Tiling with the pointwise minimum of the two height functions."""
    return _combine(P, Q1, Q2, min)


def join(P: Polycell, Q1: Tiling, Q2: Tiling) -> Tiling:
    """Tiling with the pointwise maximum of the two height functions."""
    return _combine(P, Q1, Q2, max)


# -- edge firing game --------------------------------------------------------------


def efg_orientation(P: Polycell, Q: Tiling) -> dict[int, tuple[int, int]]:
    """Orient each edge (keyed by id) from its lower to its higher endpoint."""
    h = heights_of(P, Q)
    out = {}
    for e, (a, b) in enumerate(P.graph.edges):
        out[e] = (a, b) if h[b] > h[a] else (b, a)
    return out


def efg_sinks(P: Polycell, orientation: dict[int, tuple[int, int]], interior_only: bool = True) -> list[int]:
    """Vertices other than nu whose edges all point towards them."""
    has_out = {src for src, _ in orientation.values()}
    skip = P.boundary_vertices if interior_only else {P.nu}
    return [v for v in P.graph.vertices if v not in has_out and v not in skip]


def efg_fire(P: Polycell, orientation: dict[int, tuple[int, int]], v: int) -> dict[int, tuple[int, int]]:
    """Reverse every edge of the sink v."""
    if v == P.nu or any(src == v for src, _ in orientation.values()):
        raise FlipError(f"vertex {v} is not a sink")
    out = dict(orientation)
    for _, e, _ in P.incident[v]:
        a, b = out[e]
        out[e] = (b, a)
    return out
