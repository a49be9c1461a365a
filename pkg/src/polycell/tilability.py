"""Polynomial-time tilability for full k-regular contractible polycells.

The loop peels tiles off a shrinking sub-polycell.  With ``side="bottom"``
it repeatedly takes the frontier vertices of greatest height and makes all
their outgoing edges tiling edges; this yields the flip-terminal tiling
(pointwise-minimal heights).  ``side="top"`` is the mirror image (lowest
frontier vertices, incoming edges) and yields the tiling with pointwise
maximal heights, the one from which no reverse flip is possible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .core import Polycell, PolycellError, PreconditionError
from .tilings import Tiling, height_on_boundary


class Untilable(PolycellError):
    """P admits no tiling; ``witness`` names the first inconsistency met."""

    def __init__(self, reason: str, witness: tuple | None = None):
        super().__init__(reason)
        self.reason = reason
        self.witness = witness


@dataclass
class AlgorithmRun:
    tiling: Tiling
    tension: list[int]
    heights: list[int]
    # tiling edges placed by each iteration, in placement order
    iterations: list[list[int]] = field(default_factory=list)
    operations: int = 0


def check_domain(P: Polycell) -> None:
    P.require_valid()
    if not P.cells:
        return
    if not P.full:
        raise PreconditionError("polycell is not full")
    if not P.cells_span_cycles:
        raise PreconditionError("polycell is not contractible: cells do not span its cycles")


def run_algorithm(P: Polycell, side: str = "bottom", descending: bool = False) -> AlgorithmRun:
    """Run the peeling loop; ``descending`` reverses frontier tie-breaking."""
    if side not in ("bottom", "top"):
        raise ValueError(f"unknown side {side!r}")
    check_domain(P)
    if not P.cells:
        return AlgorithmRun(Tiling(frozenset()), [], [])
    if not P.balanced:
        # Cells span every cycle, so a tiling would force zero boundary flux.
        raise Untilable("unbalanced boundary")

    neg = 1 - P.k
    tension: list[int | None] = [None] * P.n_edges
    height: list[int | None] = [None] * P.n_vertices
    for e in P.boundary:
        tension[e] = 1
    for v, h in height_on_boundary(P).heights.items():
        height[v] = h
    alive = [True] * len(P.cells)
    alive_through = [len(P.edge_cells[e]) for e in range(P.n_edges)]
    vertex_alive = [0] * P.n_vertices
    for cell in P.cells:
        for e in cell.edges:
            vertex_alive[P.graph.edges[e][0]] += 1
    run = AlgorithmRun(Tiling(frozenset()), [], [])
    ops = 0

    def set_height(v: int, value: int, e: int, queue) -> None:
        nonlocal ops
        ops += 1
        if height[v] is None:
            height[v] = value
            queue.append(v)
        elif height[v] != value:
            raise Untilable(f"conflicting heights at vertex {v}", ("vertex", v, e))

    def propagate(new_edges) -> None:
        queue = deque()
        for e in new_edges:
            a, b = P.graph.edges[e]
            if height[a] is not None:
                set_height(b, height[a] + tension[e], e, queue)
            elif height[b] is not None:
                set_height(a, height[b] - tension[e], e, queue)
        while queue:
            v = queue.popleft()
            for w, e, sign in P.incident[v]:
                if tension[e] is not None:
                    set_height(w, height[v] + sign * tension[e], e, queue)

    while any(alive):
        frontier = [v for v in range(P.n_vertices) if vertex_alive[v] and height[v] is not None]
        if not frontier:
            raise Untilable("no frontier vertex left", None)
        target = (max if side == "bottom" else min)(height[v] for v in frontier)
        chosen = sorted((v for v in frontier if height[v] == target), reverse=descending)
        placed = []
        for v in chosen:
            incident = P.out_edges[v] if side == "bottom" else P.in_edges[v]
            for e in incident:
                if alive_through[e] == 0:
                    continue  # edge no longer belongs to the sub-polycell
                newly = []
                ops += 1
                if tension[e] == 1:
                    raise Untilable(f"edge {e} is forced both ways", ("edge", e))
                if tension[e] is None:
                    tension[e] = neg
                    newly.append(e)
                    placed.append(e)
                for c in P.edge_cells[e]:
                    for f in P.cells[c].edges:
                        ops += 1
                        if f == e:
                            continue
                        if tension[f] is None:
                            tension[f] = 1
                            newly.append(f)
                        elif tension[f] == neg:
                            raise Untilable(f"cell {c} gets two tiling edges", ("cell", c))
                propagate(newly)
        for c, cell in enumerate(P.cells):
            if alive[c] and any(tension[e] == neg for e in cell.edges):
                alive[c] = False
                for e in cell.edges:
                    alive_through[e] -= 1
                    vertex_alive[P.graph.edges[e][0]] -= 1
            elif alive[c] and all(tension[e] == 1 for e in cell.edges):
                raise Untilable(f"cell {c} has no assignable tiling edge", ("cell", c))
        if not placed:
            raise Untilable("no tile could be placed", None)
        run.iterations.append(placed)

    run.tension = [t for t in tension]
    run.heights = [h for h in height]
    run.tiling = Tiling(frozenset(e for e, t in enumerate(tension) if t == neg))
    run.operations = ops
    return run


def maximal_tiling(P: Polycell, descending: bool = False) -> Tiling:
    """The unique flip-terminal tiling of a full contractible polycell.

    Raises :class:`Untilable` when P has no tiling and
    :class:`PreconditionError` when P is outside the algorithm's domain.
    """
    return run_algorithm(P, "bottom", descending).tiling


def top_tiling(P: Polycell, descending: bool = False) -> Tiling:
    """The tiling with pointwise maximal heights (no reverse flip possible)."""
    return run_algorithm(P, "top", descending).tiling


def is_tilable(P: Polycell) -> bool:
    try:
        maximal_tiling(P)
    except Untilable:
        return False
    return True
