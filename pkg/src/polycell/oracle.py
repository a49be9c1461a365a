"""Brute-force enumeration of tilings, used as ground truth."""

from __future__ import annotations

import itertools

from .core import Polycell, PolycellError
from .tilings import Tiling, is_valid_tiling

DEFAULT_MAX_CELLS = 64
MAX_SUBSET_EDGES = 20


class OracleLimitError(PolycellError):
    pass


def brute_force_tilings(P: Polycell, max_cells: int = DEFAULT_MAX_CELLS) -> list[Tiling]:
    """All tilings of P by backtracking, sorted by edge-id lists.

    Branches on the interior edges of the lowest uncovered cell; choosing
    edge e covers every cell that contains e.
    """
    P.require_valid()
    if len(P.cells) > max_cells:
        raise OracleLimitError(f"{len(P.cells)} cells exceed the oracle cap of {max_cells}")
    candidates = [
        [e for e in cell.edges if e not in P.boundary] for cell in P.cells
    ]
    covered = [False] * len(P.cells)
    chosen: list[int] = []
    found: list[Tiling] = []

    def search(start: int) -> None:
        c = start
        while c < len(covered) and covered[c]:
            c += 1
        if c == len(covered):
            found.append(Tiling(frozenset(chosen)))
            return
        for e in candidates[c]:
            tile = P.edge_cells[e]
            if any(covered[t] for t in tile):
                continue
            for t in tile:
                covered[t] = True
            chosen.append(e)
            search(c + 1)
            chosen.pop()
            for t in tile:
                covered[t] = False

    search(0)
    return sorted(found)


def subset_filter_tilings(P: Polycell, max_edges: int = MAX_SUBSET_EDGES) -> list[Tiling]:
    """All tilings by filtering every subset of interior edges."""
    P.require_valid()
    interior = P.interior_edges
    if len(interior) > max_edges:
        raise OracleLimitError(f"{len(interior)} interior edges exceed {max_edges}")
    found = []
    for r in range(len(interior) + 1):
        for subset in itertools.combinations(interior, r):
            Q = Tiling(frozenset(subset))
            if is_valid_tiling(P, Q):
                found.append(Q)
    return sorted(found)
