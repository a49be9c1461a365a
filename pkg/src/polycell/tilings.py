"""Tilings, their tensions, and height functions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .core import (
    Flow,
    NotATensionError,
    Polycell,
    PolycellError,
    PreconditionError,
    boundary_adjacency,
    propagate_potential,
)


class InvalidTilingError(PolycellError):
    pass


@dataclass(frozen=True)
class Tiling:
    """A tiling, given by its tiling edges (one per cell)."""

    edges: frozenset[int]

    @classmethod
    def of(cls, edges: Iterable[int]) -> "Tiling":
        return cls(frozenset(edges))

    @property
    def key(self) -> tuple[int, ...]:
        return tuple(sorted(self.edges))

    def __len__(self) -> int:
        return len(self.edges)

    def __lt__(self, other: "Tiling") -> bool:
        return self.key < other.key


@dataclass(frozen=True)
class HeightFunction:
    heights: Mapping[int, int]
    base: int | None

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(self.heights)

    def __getitem__(self, v: int) -> int:
        return self.heights[v]

    def restrict(self, vertices: Iterable[int]) -> "HeightFunction":
        return HeightFunction({v: self.heights[v] for v in sorted(vertices)}, self.base)

    def as_list(self) -> list[int]:
        return [self.heights[v] for v in range(len(self.heights))]


def tiling_violation(P: Polycell, Q: Tiling) -> str | None:
    """Describe why ``Q`` is not a tiling of ``P`` (None if it is)."""
    for e in sorted(Q.edges):
        if not 0 <= e < P.n_edges:
            return f"unknown edge {e}"
        if e in P.boundary:
            return f"tiling edge {e} is on the boundary"
    for c, cell in enumerate(P.cells):
        count = sum(1 for e in cell.edges if e in Q.edges)
        if count != 1:
            return f"cell {c} contains {count} tiling edges"
    return None


def is_valid_tiling(P: Polycell, Q: Tiling) -> bool:
    return tiling_violation(P, Q) is None


def tiling_to_tension(P: Polycell, Q: Tiling) -> tuple[int, ...]:
    """Value ``1 - k`` on tiling edges and 1 elsewhere."""
    problem = tiling_violation(P, Q)
    if problem:
        raise InvalidTilingError(problem)
    neg = 1 - P.k
    return tuple(neg if e in Q.edges else 1 for e in range(P.n_edges))


def tension_to_tiling(P: Polycell, C: Flow) -> Tiling:
    """Inverse of :func:`tiling_to_tension`.

    Checks that C is 1 on the boundary, takes values in {1-k, 1}, and has
    zero flux around every cell.  On a contractible polycell the last
    condition is exactly the tension condition; on other polycells the
    correspondence still holds between tilings and such cell-balanced flows.
    """
    P.require_valid()
    neg = 1 - P.k
    for e in sorted(P.boundary):
        if C[e] != 1:
            raise PreconditionError(f"boundary edge {e} has value {C[e]}, expected 1")
    for e in range(P.n_edges):
        if C[e] not in (1, neg):
            raise PreconditionError(f"edge {e} has value {C[e]}, expected 1 or {neg}")
    for c, cell in enumerate(P.cells):
        negatives = [e for e in cell.edges if C[e] == neg]
        if not negatives:
            raise NotATensionError(f"cell without negative edge: cell {c}")
        if len(negatives) > 1:
            raise NotATensionError(
                f"not a tension: cell {c} has nonzero flux (negative edges {negatives})"
            )
    return Tiling(frozenset(e for e in range(P.n_edges) if C[e] == neg))


def _potential(P: Polycell, C: Flow) -> list[int]:
    if P.nu is None:
        return []
    pot, conflict = propagate_potential(P.incident, C, P.nu)
    if conflict is not None:
        e, v = conflict
        raise NotATensionError(f"flow is not a tension (edge {e}, vertex {v})")
    return [pot[v] for v in range(P.n_vertices)]


def heights_of(P: Polycell, Q: Tiling) -> list[int]:
    """Height function of Q as a list indexed by vertex."""
    return _potential(P, tiling_to_tension(P, Q))


def height_function(P: Polycell, Q: Tiling) -> HeightFunction:
    P.require_valid()
    h = heights_of(P, Q)
    return HeightFunction(dict(enumerate(h)), P.nu)


def height_on_boundary(P: Polycell) -> HeightFunction:
    """Boundary heights from the boundary orientation alone."""
    P.require_valid()
    if not P.cells:
        return HeightFunction({}, None)
    if not P.balanced:
        raise PreconditionError("polycell does not have a balanced boundary")
    if not P.full:
        raise PreconditionError("polycell is not full")
    adj = boundary_adjacency(P)
    pot, _ = propagate_potential(adj, [1] * P.n_edges, P.nu)
    return HeightFunction(dict(sorted(pot.items())), P.nu)


def tiling_from_heights(P: Polycell, heights) -> Tiling:
    """Read edge differences of ``heights`` as a flow and convert it to a tiling."""
    C = [heights[b] - heights[a] for a, b in P.graph.edges]
    return tension_to_tiling(P, C)


__all__ = [
    "HeightFunction",
    "InvalidTilingError",
    "Tiling",
    "height_function",
    "height_on_boundary",
    "heights_of",
    "is_valid_tiling",
    "tension_to_tiling",
    "tiling_from_heights",
    "tiling_to_tension",
    "tiling_violation",
]
