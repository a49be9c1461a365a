"""Text formats for polycells and tilings.

Polycell file (``#`` starts a comment)::

    POLYCELL 1
    k 4
    vertex 0
    edge 0 0 1
    cell 0 0 1 2 3
    boundary 0 1 2 3
    nu 0

Encoders additionally write ``geometry <kind> <dim>`` and one
``coord <vertex> <x1> .. <xd>`` line per vertex; both are optional.
"""

from __future__ import annotations

from .core import Cell, DirectedGraph, Embedding, Polycell, PolycellError
from .tilings import Tiling


class FormatError(PolycellError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].split()
        if body:
            yield n, body


def _ints(tokens, line):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"expected integers, got {' '.join(tokens)!r}", line) from None


def _dense(ids: dict[int, int], what: str) -> None:
    for expect, (got, line) in enumerate(sorted(ids.items())):
        if got != expect:
            raise FormatError(f"{what} ids must be dense from 0 (missing {expect})", line)


def read_polycell(text: str) -> Polycell:
    lines = list(_lines(text))
    if not lines or lines[0][1] != ["POLYCELL", "1"]:
        raise FormatError("expected header 'POLYCELL 1'", lines[0][0] if lines else 1)
    k = nu = None
    vertices: dict[int, int] = {}
    edges: dict[int, tuple[int, int, int]] = {}
    cells: dict[int, tuple[list[int], int]] = {}
    boundary: list[int] | None = None
    geometry = None
    coords: dict[int, tuple[int, ...]] = {}
    for n, tok in lines[1:]:
        kw, args = tok[0], tok[1:]
        if kw == "k" and len(args) == 1:
            (k,) = _ints(args, n)
        elif kw == "vertex" and len(args) == 1:
            (v,) = _ints(args, n)
            if v in vertices:
                raise FormatError(f"duplicate vertex {v}", n)
            vertices[v] = n
        elif kw == "edge" and len(args) == 3:
            e, a, b = _ints(args, n)
            if e in edges:
                raise FormatError(f"duplicate edge {e}", n)
            edges[e] = (a, b, n)
        elif kw == "cell" and len(args) >= 2:
            c, *es = _ints(args, n)
            if c in cells:
                raise FormatError(f"duplicate cell {c}", n)
            cells[c] = (es, n)
        elif kw == "boundary":
            if boundary is not None:
                raise FormatError("duplicate boundary line", n)
            boundary = _ints(args, n)
            boundary_line = n
        elif kw == "nu" and len(args) == 1:
            (nu,) = _ints(args, n)
            nu_line = n
        elif kw == "geometry" and len(args) == 2:
            geometry = (args[0], _ints(args[1:], n)[0])
        elif kw == "coord" and len(args) >= 2:
            v, *xs = _ints(args, n)
            coords[v] = tuple(xs)
        else:
            raise FormatError(f"syntax error: {' '.join(tok)!r}", n)
    if k is None:
        raise FormatError("missing 'k' line")
    if boundary is None:
        raise FormatError("missing 'boundary' line")
    _dense({v: ln for v, ln in vertices.items()}, "vertex")
    _dense({e: ln for e, (_, _, ln) in edges.items()}, "edge")
    _dense({c: ln for c, (_, ln) in cells.items()}, "cell")
    for e, (a, b, ln) in edges.items():
        for v in (a, b):
            if v not in vertices:
                raise FormatError(f"edge {e} references unknown vertex {v}", ln)
    for c, (es, ln) in cells.items():
        for e in es:
            if e not in edges:
                raise FormatError(f"cell {c} references unknown edge {e}", ln)
        if len(es) != k:
            raise FormatError(f"cell {c} has {len(es)} edges, expected k = {k}", ln)
    for e in boundary:
        if e not in edges:
            raise FormatError(f"boundary references unknown edge {e}", boundary_line)
    if len(set(boundary)) != len(boundary):
        raise FormatError("boundary lists an edge twice", boundary_line)
    if nu is not None and nu not in vertices:
        raise FormatError(f"nu references unknown vertex {nu}", nu_line)
    embedding = None
    if geometry is not None:
        if sorted(coords) != sorted(vertices):
            raise FormatError("geometry needs one coord line per vertex")
        if any(len(x) != geometry[1] for x in coords.values()):
            raise FormatError("coord dimension does not match geometry")
        embedding = Embedding(geometry[0], geometry[1], tuple(coords[v] for v in sorted(coords)))
    return Polycell(
        graph=DirectedGraph(
            tuple(sorted(vertices)), tuple(edges[e][:2] for e in sorted(edges))
        ),
        cells=tuple(Cell(tuple(cells[c][0])) for c in sorted(cells)),
        k=k,
        boundary=frozenset(boundary),
        nu=nu,
        embedding=embedding,
    )


def write_polycell(P: Polycell) -> str:
    out = ["POLYCELL 1", f"k {P.k}"]
    out += [f"vertex {v}" for v in P.graph.vertices]
    out += [f"edge {e} {a} {b}" for e, (a, b) in enumerate(P.graph.edges)]
    out += [f"cell {c} " + " ".join(map(str, cell.edges)) for c, cell in enumerate(P.cells)]
    out.append(" ".join(["boundary", *map(str, sorted(P.boundary))]))
    if P.nu is not None:
        out.append(f"nu {P.nu}")
    if P.embedding is not None:
        emb = P.embedding
        out.append(f"geometry {emb.kind} {emb.dim}")
        out += [f"coord {v} " + " ".join(map(str, x)) for v, x in enumerate(emb.coords)]
    return "\n".join(out) + "\n"


def read_tiling(text: str) -> Tiling:
    lines = list(_lines(text))
    if not lines or lines[0][1] != ["TILING", "1"]:
        raise FormatError("expected header 'TILING 1'", lines[0][0] if lines else 1)
    edges = None
    for n, tok in lines[1:]:
        if tok[0] != "edges" or edges is not None:
            raise FormatError(f"syntax error: {' '.join(tok)!r}", n)
        edges = _ints(tok[1:], n)
    if edges is None:
        raise FormatError("missing 'edges' line")
    return Tiling(frozenset(edges))


def format_edges(Q: Tiling) -> str:
    return " ".join(["edges", *map(str, Q.key)])


def write_tiling(Q: Tiling) -> str:
    return f"TILING 1\n{format_edges(Q)}\n"
