"""Static SVG pictures of domino and lozenge tilings."""

from __future__ import annotations

import math

from .core import Polycell, PolycellError
from .encoders import (
    PolyominoRegion,
    decode_dominoes,
    decode_rhombus,
    domino_squares,
    placement_simplices,
    region_of,
    simplex_cycle,
)
from .tilings import Tiling

SCALE = 40
COLORS = {"H": "#e8a33d", "V": "#4f86c6", 1: "#e8a33d", 2: "#4f86c6", 3: "#7fbf7f"}


def _lozenge_xy(p) -> tuple[float, float]:
    x, y = p
    return x - 0.5 * y, y * math.sqrt(3) / 2


def _polygons(P: Polycell, Q: Tiling):
    emb = P.embedding
    if emb is None or emb.dim != 2:
        raise PolycellError("only two-dimensional encodings can be rendered")
    R = region_of(P)
    if isinstance(R, PolyominoRegion):
        for p in decode_dominoes(R, P, Q):
            (c, r), (c2, r2) = domino_squares(p)
            yield p.kind, [(c, r), (c2 + 1, r), (c2 + 1, r2 + 1), (c, r2 + 1)]
    else:
        for p in decode_rhombus(R, P, Q):
            pts = {v for x, perm in placement_simplices(2, p) for v in simplex_cycle(x, perm)}
            xy = [_lozenge_xy(v) for v in pts]
            cx = sum(x for x, _ in xy) / len(xy)
            cy = sum(y for _, y in xy) / len(xy)
            xy.sort(key=lambda q: math.atan2(q[1] - cy, q[0] - cx))
            yield p.kind, xy


def render_svg(P: Polycell, Q: Tiling) -> str:
    polys = list(_polygons(P, Q))
    xs = [x for _, poly in polys for x, _ in poly]
    ys = [y for _, poly in polys for _, y in poly]
    x0, y1 = min(xs), max(ys)
    width = (max(xs) - x0) * SCALE + 2 * SCALE
    height = (y1 - min(ys)) * SCALE + 2 * SCALE

    def fmt(x, y):
        # flip y so that the picture is upright
        return f"{(x - x0) * SCALE + SCALE:.2f},{(y1 - y) * SCALE + SCALE:.2f}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}">'
    ]
    for kind, poly in polys:
        points = " ".join(fmt(x, y) for x, y in poly)
        out.append(
            f'  <polygon points="{points}" fill="{COLORS.get(kind, "#cccccc")}" '
            f'stroke="black" stroke-width="2"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
