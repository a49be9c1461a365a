"""Command-line interface.

Exit codes: 0 success, 1 usage or format error, 2 untilable.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core import PolycellError
from .encoders import PolyominoRegion, encode_polyomino, encode_rhombus, parse_points
from .flips import count_components, flip_graph
from .formats import format_edges, read_polycell, read_tiling, write_polycell
from .oracle import DEFAULT_MAX_CELLS, brute_force_tilings
from .render import render_svg
from .sampler import SamplerConfig, sample_many
from .tilability import Untilable, maximal_tiling
from .tilings import height_function

EXIT_OK, EXIT_ERROR, EXIT_UNTILABLE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(path: str):
    return read_polycell(Path(path).read_text(encoding="utf-8"))


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8", newline="\n")


def cmd_validate(args, out) -> int:
    P = _load(args.file)
    report = P.report
    for v in report.violations:
        print(f"violation: {v}", file=out)
    valid = report.ok
    balanced = valid and P.balanced
    contractible = valid and P.contractible
    yn = lambda b: "yes" if b else "no"
    print(f"valid: {yn(valid)}", file=out)
    print(f"balanced boundary: {yn(balanced)}", file=out)
    print(f"contractible: {yn(contractible)}", file=out)
    if valid:
        print(f"full: {yn(P.full)}", file=out)
        print(f"cells span integer cycles: {yn(report.integer_span)}", file=out)
    return EXIT_OK if valid and balanced and contractible else EXIT_ERROR


def cmd_tile(args, out) -> int:
    P = _load(args.file)
    try:
        Q = maximal_tiling(P)
    except Untilable as exc:
        print(f"UNTILABLE {exc.reason}", file=out)
        return EXIT_UNTILABLE
    print(format_edges(Q), file=out)
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    P = _load(args.file)
    found = brute_force_tilings(P, args.max_cells)
    print(len(found), file=out)
    for Q in found:
        print(format_edges(Q), file=out)
    return EXIT_OK


def cmd_components(args, out) -> int:
    P = _load(args.file)
    print(count_components(P, brute_force_tilings(P, args.max_cells)), file=out)
    return EXIT_OK


def cmd_heights(args, out) -> int:
    P = _load(args.file)
    Q = read_tiling(Path(args.tiling).read_text(encoding="utf-8"))
    P.require_contractible()
    for v, h in sorted(height_function(P, Q).heights.items()):
        print(f"{v} {h}", file=out)
    return EXIT_OK


def cmd_sample(args, out) -> int:
    P = _load(args.file)
    config = SamplerConfig(args.seed, args.method, args.max_doubling)
    try:
        found = sample_many(P, config, args.n, workers=args.workers)
    except Untilable as exc:
        print(f"UNTILABLE {exc.reason}", file=out)
        return EXIT_UNTILABLE
    for Q in found:
        print(format_edges(Q), file=out)
    return EXIT_OK


def cmd_flipgraph(args, out) -> int:
    P = _load(args.file)
    graph = flip_graph(P, brute_force_tilings(P, args.max_cells))
    _write(args.dot, graph.to_dot())
    print(f"{len(graph.tilings)} nodes, {len(graph.edges)} edges", file=out)
    return EXIT_OK


def cmd_encode(args, out) -> int:
    text = Path(args.input).read_text(encoding="utf-8")
    if args.kind == "polyomino":
        P = encode_polyomino(PolyominoRegion.from_ascii(text))
    else:
        region = parse_points(text)
        if args.d is not None and args.d != region.d:
            raise UsageError(f"--d {args.d} does not match the file's dimension {region.d}")
        P = encode_rhombus(region, max_dimension=args.max_dimension)
    text = write_polycell(P)
    if args.output:
        _write(args.output, text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_render(args, out) -> int:
    P = _load(args.file)
    Q = read_tiling(Path(args.tiling).read_text(encoding="utf-8"))
    _write(args.svg, render_svg(P, Q))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polycell", description="Tilings of polycells.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check structure, balance and contractibility")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("tile", help="compute the flip-terminal tiling")
    p.add_argument("file")
    p.set_defaults(func=cmd_tile)

    for name, func, helptext in (
        ("enumerate", cmd_enumerate, "list every tiling by exhaustive search"),
        ("components", cmd_components, "count flip-graph components"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("file")
        p.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS)
        p.set_defaults(func=func)

    p = sub.add_parser("heights", help="print the height function of a tiling")
    p.add_argument("file")
    p.add_argument("tiling")
    p.set_defaults(func=cmd_heights)

    p = sub.add_parser("sample", help="draw uniform random tilings")
    p.add_argument("file")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--method", choices=("exact", "cftp"), default="cftp")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--max-doubling", type=int, default=30)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("flipgraph", help="write the flip graph in DOT format")
    p.add_argument("file")
    p.add_argument("--dot", required=True)
    p.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS)
    p.set_defaults(func=cmd_flipgraph)

    p = sub.add_parser("encode", help="encode a region as a polycell")
    p.add_argument("kind", choices=("polyomino", "rhombus"))
    p.add_argument("input")
    p.add_argument("--d", type=int)
    p.add_argument("--max-dimension", type=int, default=6)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("render", help="draw a 2D domino or lozenge tiling as SVG")
    p.add_argument("file")
    p.add_argument("tiling")
    p.add_argument("--svg", required=True)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        return args.func(args, out)
    except (PolycellError, UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
