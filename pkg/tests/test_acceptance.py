"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The lines are also collected into the terminal summary of a pytest run.
"""

import io
import itertools
from collections import Counter

from scipy.stats import chisquare

from conftest import (
    ACCEPTANCE,
    ACCEPTANCE_RESULTS,
    FIXTURES,
    GOLDEN,
    POLYOMINOES,
    RHOMBI,
    polycell,
    region,
    tilings,
)
from polycell.cli import EXIT_ERROR, EXIT_OK, EXIT_UNTILABLE, main
from polycell.core import DirectedGraph, Polycell, PreconditionError
from polycell.encoders import (
    PolyominoRegion,
    connected_regions,
    decode_dominoes,
    decode_rhombus,
    domino_squares,
    encode_polyomino,
    placement_simplices,
)
from polycell.flips import (
    efg_orientation,
    efg_sinks,
    flip,
    flip_graph,
    is_flip_terminal,
    join,
    maximal_vertices,
    meet,
)
from polycell.formats import format_edges, read_polycell, write_polycell
from polycell.oracle import brute_force_tilings, subset_filter_tilings
from polycell.sampler import CoupledChains, SamplerConfig, sample_many
from polycell.tilability import Untilable, maximal_tiling
from polycell.tilings import heights_of, tension_to_tiling, tiling_to_tension
from reference import domino_count, macmahon

POLYCELLS = GOLDEN / "polycells"


def record(number, title, check):
    try:
        detail = check()
    except Exception as exc:
        line = (number, False, title, str(exc) or type(exc).__name__)
        ACCEPTANCE_RESULTS.append(line)
        print(f"criterion {number} FAIL: {title} [{line[3]}]")
        raise
    ACCEPTANCE_RESULTS.append((number, True, title, detail))
    print(f"criterion {number} PASS: {title} [{detail}]")


# 1 -----------------------------------------------------------------------------


def check_bijection():
    total = 0
    for name in ACCEPTANCE:
        P = polycell(name)
        for Q in tilings(name):
            C = tiling_to_tension(P, Q)
            assert tension_to_tiling(P, C) == Q, f"{name}: round trip changed a tiling"
            assert tiling_to_tension(P, tension_to_tiling(P, C)) == C, name
            total += 1
    return f"{total} tilings over {len(ACCEPTANCE)} fixtures"


def test_criterion_1_bijection():
    record(1, "tiling <-> tension round trip", check_bijection)


# 2 -----------------------------------------------------------------------------

GOLDEN_COUNTS = {
    "strip_2x1": 1,
    "strip_2x2": 2,
    "strip_2x3": 3,
    "strip_2x4": 5,
    "strip_2x5": 8,
    "strip_2x6": 13,
    "square_4x4": 36,
    "aztec_2": 8,
    "hexagon_2": 20,
    "ring": 2,
}


def check_counts():
    subset_checked = []
    for name, expected in GOLDEN_COUNTS.items():
        P = polycell(name)
        found = brute_force_tilings(P)
        assert len(found) == expected, f"{name}: backtracking gives {len(found)}, expected {expected}"
        if len(P.interior_edges) <= 17:
            assert subset_filter_tilings(P) == found, f"{name}: subset filter disagrees"
            subset_checked.append(name)
        if name in POLYOMINOES:
            assert domino_count(region(name).occupied) == expected, f"{name}: transfer matrix disagrees"
    assert macmahon(2, 2, 2) == GOLDEN_COUNTS["hexagon_2"]
    return f"{len(GOLDEN_COUNTS)} counts; subset filter on {len(subset_checked)} tiny cases"


def test_criterion_2_golden_counts():
    record(2, "oracle golden counts", check_counts)


# 3 -----------------------------------------------------------------------------


def check_components():
    for name in ACCEPTANCE:
        P = polycell(name)
        terminals = sum(1 for Q in tilings(name) if is_flip_terminal(P, Q))
        components = len(flip_graph(P, tilings(name)).components())
        assert terminals == components, f"{name}: {terminals} terminal tilings, {components} components"
        expected = 2 if name == "ring" else 1
        assert components == expected, f"{name}: {components} components, expected {expected}"
    return f"{len(ACCEPTANCE)} fixtures; ring 2, full fixtures 1"


def test_criterion_3_components():
    record(3, "flip-terminal count = component count", check_components)


# 4 -----------------------------------------------------------------------------


def algorithm_answer(P):
    """True/False for tilable/untilable, None when P is outside the domain."""
    try:
        maximal_tiling(P)
    except Untilable:
        return False
    except PreconditionError:
        return None
    return True


def check_algorithm():
    squares = [(c, r) for c in range(3) for r in range(3)]
    cache = {}
    outside = set()
    # mask 0 is the empty region, tiled by the empty tiling
    empty = Polycell(DirectedGraph((), ()), (), 4, frozenset(), None)
    assert algorithm_answer(empty) is True and not brute_force_tilings(empty)[0].edges
    for mask in range(1, 1 << 9):
        R = PolyominoRegion.of(s for i, s in enumerate(squares) if mask >> i & 1)
        for piece in connected_regions(R):
            if piece in cache:
                continue
            P = encode_polyomino(piece)
            oracle = bool(brute_force_tilings(P))
            answer = algorithm_answer(P)
            if answer is None:
                # documented domain: full and contractible polycells only
                assert not (P.full and P.cells_span_cycles), f"{piece.to_ascii()!r} rejected wrongly"
                outside.add(piece)
            else:
                assert answer == oracle, f"{piece.to_ascii()!r}: algorithm {answer}, oracle {oracle}"
            cache[piece] = answer
    for name in ACCEPTANCE:
        P = polycell(name)
        answer = algorithm_answer(P)
        if answer is None:
            assert not P.full, name
            continue
        assert answer == bool(tilings(name)), name
        low = [min(col) for col in zip(*(heights_of(P, Q) for Q in tilings(name)))]
        for descending in (False, True):
            assert heights_of(P, maximal_tiling(P, descending)) == low, f"{name}: not pointwise minimal"
    return (
        f"512 masks, {len(cache)} distinct pieces, {len(cache) - len(outside)} in domain agree; "
        f"{len(outside)} outside the full-contractible domain raise PreconditionError"
    )


def test_criterion_4_algorithm():
    record(4, "peeling algorithm vs oracle", check_algorithm)


# 5 -----------------------------------------------------------------------------


def check_lattice():
    checked = 0
    for name in ("strip_2x3", "strip_2x4", "hexagon_2"):
        P = polycell(name)
        g = flip_graph(P, tilings(name))
        H = {Q: heights_of(P, Q) for Q in g.tilings}
        for comp in g.components():
            T = [g.tilings[i] for i in comp]
            members = set(T)
            for a, b in itertools.product(T, repeat=2):
                m, j = meet(P, a, b), join(P, a, b)
                assert m in members and j in members, f"{name}: not closed"
                assert H[m] == [min(x, y) for x, y in zip(H[a], H[b])], name
                assert H[j] == [max(x, y) for x, y in zip(H[a], H[b])], name
                assert meet(P, a, join(P, a, b)) == a and join(P, a, meet(P, a, b)) == a, name
            for a, b, c in itertools.product(T, repeat=3):
                assert meet(P, a, join(P, b, c)) == join(P, meet(P, a, b), meet(P, a, c)), name
                assert join(P, a, meet(P, b, c)) == meet(P, join(P, a, b), join(P, a, c)), name
                checked += 1
    return f"{checked} triples"


def test_criterion_5_lattice():
    record(5, "distributive lattice laws", check_lattice)


# 6 -----------------------------------------------------------------------------


def check_flips():
    flips = 0
    for name in ACCEPTANCE:
        P = polycell(name)
        if not P.contractible:
            continue
        for Q in tilings(name):
            h = heights_of(P, Q)
            maxima = maximal_vertices(P, Q)
            assert efg_sinks(P, efg_orientation(P, Q)) == maxima, f"{name}: EFG sinks differ"
            for x in maxima:
                h2 = heights_of(P, flip(P, Q, x))
                diff = [(v, h2[v] - h[v]) for v in range(P.n_vertices) if h2[v] != h[v]]
                assert diff == [(x, -P.k)], f"{name}: flip at {x} changed {diff}"
                assert sum(h2) - sum(h) == -P.k, name
                flips += 1
            for x, y in itertools.combinations(maxima, 2):
                assert flip(P, flip(P, Q, x), y) == flip(P, flip(P, Q, y), x), f"{name}: {x}, {y}"
    return f"{flips} flips checked"


def test_criterion_6_flips():
    record(6, "flip mechanics and EFG sinks", check_flips)


# 7 -----------------------------------------------------------------------------


def check_sampler():
    pvalues = []
    for name in ("strip_2x2", "strip_2x3"):
        P = polycell(name)
        config = SamplerConfig(20241014)
        draws = sample_many(P, config, 30000)
        counts = Counter(draws)
        assert set(counts) <= set(tilings(name)), name
        p = chisquare([counts[Q] for Q in tilings(name)]).pvalue
        assert p > 0.01, f"{name}: chi-square p = {p:.4f}"
        pvalues.append(f"{name} p={p:.3f}")
        first = "\n".join(format_edges(Q) for Q in draws[:2000]).encode()
        again = "\n".join(format_edges(Q) for Q in sample_many(P, config, 2000)).encode()
        assert first == again, f"{name}: sample sequence not reproducible"
        chains = CoupledChains(P)
        hs = [heights_of(P, Q) for Q in tilings(name)]
        for a, b in itertools.product(hs, repeat=2):
            if not all(x <= y for x, y in zip(a, b)):
                continue
            for v in chains.interior:
                for up in (False, True):
                    lo, hi = list(a), list(b)
                    chains.apply(lo, v, up)
                    chains.apply(hi, v, up)
                    assert all(x <= y for x, y in zip(lo, hi)), f"{name}: coupling not monotone"
    return ", ".join(pvalues)


def test_criterion_7_sampler():
    record(7, "CFTP exactness", check_sampler)


# 8 -----------------------------------------------------------------------------


def check_encoders():
    for name in ACCEPTANCE:
        R, P = region(name), polycell(name)
        for Q in tilings(name):
            if name in RHOMBI:
                pieces = [placement_simplices(R.d, p) for p in decode_rhombus(R, P, Q)]
                assert sum(map(len, pieces)) == len(R.all_simplices()), name
                assert frozenset().union(*pieces) == R.all_simplices(), name
            else:
                covered = [s for p in decode_dominoes(R, P, Q) for s in domino_squares(p)]
                assert sorted(covered) == sorted(R.occupied), name
    P, R = polycell("strip_2x2"), region("strip_2x2")
    a, b = tilings("strip_2x2")
    (x,) = maximal_vertices(P, a) or maximal_vertices(P, b)
    top, bottom = (a, b) if maximal_vertices(P, a) else (b, a)
    before = [p.kind for p in decode_dominoes(R, P, top)]
    after = [p.kind for p in decode_dominoes(R, P, flip(P, top, x))]
    assert {tuple(before), tuple(after)} == {("H", "H"), ("V", "V")}, "flip is not a rotation"
    simply = [n for n in ACCEPTANCE if n != "ring"]
    for name in simply:
        assert polycell(name).contractible, f"{name} is not contractible"
    return f"{len(ACCEPTANCE)} fixtures decoded; {len(simply)} simply-connected or full encodings contractible"


def test_criterion_8_encoders():
    record(8, "encoders", check_encoders)


# 9 -----------------------------------------------------------------------------


def run_cli(*argv):
    out = io.StringIO()
    return main([str(a) for a in argv], out=out), out.getvalue()


def check_cli(tmp_path):
    for name in ACCEPTANCE:
        text = (POLYCELLS / f"{name}.polycell").read_bytes()
        assert write_polycell(read_polycell(text.decode())).encode() == text, f"{name}: round trip"
        kind = "rhombus" if name in RHOMBI else "polyomino"
        target = tmp_path / f"{name}.polycell"
        assert run_cli("encode", kind, FIXTURES / f"{name}.txt", "-o", target)[0] == EXIT_OK
        assert target.read_bytes() == text, f"{name}: encode output differs"
        for command in ("enumerate", "tile", "components"):
            code, out = run_cli(command, POLYCELLS / f"{name}.polycell")
            expected = (GOLDEN / f"{name}.{command}.txt").read_text()
            assert out == expected, f"{name}: {command} differs from golden"
            if command == "tile":
                assert code == (EXIT_ERROR if name == "ring" else EXIT_OK), f"{name}: tile exit {code}"
    assert run_cli("tile", POLYCELLS / "tromino_1x3.polycell") == (EXIT_UNTILABLE, "UNTILABLE unbalanced boundary\n")
    bad = tmp_path / "bad.polycell"
    bad.write_text("POLYCELL 2\n")
    assert run_cli("validate", bad)[0] == EXIT_ERROR
    return f"{len(ACCEPTANCE)} fixtures x 3 commands; exit codes 0/1/2"


def test_criterion_9_cli(tmp_path):
    record(9, "CLI formats, exit codes, golden files", lambda: check_cli(tmp_path))
