import io
import subprocess
import sys

import pytest

from conftest import ALL, FIXTURES, GOLDEN, RHOMBI, polycell, tilings
from polycell.cli import EXIT_ERROR, EXIT_OK, EXIT_UNTILABLE, main
from polycell.formats import FormatError, read_polycell, read_tiling, write_polycell, write_tiling

POLYCELLS = GOLDEN / "polycells"
TILE_EXIT = {"ring": EXIT_ERROR, "tromino_1x3": EXIT_UNTILABLE}


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


@pytest.mark.parametrize("name", ALL)
def test_polycell_format_round_trip(name):
    text = write_polycell(polycell(name))
    P = read_polycell(text)
    assert P == polycell(name) and P.embedding == polycell(name).embedding
    assert write_polycell(P) == text
    assert (POLYCELLS / f"{name}.polycell").read_text() == text


@pytest.mark.parametrize("name", ["strip_2x3", "hexagon_2"])
def test_tiling_format_round_trip(name):
    for Q in tilings(name):
        text = write_tiling(Q)
        assert read_tiling(text) == Q and write_tiling(read_tiling(text)) == text


@pytest.mark.parametrize(
    "text, message",
    [
        ("", "expected header"),
        ("POLYCELL 1\nk 4\nvertex 0\nvertex 2\nboundary\n", "missing 1"),
        ("POLYCELL 1\nk 3\nvertex 0\nvertex 1\nedge 0 0 1\ncell 0 0\nboundary 0\n", "line 6: cell 0 has 1 edges, expected k = 3"),
        ("POLYCELL 1\nk 3\nvertex 0\nedge 0 0 4\nboundary\n", "line 4: edge 0 references unknown vertex 4"),
        ("POLYCELL 1\nk 3\nvertex 0\nfrobnicate\nboundary\n", "line 4: syntax error"),
        ("POLYCELL 1\nvertex 0\nboundary\n", "missing 'k' line"),
        ("POLYCELL 1\nk x\n", "line 2: expected integers"),
    ],
)
def test_format_errors(text, message):
    with pytest.raises(FormatError, match=message):
        read_polycell(text)


def test_tiling_format_errors():
    with pytest.raises(FormatError, match="TILING 1"):
        read_tiling("edges 1 2\n")
    with pytest.raises(FormatError, match="line 3"):
        read_tiling("TILING 1\nedges 1\nedges 2\n")


@pytest.mark.parametrize("name", ALL)
def test_enumerate_matches_golden(name):
    assert run("enumerate", POLYCELLS / f"{name}.polycell") == (
        EXIT_OK,
        (GOLDEN / f"{name}.enumerate.txt").read_text(),
    )


@pytest.mark.parametrize("name", ALL)
def test_tile_matches_golden(name):
    code, out = run("tile", POLYCELLS / f"{name}.polycell")
    assert code == TILE_EXIT.get(name, EXIT_OK)
    assert out == (GOLDEN / f"{name}.tile.txt").read_text()


@pytest.mark.parametrize("name", ALL)
def test_components_matches_golden(name):
    assert run("components", POLYCELLS / f"{name}.polycell") == (
        EXIT_OK,
        (GOLDEN / f"{name}.components.txt").read_text(),
    )


@pytest.mark.parametrize("name", ALL)
def test_encode_matches_golden(name, tmp_path):
    kind = "rhombus" if name in RHOMBI else "polyomino"
    target = tmp_path / "out.polycell"
    assert run("encode", kind, FIXTURES / f"{name}.txt", "-o", target)[0] == EXIT_OK
    assert target.read_bytes() == (POLYCELLS / f"{name}.polycell").read_bytes()


def test_validate_output():
    code, out = run("validate", POLYCELLS / "strip_2x2.polycell")
    assert code == EXIT_OK
    assert out.splitlines() == [
        "valid: yes",
        "balanced boundary: yes",
        "contractible: yes",
        "full: yes",
        "cells span integer cycles: yes",
    ]
    code, out = run("validate", POLYCELLS / "ring.polycell")
    assert code == EXIT_ERROR and "balanced boundary: no" in out


def test_validate_reports_violations(tmp_path):
    bad = tmp_path / "bad.polycell"
    bad.write_text("POLYCELL 1\nk 2\nvertex 0\nvertex 1\nedge 0 0 1\nedge 1 1 0\ncell 0 0 1\nboundary 0\nnu 0\n")
    code, out = run("validate", bad)
    assert code == EXIT_ERROR
    assert out.startswith("violation: ") and "valid: no" in out


def test_heights_command(tmp_path):
    t = tmp_path / "t.tiling"
    t.write_text(write_tiling(tilings("strip_2x2")[0]))
    code, out = run("heights", POLYCELLS / "strip_2x2.polycell", t)
    assert code == EXIT_OK
    rows = [tuple(map(int, line.split())) for line in out.splitlines()]
    assert [v for v, _ in rows] == list(range(polycell("strip_2x2").n_vertices))
    assert dict(rows)[polycell("strip_2x2").nu] == 0


def test_sample_command():
    args = ("sample", POLYCELLS / "strip_2x3.polycell", "--seed", 7, "--n", 50)
    code, out = run(*args)
    assert code == EXIT_OK and len(out.splitlines()) == 50
    assert run(*args) == (code, out)
    assert run(*args, "--workers", 3) == (code, out)
    code, exact = run(*args, "--method", "exact")
    assert code == EXIT_OK and len(exact.splitlines()) == 50
    assert run("sample", POLYCELLS / "tromino_1x3.polycell", "--seed", 1)[0] == EXIT_UNTILABLE


def test_flipgraph_command(tmp_path):
    dot = tmp_path / "g.dot"
    code, out = run("flipgraph", POLYCELLS / "strip_2x3.polycell", "--dot", dot)
    assert (code, out) == (EXIT_OK, "3 nodes, 2 edges\n")
    assert dot.read_text().startswith("digraph flips {")


def test_render_command(tmp_path):
    for name in ("square_4x4", "hexagon_2"):
        t = tmp_path / "t.tiling"
        t.write_text(write_tiling(tilings(name)[0]))
        svg = tmp_path / f"{name}.svg"
        assert run("render", POLYCELLS / f"{name}.polycell", t, "--svg", svg)[0] == EXIT_OK
        text = svg.read_text()
        assert text.startswith("<svg") and text.count("<polygon") == len(tilings(name)[0])
    t.write_text(write_tiling(tilings("cube_3")[0]))
    assert run("render", POLYCELLS / "cube_3.polycell", t, "--svg", tmp_path / "c.svg")[0] == EXIT_ERROR


def test_usage_errors(tmp_path):
    assert run()[0] == EXIT_ERROR
    assert run("tile", tmp_path / "missing.polycell")[0] == EXIT_ERROR
    assert run("sample", POLYCELLS / "strip_2x2.polycell")[0] == EXIT_ERROR
    assert run("encode", "rhombus", FIXTURES / "cube_3.txt", "--d", 2)[0] == EXIT_ERROR


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "polycell", "components", str(POLYCELLS / "ring.polycell")],
        capture_output=True,
        text=True,
    )
    assert (proc.returncode, proc.stdout) == (0, "2\n")
