from functools import lru_cache
from pathlib import Path

import pytest

from polycell.encoders import PolyominoRegion, encode_polyomino, encode_rhombus, parse_points
from polycell.oracle import brute_force_tilings

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

POLYOMINOES = [
    "strip_2x1", "strip_2x2", "strip_2x3", "strip_2x4", "strip_2x5", "strip_2x6",
    "rect_3x4", "square_4x4", "aztec_2", "ring", "figure_c", "tromino_1x3",
]
RHOMBI = ["hexagon_2", "cube_3"]
ALL = POLYOMINOES + RHOMBI
# the fixtures named by the acceptance criteria
ACCEPTANCE = [
    "strip_2x1", "strip_2x2", "strip_2x3", "strip_2x4", "strip_2x5", "strip_2x6",
    "rect_3x4", "square_4x4", "aztec_2", "ring", "hexagon_2", "cube_3",
]
FULL = [name for name in ALL if name != "ring"]
# full fixtures with a balanced boundary
CONTRACTIBLE = [name for name in FULL if name != "tromino_1x3"]


@lru_cache(maxsize=None)
def region(name):
    text = (FIXTURES / f"{name}.txt").read_text()
    if name in RHOMBI:
        return parse_points(text)
    return PolyominoRegion.from_ascii(text)


@lru_cache(maxsize=None)
def polycell(name):
    R = region(name)
    return encode_rhombus(R) if name in RHOMBI else encode_polyomino(R)


@lru_cache(maxsize=None)
def tilings(name):
    return tuple(brute_force_tilings(polycell(name)))


@pytest.fixture
def square2():
    return polycell("strip_2x2")


@pytest.fixture
def strip3():
    return polycell("strip_2x3")


# one (number, passed, title, detail) entry per acceptance criterion
ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, title, detail in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number} {status}: {title} [{detail}]")
