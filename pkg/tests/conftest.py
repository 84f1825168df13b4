import json
from pathlib import Path
import sys

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hibilab.lattice import Lattice, boolean_lattice, ideal_lattice
from hibilab.poset import Poset

FROZEN = json.loads((Path(__file__).parent / "data" / "frozen.json").read_text())


def figure_poset():
    """a, b, c, d with b < d and c < d."""
    return Poset(4, [(1, 3), (2, 3)], "abcd")


def figure_lattice():
    return ideal_lattice(figure_poset())


def without_ends(L):
    return L.full & ~(1 << L.bottom) & ~(1 << L.top)


def m3():
    return Lattice(Poset(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]))


def n5():
    # 0 < a < c < 1, 0 < b < 1
    return Lattice(Poset(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]))


def table_of(frozen_rows):
    return {(i, j): b for i, j, b in frozen_rows}


@pytest.fixture
def frozen():
    return FROZEN


@pytest.fixture
def fig():
    return figure_lattice()


@pytest.fixture
def b3():
    return boolean_lattice(3)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
