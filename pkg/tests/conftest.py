import sys
from pathlib import Path

import pytest

from lexmatroid.matroid import dual, fano, new_matroid
from lexmatroid.oseq import OrderIdeal, parse_table
from lexmatroid.shelling import BasedMatroid

DATA = Path(__file__).parent / "data"


def load_table(name):
    """Transcribed worked example: {I mask: (h, [monomials])}."""
    return parse_table((DATA / name).read_text())


def table_ideal(table):
    mons = [m for _, ms in table.values() for m in ms]
    return OrderIdeal.of(mons + ["1"])


@pytest.fixture(scope="session")
def fano_m():
    return fano()


@pytest.fixture(scope="session")
def dual_fano_m():
    return dual(fano())


@pytest.fixture(scope="session")
def fano_bm(fano_m):
    return BasedMatroid.natural(fano_m, (1, 2, 3))


@pytest.fixture(scope="session")
def dual_fano_bm(dual_fano_m):
    return BasedMatroid.natural(dual_fano_m, (1, 2, 3, 4))


@pytest.fixture(scope="session")
def fano_table():
    return load_table("fano_table.txt")


@pytest.fixture(scope="session")
def dual_fano_table():
    return load_table("dual_fano_table.txt")


@pytest.fixture
def square():
    """Two parallel classes {1,2} and {3,4}: rank 2 on four elements."""
    return new_matroid(4, [(1, 3), (1, 4), (2, 3), (2, 4)])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
