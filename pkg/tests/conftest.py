from pathlib import Path

import pytest

from tsol.core import parse_tournament
from tsol.reductions import cnf

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def fig1():
    """The 5-alternative worked example (TEQ {a,b,c}, Banks {a,b,c,d})."""
    return parse_tournament((DATA / "fig1.txt").read_text())


@pytest.fixture(scope="session")
def fig_cnf():
    """(-p | s | q) & (p | s | r) & (p | q | -r)"""
    return cnf(("-p", "s", "q"), ("p", "s", "r"), ("p", "q", "-r"))


@pytest.fixture(scope="session")
def data_dir():
    return DATA
