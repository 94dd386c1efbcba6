import sys
from fractions import Fraction

import pytest

from mopzeros.families import FAMILIES, default_family
from mopzeros.lattice import Lattice

F = Fraction


@pytest.fixture(scope="session")
def lattices():
    """One memoised lattice per family with the default two-measure parameters."""
    return {name: Lattice(default_family(name)) for name in FAMILIES}


@pytest.fixture(scope="session")
def hermite():
    return Lattice(default_family("hermite"))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for i in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.report_line(i))
