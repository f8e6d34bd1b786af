import random
import sys

import pytest

from banach_hecke.root_datum import RootDatum


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def gl2():
    return RootDatum.gl(2)


@pytest.fixture(scope="session")
def gl3():
    return RootDatum.gl(3)


@pytest.fixture(scope="session")
def pgl2():
    return RootDatum.pgl2()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
