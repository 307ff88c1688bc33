import pytest
from hypothesis import settings

from markedhilb.fixtures import load
from markedhilb.marked import MarkedSet

settings.register_profile("default", deadline=None, print_blob=True)
settings.load_profile("default")

ACCEPTANCE = {}


def record(criterion, ok, detail=""):
    ACCEPTANCE[criterion] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def jg7():
    return load("jg7")


@pytest.fixture(scope="session")
def jg5():
    return load("jg5")


@pytest.fixture(scope="session")
def f32(jg7):
    return MarkedSet.from_polys(load("f32_dim7").values(), jg7, 3)


@pytest.fixture(scope="session")
def f17(jg5):
    return MarkedSet.from_polys(load("f17_dim5").values(), jg5, 3)


@pytest.fixture(scope="session")
def gtau(jg7):
    return MarkedSet.from_polys(load("gtau_dim7").values(), jg7, 3)


@pytest.fixture(scope="session")
def gT(jg5):
    return MarkedSet.from_polys(load("gT_dim5").values(), jg5, 3)


@pytest.fixture(scope="session")
def ideal_a(jg7):
    return MarkedSet.from_polys(load("elim_a").values(), jg7, 3)
