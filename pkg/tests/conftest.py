from functools import lru_cache

import pytest
from hypothesis import settings

from hgsenum.holomorph import build_holomorph, cyclic_spec, matrix_model, metacyclic_spec
from hgsenum.transitive import enumerate_spec


# group computations have uneven per-example cost; timing is not what these tests check
settings.register_profile("hgsenum", deadline=None)
settings.load_profile("hgsenum")


@lru_cache(maxsize=None)
def enumeration(q, kind):
    spec = cyclic_spec(q) if kind == "cyclic" else metacyclic_spec(q)
    enum = enumerate_spec(spec)
    enum.counts  # fill the cached counts once
    return enum


@lru_cache(maxsize=None)
def holomorph(q, kind):
    return build_holomorph(cyclic_spec(q) if kind == "cyclic" else metacyclic_spec(q))


@pytest.fixture(scope="session")
def hol_c21():
    return holomorph(3, "cyclic")


@pytest.fixture(scope="session")
def hol_m21():
    return holomorph(3, "metacyclic")


@pytest.fixture(scope="session")
def model3(hol_m21):
    return matrix_model(3, hol_m21)


@pytest.fixture(scope="session")
def cyc3():
    return enumeration(3, "cyclic")


@pytest.fixture(scope="session")
def met3():
    return enumeration(3, "metacyclic")


@pytest.fixture(scope="session")
def cyc5():
    return enumeration(5, "cyclic")


@pytest.fixture(scope="session")
def met5():
    return enumeration(5, "metacyclic")


# one line per acceptance criterion, printed at the end of the run whatever the capture mode
ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})"
    ACCEPTANCE_LINES[number] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
