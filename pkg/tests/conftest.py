import pytest

from bmw_e6.reducibility import conjugate_elements, sum_S
from bmw_e6.rep import build_rep


@pytest.fixture(scope="session")
def rep():
    rep, _ = build_rep()
    return rep


@pytest.fixture(scope="session")
def conjugates(rep):
    return conjugate_elements(rep)


@pytest.fixture(scope="session")
def S(conjugates):
    return sum_S(conjugates)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance") or __import__("sys").modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
