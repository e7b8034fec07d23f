import pytest

from platypus.nmatrix import builtin


@pytest.fixture(scope="session")
def bm_pl():
    return builtin("BM_pl")


@pytest.fixture(scope="session")
def wronski():
    return builtin("Wronski_C")



def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
