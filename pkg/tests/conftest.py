import pytest

from braidquant.mosaic import parse_mosaic


@pytest.fixture
def paper_mosaic():
    """The (3,8) example 1 b-1 b1 b2 1 1 b-1 b2."""
    return parse_mosaic("0,-1,1,2,0,0,-1,2", 3)


def m(text, n=3):
    return parse_mosaic(text, n)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
