import pytest

from fracmatch import Hypergraph

# One line per acceptance criterion, re-emitted after the run so the
# verdicts are visible even with captured stdout.
ACCEPTANCE_LINES = []


def record_acceptance(line: str) -> None:
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)


@pytest.fixture
def triangle():
    return Hypergraph(3, 2, [(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def path3():
    return Hypergraph(3, 2, [(0, 1), (1, 2)])


@pytest.fixture
def k4():
    return Hypergraph.complete(4, 2)


@pytest.fixture
def k2():
    return Hypergraph(2, 2, [(0, 1)])


@pytest.fixture
def fano():
    return Hypergraph(7, 3, [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5),
                             (1, 4, 6), (2, 3, 6), (2, 4, 5)])


@pytest.fixture
def single_edge3():
    return Hypergraph(3, 3, [(0, 1, 2)])


@pytest.fixture
def k22():
    return Hypergraph(4, 2, [(0, 2), (0, 3), (1, 2), (1, 3)],
                      partition=((0, 1), (2, 3)))
