import numpy as np
import pytest

from scaleflow.network import FlowNetwork

# canonical fixtures
PATH4 = (4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)], False)
S, A, B, T = 0, 1, 2, 3
DIAMOND = (4, [(S, A, 3), (S, B, 2), (A, T, 2), (B, T, 3), (A, B, 1)], True)
STAR5 = (5, [(0, i, 1) for i in range(1, 5)], False)
TRIANGLE = (3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)], False)
SINGLE = (2, [(0, 1, 5)], True)


def build(graph):
    n, edges, directed = graph
    return FlowNetwork.build(n, edges, directed=directed)


@pytest.fixture
def path4():
    return build(PATH4)


@pytest.fixture
def diamond():
    return build(DIAMOND)


@pytest.fixture
def star5():
    return build(STAR5)


@pytest.fixture
def triangle():
    return build(TRIANGLE)


@pytest.fixture
def single():
    return build(SINGLE)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one summary line per acceptance criterion, printed after the test session
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
