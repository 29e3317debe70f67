import pytest

from evoderive.field import FieldSpec, Matrix
from evoderive.graph import Graph, complete_bipartite, parse_graph

SEVEN_TEXT = "7 6\n1 3\n2 3\n3 4\n4 5\n4 6\n4 7\n"

# the displayed GF(2) derivation of the seven-vertex example
SEVEN_GF2_ROWS = [
    [1, 1, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0, 0],
    [0] * 7,
    [0] * 7,
    [0, 0, 0, 0, 1, 1, 0],
    [0, 0, 0, 0, 1, 1, 0],
    [0] * 7,
]

# K_{2,3} family over GF(3) with parts {1,2,3} and {4,5}
K23_ALPHA = [[2, 0, 0, 0, 0], [0, 2, 0, 0, 0], [0, 0, 2, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]
K23_BETA = [[0, 1, -1, 0, 0], [-1, 0, 1, 0, 0], [1, -1, 0, 0, 0], [0] * 5, [0] * 5]


@pytest.fixture
def seven() -> Graph:
    return parse_graph(SEVEN_TEXT)


@pytest.fixture
def k23() -> Graph:
    return complete_bipartite(3, 2)


@pytest.fixture
def gf2():
    return FieldSpec(2)


@pytest.fixture
def gf3():
    return FieldSpec(3)


@pytest.fixture
def seven_d(gf2) -> Matrix:
    return Matrix(gf2, SEVEN_GF2_ROWS)


@pytest.fixture
def k23_alpha(gf3) -> Matrix:
    return Matrix(gf3, K23_ALPHA)


@pytest.fixture
def k23_beta(gf3) -> Matrix:
    return Matrix(gf3, K23_BETA)
