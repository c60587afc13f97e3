import pytest

from sharegoods.netgraph import Graph


@pytest.fixture
def figure1_graph() -> Graph:
    # Six-node example graph (0-based): hub 2 adjacent to everything except
    # the 3-5 and 4-5 edges closing two triangles.
    return Graph(6, [(0, 2), (1, 2), (2, 3), (2, 4), (2, 5), (3, 5), (4, 5)])
