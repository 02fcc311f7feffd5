import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from lsqt import Graph, build_bfs_tree, grid_graph


@pytest.fixture
def triangle():
    return Graph.from_edges([(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def four_cycle():
    return Graph.from_edges([(0, 1), (1, 2), (2, 3), (0, 3)])


@pytest.fixture
def k4():
    return Graph.from_edges(
        [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    )


@pytest.fixture
def k4_star_tree(k4):
    # star tree centered at 0: BFS from 0 picks exactly the spokes
    return build_bfs_tree(k4, root=0)


@pytest.fixture
def grid8():
    return grid_graph(8, 8)
