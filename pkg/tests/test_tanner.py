import math

import networkx as nx
import numpy as np
import pytest

from conic_ldpc.expectations import expected_girth, expected_six_cycles, six_cycle_bound
from conic_ldpc.ffield import field_new
from conic_ldpc.gf2 import SparseBinaryMatrix
from conic_ldpc.incidence import build_structure
from conic_ldpc.tanner import (
    BipartiteGraph,
    count_6_cycles,
    count_8_cycles,
    count_exceptional_8_cycles,
    find_c3_configurations,
    girth,
)

FAMILIES = (1, 2, 3)
RANDOM_GRAPHS = 6


def _graph(family, q, exceptional=True):
    structure = build_structure(family, field_new(q), exceptional=exceptional)
    return BipartiteGraph.from_structure(structure)


def _to_networkx(graph):
    """Blocks are numbered after the points."""
    tanner = nx.Graph()
    tanner.add_nodes_from(range(graph.n_points + graph.n_blocks))
    for point in range(graph.n_points):
        tanner.add_edges_from(
            (point, graph.n_points + int(block)) for block in graph.point_blocks(point)
        )
    return tanner


def _cycles(graph, length):
    cycles = nx.simple_cycles(_to_networkx(graph), length_bound=length)
    return sum(1 for cycle in cycles if len(cycle) == length)


def _random_graph(seed):
    rng = np.random.default_rng(seed)
    return BipartiteGraph.from_matrix(
        SparseBinaryMatrix.from_dense(rng.integers(0, 2, size=(6, 8)))
    )


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("q", [4, 5, 7, 8, 9, 11, 13, 16])
def test_girth(family, q):
    assert girth(_graph(family, q)) == expected_girth(family, q)


@pytest.mark.parametrize("family", FAMILIES)
def test_girth_matches_networkx(family):
    graph = _graph(family, 4)
    assert girth(graph) == nx.girth(_to_networkx(graph))


def test_girth_of_forest_and_four_cycle():
    path = SparseBinaryMatrix.from_rows([(0, 1), (1, 2)], 3)
    assert girth(BipartiteGraph.from_matrix(path)) == math.inf
    square = SparseBinaryMatrix.from_rows([(0, 1), (0, 1)], 2)
    assert girth(BipartiteGraph.from_matrix(square)) == 4


@pytest.mark.parametrize("q, expected", [(4, 576), (8, 175616)])
def test_six_cycles_family_one_even(q, expected):
    assert expected_six_cycles(1, q) == expected
    assert count_6_cycles(_graph(1, q)) == expected


@pytest.mark.parametrize("family, q", [(1, 5), (2, 4), (3, 4), (2, 8), (3, 8)])
def test_no_six_cycles_at_girth_eight(family, q):
    assert count_6_cycles(_graph(family, q)) == 0


@pytest.mark.parametrize("family", [2, 3])
def test_six_cycles_match_c3_configurations(family):
    spec = field_new(5)
    count = count_6_cycles(_graph(family, 5))
    assert 0 < count <= six_cycle_bound(family, 5)
    assert len(find_c3_configurations(family, spec)) == count


def test_c3_limit():
    triples = find_c3_configurations(2, field_new(5), limit=3)
    assert len(triples) == 3
    for first, second, third in triples:
        assert len({first, second, third}) == 3


@pytest.mark.parametrize("seed", range(RANDOM_GRAPHS))
def test_cycle_counts_on_random_graphs(seed):
    graph = _random_graph(seed)
    assert count_6_cycles(graph) == _cycles(graph, 6)
    assert count_8_cycles(graph) == _cycles(graph, 8)
    assert girth(graph) == nx.girth(_to_networkx(graph))


def test_six_cycles_against_networkx():
    graph = _graph(1, 4)
    assert _cycles(graph, 6) == count_6_cycles(graph)


def test_eight_cycles_against_networkx():
    graph = _graph(2, 4)
    assert count_8_cycles(graph) == _cycles(graph, 8)


@pytest.mark.parametrize("family", FAMILIES)
def test_exceptional_eight_cycles_are_a_lower_bound(family):
    structure = build_structure(family, field_new(4))
    exceptional = count_exceptional_8_cycles(structure)
    assert 0 < exceptional <= count_8_cycles(BipartiteGraph.from_structure(structure))


def test_no_exceptional_cycles_without_exceptional_blocks():
    structure = build_structure(1, field_new(5), exceptional=False)
    assert count_exceptional_8_cycles(structure) == 0
