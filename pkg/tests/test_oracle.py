import random
from fractions import Fraction

import networkx as nx
import pytest

from braesslab.errors import InvalidParameterError, OracleBoundError
from braesslab.graph import Graph, example_h, make_family, random_connected_graph
from braesslab.oracle import (
    DEFAULT_BOUND,
    census,
    enumerate_spanning_trees,
    forest_tables,
    iter_spanning_forests,
    iter_spanning_trees,
    kemeny_bruteforce,
    levene_loizou_sums,
    mfpt_bruteforce,
    oracle_forest_matrix,
    oracle_q_matrix,
)

from _corpus import from_nx


def test_spanning_trees_of_k4():
    trees = list(iter_spanning_trees(make_family("complete", 4)))
    assert len(trees) == 16
    assert len(set(trees)) == 16
    for t in trees:
        G = nx.Graph(list(t))
        assert G.number_of_nodes() == 4 and nx.is_tree(G)


def test_enumerate_spanning_trees_cayley():
    assert enumerate_spanning_trees(Graph(1)) == 1
    for n in range(2, 7):
        assert enumerate_spanning_trees(make_family("complete", n)) == n ** (n - 2)


def test_enumerate_matches_networkx():
    rng = random.Random(20)
    for _ in range(20):
        G = nx.connected_watts_strogatz_graph(rng.randint(4, 8), 2, 0.5, seed=rng.randint(0, 10**6))
        g = from_nx(G)
        assert enumerate_spanning_trees(g) == round(nx.number_of_spanning_trees(G))


def test_two_forests_have_two_components():
    g = make_family("cycle", 5)
    forests = list(iter_spanning_forests(g, 2))
    assert len(forests) == 10
    for edges, labels in forests:
        assert len(edges) == 3
        assert len(set(labels)) == 2
        assert labels[0] == 0


def test_forest_count_out_of_range_is_empty():
    assert list(iter_spanning_forests(make_family("path", 3), 0)) == []
    assert list(iter_spanning_forests(make_family("path", 3), 4)) == []
    assert len(list(iter_spanning_forests(make_family("path", 3), 3))) == 1


def test_forest_tables_h():
    h, _ = example_h()
    t = forest_tables(h)
    assert t.tau == 3
    assert oracle_forest_matrix(h) == [[0, 2, 2, 5], [2, 0, 2, 3], [2, 2, 0, 5], [5, 3, 5, 0]]
    Q = oracle_q_matrix(h, 0)
    assert Q[0] == [0, 0, 0, 0]
    assert Q == [list(c) for c in zip(*Q)]


def test_census_partitions_separations():
    g = make_family("complete", 5)
    c = census(g, 0, 1, 2)
    # every forest separating i and j puts v with exactly one of them
    assert c.i_j == c.i_vj + c.iv_j
    assert c.i_j == forest_tables(g).f[0][1]
    assert c.ij_v == forest_tables(g).q[2][0][1]


def test_census_identity_q():
    # q[i][j] (anchored at v) = (f[i][v] + f[v][j] - f[i][j]) / 2
    rng = random.Random(21)
    for _ in range(10):
        g = random_connected_graph(rng.randint(3, 7), rng.randint(0, 4), rng)
        i, j, v = rng.sample(range(g.n), 3)
        t = forest_tables(g)
        c = census(g, i, j, v)
        assert 2 * c.ij_v == t.f[i][v] + t.f[v][j] - t.f[i][j]


def test_mfpt_and_levene_loizou_c5():
    g = make_family("cycle", 5)
    m = mfpt_bruteforce(g)
    assert m[0][1] == 4 and m[0][2] == 6
    sums = levene_loizou_sums(g)
    assert sums == {"zero": 4, "return_time": 5}
    assert kemeny_bruteforce(g) == 4


def test_kemeny_bruteforce_p2():
    assert kemeny_bruteforce(make_family("path", 2)) == Fraction(1, 2)


def test_bound_refused():
    big = make_family("path", DEFAULT_BOUND + 1)
    for fn in (enumerate_spanning_trees, forest_tables, kemeny_bruteforce, mfpt_bruteforce):
        with pytest.raises(OracleBoundError):
            fn(big)
    assert enumerate_spanning_trees(big, bound=DEFAULT_BOUND + 1) == 1


def test_domain_errors():
    with pytest.raises(InvalidParameterError):
        kemeny_bruteforce(Graph(1))
    with pytest.raises(InvalidParameterError):
        oracle_q_matrix(make_family("path", 3), 5)
