import random

import networkx as nx
import pytest

from braesslab.errors import DisconnectedGraphError, EdgeListParseError, InvalidParameterError
from braesslab.forests import tree_count
from braesslab.graph import (
    Graph,
    TwinPathSpec,
    attach_twin_paths,
    branches_at,
    close_twin_paths,
    components,
    diameter,
    eccentricity,
    example_h,
    format_edge_list,
    identify,
    is_connected,
    is_cut_vertex,
    is_tree,
    make_family,
    parse_edge_list,
    random_connected_graph,
    read_edge_list,
    write_edge_list,
)

from _corpus import trees_up_to


def to_nx(g):
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    return G


def test_graph_canonicalises_edges():
    g = Graph(3, ((2, 0), (1, 2)))
    assert g.edges == ((0, 2), (1, 2))
    assert g.m == 2
    assert g.degrees == (1, 1, 2)


@pytest.mark.parametrize("edges", [((0, 0),), ((0, 1), (1, 0)), ((0, 3),), ((-1, 0),)])
def test_graph_rejects_bad_edges(edges):
    with pytest.raises(InvalidParameterError):
        Graph(3, edges)


def test_graph_is_hashable_value():
    assert Graph(3, ((0, 1), (1, 2))) == Graph(3, ((1, 2), (0, 1)))
    assert len({Graph(3, ((0, 1), (1, 2))), Graph(3, ((1, 2), (0, 1)))}) == 1


def test_cycle_labelling():
    assert make_family("cycle", 5).edges == ((0, 1), (0, 4), (1, 2), (2, 3), (3, 4))


def test_star_centre_is_last():
    g = make_family("star", 4)
    assert g.degrees[3] == 3


def test_broom_labelling():
    g = make_family("broom", 6, 3)
    assert set(g.edges) == {(0, 1), (1, 2), (2, 3), (2, 4), (2, 5)}
    assert eccentricity(g, 0) == 3


@pytest.mark.parametrize(
    "kind,n,alpha",
    [("cycle", 2, None), ("path", 0, None), ("broom", 4, 4), ("broom", 4, 0), ("broom", 4, None), ("wheel", 4, None)],
)
def test_make_family_domain(kind, n, alpha):
    with pytest.raises(InvalidParameterError):
        make_family(kind, n, alpha)


def test_identify_paths_gives_longer_path():
    p3 = make_family("path", 3)
    g, mapping = identify(p3, 2, p3, 0)
    assert g == make_family("path", 5)
    assert mapping == [2, 3, 4]


def test_identify_triangle_and_edge():
    g, _ = identify(make_family("complete", 3), 0, make_family("path", 2), 0)
    assert (g.n, g.m) == (4, 4)


def test_identify_stars_at_centre_is_star():
    s4 = make_family("star", 4)
    g, _ = identify(s4, 3, s4, 3)
    assert nx.is_isomorphic(to_nx(g), to_nx(make_family("star", 7)))


def test_identify_multiplies_tree_counts():
    rng = random.Random(5)
    for _ in range(30):
        a = random_connected_graph(rng.randint(1, 5), rng.randint(0, 3), rng)
        b = random_connected_graph(rng.randint(1, 5), rng.randint(0, 3), rng)
        g, _ = identify(a, rng.randrange(a.n), b, rng.randrange(b.n))
        assert tree_count(g) == tree_count(a) * tree_count(b)
        assert g.n == a.n + b.n - 1 and g.m == a.m + b.m


def test_attach_twin_paths_star():
    s6 = make_family("star", 6)
    gt = attach_twin_paths(s6, TwinPathSpec(0, 1, 2))
    assert (gt.graph.n, gt.graph.m) == (9, 8)
    assert gt.tips == (6, 8)
    gh = close_twin_paths(gt.graph, gt.tips)
    assert gh.m == 9
    cycles = nx.cycle_basis(to_nx(gh))
    assert len(cycles) == 1 and len(cycles[0]) == 4 and 0 in cycles[0]


def test_attach_twin_paths_point():
    gt = attach_twin_paths(Graph(1), TwinPathSpec(0, 1, 1))
    assert nx.is_isomorphic(to_nx(gt.graph), to_nx(make_family("path", 3)))
    assert close_twin_paths(gt.graph, gt.tips).m == 3


def test_attach_twin_paths_zero_arm():
    gt = attach_twin_paths(make_family("path", 2), TwinPathSpec(0, 0, 2))
    assert gt.tips[0] == 0
    assert nx.is_isomorphic(to_nx(gt.graph), to_nx(make_family("path", 4)))
    assert gt.graph.degrees[0] == 2
    gh = close_twin_paths(gt.graph, gt.tips)
    assert (gh.n, gh.m) == (4, 4)
    assert len(nx.cycle_basis(to_nx(gh))[0]) == 3


@pytest.mark.parametrize("k1,k2", [(0, 1), (1, 0), (0, 0), (-1, 3)])
def test_twin_path_spec_domain(k1, k2):
    with pytest.raises(InvalidParameterError):
        TwinPathSpec(0, k1, k2)


def test_close_twin_paths_errors():
    g = make_family("path", 3)
    with pytest.raises(InvalidParameterError):
        close_twin_paths(g, (1, 1))
    with pytest.raises(InvalidParameterError):
        close_twin_paths(g, (0, 1))


def test_attach_close_sizes():
    rng = random.Random(11)
    for _ in range(25):
        g = random_connected_graph(rng.randint(1, 6), rng.randint(0, 3), rng)
        k1, k2 = rng.randint(0, 3), rng.randint(0, 3)
        if k1 + k2 < 2:
            continue
        gt = attach_twin_paths(g, TwinPathSpec(rng.randrange(g.n), k1, k2))
        gh = close_twin_paths(gt.graph, gt.tips)
        assert gh.n - g.n == k1 + k2
        assert gh.m - g.m == k1 + k2 + 1


def test_metric_queries():
    assert diameter(make_family("cycle", 6)) == 3
    assert eccentricity(make_family("path", 5), 2) == 2
    assert is_cut_vertex(make_family("path", 3), 1)
    assert not is_cut_vertex(make_family("cycle", 4), 1)
    assert is_tree(make_family("star", 5)) and not is_tree(make_family("cycle", 4))


def test_disconnected_error_names_components():
    g = Graph(4, ((0, 1), (2, 3)))
    assert not is_connected(g)
    with pytest.raises(DisconnectedGraphError, match=r"\{0, 1\}; \{2, 3\}"):
        eccentricity(g, 0)


def test_branches_at_star_centre():
    prof = branches_at(make_family("star", 4), 3)
    assert len(prof) == 3
    assert prof.pairs() == [(2, 1)] * 3


def test_branches_at_non_cut_vertex():
    prof = branches_at(make_family("cycle", 5), 0)
    assert prof.pairs() == [(5, 2)]


def test_branches_partition_edges():
    rng = random.Random(3)
    for _ in range(30):
        g = random_connected_graph(rng.randint(2, 8), rng.randint(0, 4), rng)
        v = rng.randrange(g.n)
        prof = branches_at(g, v)
        sizes = 0
        edges = set()
        for b in prof:
            sub, _ = b.subgraph(g)
            sizes += b.size - 1
            edges |= {e for e in g.edges if e[0] in b.vertices and e[1] in b.vertices}
            assert sub.n == b.size
        assert sizes == g.n - 1
        assert edges == set(g.edges)


def test_tree_eccentricity_at_least_half_diameter():
    for t in trees_up_to(8):
        d = diameter(t)
        for v in range(t.n):
            assert eccentricity(t, v) >= (d + 1) // 2


def test_example_h():
    h, w = example_h()
    assert h.edges == ((0, 1), (0, 2), (1, 2), (1, 3))
    assert h.degrees[w] == 2


def test_random_connected_graph_is_connected():
    rng = random.Random(0)
    for n in range(1, 12):
        g = random_connected_graph(n, 3, rng)
        assert g.n == n and is_connected(g)


def test_edge_list_roundtrip(tmp_path):
    g = make_family("broom", 7, 3)
    path = tmp_path / "g.txt"
    write_edge_list(g, path)
    assert read_edge_list(path) == g
    assert format_edge_list(g).splitlines()[0] == "7"


def test_edge_list_comments_and_blank_lines():
    g = parse_edge_list("# a triangle\n\n3\n0 1\n  # inline comment line\n1 2\n0 2\n")
    assert g == make_family("complete", 3)


@pytest.mark.parametrize(
    "text,line",
    [
        ("3\n0 1\n1 x\n", 3),
        ("3\n0 1\n2 1\n", 3),
        ("3\n0 1\n0 1\n", 3),
        ("3\n0 3\n", 2),
        ("3 4\n", 1),
        ("3\n0 1 2\n", 2),
    ],
)
def test_edge_list_errors_carry_line_numbers(text, line):
    with pytest.raises(EdgeListParseError) as exc:
        parse_edge_list(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


def test_edge_list_missing_count():
    with pytest.raises(EdgeListParseError):
        parse_edge_list("# nothing\n")


def test_components_order():
    assert components(Graph(5, ((3, 4), (0, 2)))) == [[0, 2], [1], [3, 4]]
