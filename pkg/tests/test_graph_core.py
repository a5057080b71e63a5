"""
Тесты для графов, W(H), обхвата и паросочетаний
"""
import pytest

from src.modules.graph_core import (
    INFINITY,
    NEG_INFINITY,
    Graph,
    Matching,
    attach_whiskers,
    complement,
    cycle_lengths_bruteforce,
    enumerate_matchings,
    enumerate_matchings_bruteforce,
    family_members,
    generate_family,
    girth,
    graph_stats,
    induced_subgraph,
    is_bipartite,
    is_connected,
    is_unicyclic,
    mask_of,
    matching_number,
    matching_number_table,
    odd_girth,
    popcount,
    to_json_value,
    whisker,
)


def test_extended_bounds_order():
    assert NEG_INFINITY < 0 < INFINITY
    assert 10 ** 9 < INFINITY
    assert to_json_value(INFINITY) == "inf"
    assert to_json_value(NEG_INFINITY) == "-inf"
    assert to_json_value(7) == 7


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_cycle_girth(n):
    """Обхват C_n равен n, нечётный обхват — n или ∞"""
    C = generate_family("cycle", n)
    assert girth(C) == n
    assert odd_girth(C) == (n if n % 2 else INFINITY)
    assert is_bipartite(C) == (n % 2 == 0)
    assert is_unicyclic(C)


def test_forest_girth_is_infinite():
    P = generate_family("path", 5)
    assert girth(P) is INFINITY
    assert odd_girth(P) is INFINITY
    assert not is_unicyclic(P)


def test_complete_graph_girth():
    K4 = generate_family("complete", 4)
    assert girth(K4) == 3
    assert odd_girth(K4) == 3


def test_odd_girth_with_short_even_cycle():
    """C4 и пятиугольник с общим ребром: обхват 4, нечётный обхват 5"""
    edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 1)]
    H = Graph.from_edges(7, edges)
    assert girth(H) == 4
    assert odd_girth(H) == 5
    lengths = cycle_lengths_bruteforce(H)
    assert min(lengths) == 4
    assert min(l for l in lengths if l % 2) == 5


def test_whisker_indexing():
    """y_i = n + i, ν(W(H)) = n"""
    H = generate_family("cycle", 5)
    W = whisker(H)
    assert W.n == 5
    assert W.graph.n_vertices == 10
    assert W.partner(2) == 7 and W.partner(7) == 2
    assert W.is_whisker_edge((3, 8))
    assert not W.is_whisker_edge((0, 1))
    assert W.is_base_edge((0, 1))
    assert W.vertex_name(0) == "x1" and W.vertex_name(9) == "y5"
    assert matching_number(W.graph) == 5
    assert len(W.graph.edges) == 10


def test_whisker_requires_full_universe():
    H = generate_family("cycle", 4).delete_vertices([0])
    with pytest.raises(ValueError):
        whisker(H)


def test_delete_pair():
    W = whisker(generate_family("cycle", 4))
    sub, index_map = W.delete_pair(0)
    assert sub.n == 3
    assert index_map == (1, 2, 3, 5, 6, 7)
    assert girth(sub.base) is INFINITY
    with pytest.raises(ValueError):
        W.delete_pair(4)


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 5)])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 1)], labels=["a"])


def test_restrict_keeps_universe():
    C = generate_family("cycle", 5)
    R = C.restrict(mask_of([0, 1, 2]))
    assert R.n_vertices == 5
    assert R.order == 3
    assert R.edge_list == ((0, 1), (1, 2))
    with pytest.raises(ValueError):
        R.restrict(mask_of([3]))


def test_matching_validation():
    M = Matching.of([(1, 0), (2, 3)])
    assert M.edges == ((0, 1), (2, 3))
    assert M.support == 0b1111
    assert M.mate(3) == 2 and M.mate(5) is None
    with pytest.raises(ValueError):
        Matching.of([(0, 1), (1, 2)])
    assert len(M.without((1, 0))) == 1


@pytest.mark.parametrize("name,params", [("cycle", (6,)), ("complete", (5,)), ("path", (6,))])
def test_enumerate_matchings_matches_bruteforce(name, params):
    G = whisker(generate_family(name, *params)).graph
    for k in range(0, 4):
        fast = enumerate_matchings(G, k)
        slow = enumerate_matchings_bruteforce(G, k)
        assert [m.edges for m in fast] == sorted(m.edges for m in slow)


def test_matching_number_table():
    C = generate_family("cycle", 5)
    table = matching_number_table(C)
    assert table[C.vertex_mask] == 2
    assert table[mask_of([0, 1])] == 1
    assert table[mask_of([0, 2])] == 0
    assert all(table[F] <= popcount(F) // 2 for F in table)


def test_complement_and_connectivity():
    C4 = generate_family("cycle", 4)
    comp = complement(C4)
    assert comp.edge_list == ((0, 2), (1, 3))
    assert not is_connected(comp)
    assert is_connected(C4)


def test_induced_subgraph_renumbers():
    C = generate_family("cycle", 5)
    sub, index_map = induced_subgraph(C, [4, 0, 1])
    assert index_map == (0, 1, 4)
    assert sub.edge_list == ((0, 1), (0, 2))
    with pytest.raises(ValueError):
        induced_subgraph(C, [7])


def test_attach_whiskers():
    C5 = generate_family("cycle", 5)
    G, leaves = attach_whiskers(C5, [0, 2, 4], 2)
    assert G.n_vertices == 11
    assert leaves == {0: (5, 6), 2: (7, 8), 4: (9, 10)}
    assert G.degree(0) == 4
    with pytest.raises(ValueError):
        attach_whiskers(C5, [0], 0)


def test_families():
    assert len(generate_family("star", 4).edges) == 3
    assert len(generate_family("complete_bipartite", 2, 3).edges) == 6
    tree = generate_family("tree", [(0, 1), (1, 2), (1, 3)])
    assert tree.n_vertices == 4
    assert len(family_members("trees", 5)) == 3
    assert len(family_members("all_connected", 3)) == 2
    assert len(family_members("all_connected", 3, labeled=True)) == 4
    assert len(family_members("cycle", 4)) == 1


def test_family_errors():
    with pytest.raises(ValueError):
        generate_family("cycle", 2)
    with pytest.raises(ValueError):
        generate_family("tree", [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(ValueError):
        generate_family("all_connected", 8)
    with pytest.raises(ValueError):
        generate_family("petersen")


def test_graph_stats():
    stats = graph_stats(generate_family("cycle", 7))
    assert (stats.n, stats.girth, stats.odd_girth, stats.matching_number) == (7, 7, 7, 7)
    raw = graph_stats(generate_family("cycle", 7), whiskered=False)
    assert raw.matching_number == 3
