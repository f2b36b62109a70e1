import pytest

from sparsekit import (
    Graph,
    ParseError,
    SizeLimitError,
    ValidationError,
    bfs_distances,
    chromatic_number,
    clique_number,
    connected_components,
    degeneracy,
    degeneracy_orientation,
    girth,
    induced_subgraph,
    named,
    parse_edge_list,
    serialize_edge_list,
    subdivide,
)
from sparsekit.graphs import INFINITY, catalog_names

from conftest import degeneracy_oracle, random_graph


def test_parse_basic_path():
    g = parse_edge_list("0 1\n1 2")
    assert g.n == 3 and g.m == 2
    assert g.edges == ((0, 1), (1, 2))


def test_parse_duplicate_collapse():
    g = parse_edge_list("a b\nb a")
    assert g.n == 2 and g.m == 1


def test_parse_self_loop_rejected():
    with pytest.raises(ValidationError):
        parse_edge_list("x x")


def test_parse_malformed_line_number():
    with pytest.raises(ParseError) as exc:
        parse_edge_list("0 1\n0 1 2")
    assert exc.value.line == 2


def test_parse_comments_and_blanks():
    g = parse_edge_list("# top\n\n0 1\n  \n# tail\n1 2\n")
    assert g.n == 3 and g.m == 2


def test_roundtrip_catalog():
    for name in catalog_names():
        g = named(name)
        text = serialize_edge_list(g)
        again = parse_edge_list(text)
        assert again == g, name
        assert serialize_edge_list(again) == text, name


def test_roundtrip_labels():
    g = parse_edge_list("u v\nv w")
    assert g.labels == ("u", "v", "w")
    assert parse_edge_list(serialize_edge_list(g)).labels == g.labels


def test_named_k4():
    g = named("K_4")
    assert g.n == 4 and g.m == 6


def test_named_clebsch():
    g = named("Clebsch")
    assert g.n == 16 and g.m == 40
    assert all(g.degree(v) == 5 for v in range(16))
    # exhaustive triangle scan
    triangles = [
        (u, v, w)
        for u in range(16)
        for v in range(u + 1, 16)
        for w in range(v + 1, 16)
        if g.has_edge(u, v) and g.has_edge(v, w) and g.has_edge(u, w)
    ]
    assert triangles == []
    assert girth(g) == 4


def test_named_petersen():
    g = named("Petersen")
    assert g.n == 10 and g.m == 15
    assert girth(g) == 5


def test_named_unknown():
    with pytest.raises(ValidationError):
        named("Z_9")


def test_subdivide_identity():
    g = named("K_3")
    assert subdivide(g, 0).edges == g.edges


def test_subdivide_k3_once_is_c6():
    g = subdivide(named("K_3"), 1)
    assert g.n == 6 and g.m == 6
    assert girth(g) == 6
    assert all(g.degree(v) == 2 for v in range(6))


def test_subdivide_count_formula():
    assert subdivide(named("K_4"), 2).n == 4 + 2 * 6


@pytest.mark.parametrize("p", [0, 1, 2, 3, 4])
def test_subdivide_size_invariant_whole_catalog(p):
    for name in catalog_names():
        g = named(name)
        s = subdivide(g, p)
        assert s.n == g.n + p * g.m, name
        assert s.m == (p + 1) * g.m, name


def test_induced_subgraph_triangle():
    sub, back = induced_subgraph(named("K_4"), [0, 1, 2])
    assert sub.n == 3 and sub.m == 3
    assert back == [0, 1, 2]


def test_induced_subgraph_isolated_pair():
    sub, _ = induced_subgraph(named("C_5"), [0, 2])
    assert sub.n == 2 and sub.m == 0


def test_induced_subgraph_outer_cycle_of_petersen():
    sub, _ = induced_subgraph(named("Petersen"), [0, 1, 2, 3, 4])
    assert sub.n == 5 and sub.m == 5
    assert all(sub.degree(v) == 2 for v in range(5))


def test_induced_subgraph_identity():
    g = named("Petersen")
    sub, back = induced_subgraph(g, range(g.n))
    assert sub.edges == g.edges and back == list(range(10))


def test_induced_subgraph_out_of_range():
    with pytest.raises(ValidationError):
        induced_subgraph(named("K_3"), [0, 5])


def test_bfs_path_end():
    assert bfs_distances(named("P_3"), 0) == [0, 1, 2]


def test_bfs_unreachable():
    g = Graph(3, [(0, 1)])
    assert bfs_distances(g, 0) == [0, 1, INFINITY]


def test_bfs_petersen_eccentricity():
    g = named("Petersen")
    for v in range(10):
        dist = bfs_distances(g, v)
        assert max(dist) == 2


def test_components():
    g = Graph(5, [(0, 1), (1, 2), (3, 4)])
    assert connected_components(g) == [[0, 1, 2], [3, 4]]
    assert len(connected_components(Graph(4, []))) == 4
    assert len(connected_components(named("C_6"))) == 1


def test_degeneracy_orientation_triangle():
    o = degeneracy_orientation(named("K_3"))
    indeg = sorted(o.in_degrees())
    assert indeg == [0, 1, 2]


def test_degeneracy_orientation_tree():
    o = degeneracy_orientation(named("P_7"))
    assert max(o.in_degrees()) == 1


def test_degeneracy_orientation_petersen():
    o = degeneracy_orientation(named("Petersen"))
    assert max(o.in_degrees()) == 3
    assert degeneracy(named("Petersen")) == 3


def test_degeneracy_matches_peeling_oracle():
    for seed in range(40):
        n = 2 + seed % 9
        g = random_graph(n, 20 + (seed * 17) % 70, seed=seed)
        o = degeneracy_orientation(g)
        assert max(o.in_degrees(), default=0) == degeneracy_oracle(g), g.edges


def test_orientation_is_acyclic():
    g = random_graph(9, 50, seed=5)
    o = degeneracy_orientation(g)
    out = o.out_neighbors()
    state = [0] * g.n

    def has_cycle(v):
        state[v] = 1
        for w in out[v]:
            if state[w] == 1 or (state[w] == 0 and has_cycle(w)):
                return True
        state[v] = 2
        return False

    assert not any(state[v] == 0 and has_cycle(v) for v in range(g.n))


def test_clique_chromatic_k4():
    g = named("K_4")
    assert clique_number(g) == 4
    assert chromatic_number(g) == 4


def test_clique_chromatic_c5():
    g = named("C_5")
    assert clique_number(g) == 2
    assert chromatic_number(g) == 3


def test_clique_chromatic_petersen():
    g = named("Petersen")
    assert clique_number(g) == 2
    assert chromatic_number(g) == 3


def test_exact_limits_refuse():
    with pytest.raises(SizeLimitError):
        clique_number(named("Clebsch"), exact_limit=10)
    with pytest.raises(SizeLimitError):
        chromatic_number(named("Clebsch"))
