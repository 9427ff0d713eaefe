import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hermspec.errors import EdgeListError
from hermspec.graphs import (
    Graph,
    Orientation,
    complete_graph,
    components,
    cycle_graph,
    graph_from_edges,
    graph_from_json,
    graph_to_json,
    induced_subgraph,
    orientation_from_json,
    orientation_to_json,
    parse_edge_list,
    path_graph,
    petersen_graph,
    serialize_edge_list,
    switch,
)
from hermspec.spectral import eigenvalues, hermitian_matrix


def random_graph(draw):
    n = draw(st.integers(min_value=1, max_value=8))
    all_edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(all_edges), unique=True, max_size=len(all_edges))) if all_edges else []
    return graph_from_edges(n, edges)


graphs = st.composite(random_graph)()


class TestParse:
    def test_k3_canonical_sort(self):
        g = parse_edge_list("0 1\n1 2\n0 2")
        assert g.n == 3
        assert g.edges == ((0, 1), (0, 2), (1, 2))

    def test_k2(self):
        g = parse_edge_list("0 1")
        assert (g.n, g.m) == (2, 1)

    def test_self_loop_rejected_with_line(self):
        with pytest.raises(EdgeListError, match="line 2"):
            parse_edge_list("0 1\n0 0")

    def test_duplicate_rejected_either_order(self):
        with pytest.raises(EdgeListError, match="duplicate"):
            parse_edge_list("0 1\n1 0")

    def test_non_integer_rejected(self):
        with pytest.raises(EdgeListError, match="non-integer"):
            parse_edge_list("0 x")

    def test_negative_rejected(self):
        with pytest.raises(EdgeListError):
            parse_edge_list("-1 2")

    def test_header_raises_n(self):
        g = parse_edge_list("n 5\n0 1")
        assert g.n == 5

    def test_header_too_small_rejected(self):
        with pytest.raises(EdgeListError):
            parse_edge_list("n 2\n0 3")

    def test_comments_and_blank_lines(self):
        g = parse_edge_list("# a triangle\n0 1\n\n1 2  # inline\n0 2\n")
        assert g.m == 3

    def test_empty_graph_header_only(self):
        g = parse_edge_list("n 3\n")
        assert (g.n, g.m) == (3, 0)

    @given(graphs)
    @settings(max_examples=50, deadline=None)
    def test_roundtrip_through_serialization(self, g):
        assert parse_edge_list(serialize_edge_list(g)) == g


class TestComponents:
    def test_k3_single_component(self):
        assert components(complete_graph(3)) == [[0, 1, 2]]

    def test_two_disjoint_edges(self):
        g = graph_from_edges(4, [(0, 1), (2, 3)])
        assert components(g) == [[0, 1], [2, 3]]

    def test_single_vertex(self):
        assert components(Graph(1, ())) == [[0]]

    @given(graphs)
    @settings(max_examples=50, deadline=None)
    def test_partition_property(self, g):
        comps = components(g)
        seen = [v for c in comps for v in c]
        assert sorted(seen) == list(range(g.n))
        owner = {v: i for i, c in enumerate(comps) for v in c}
        for u, v in g.edges:
            assert owner[u] == owner[v]


class TestSwitch:
    def test_k3_single_vertex_cut(self):
        g = complete_graph(3)
        o = Orientation((1, 1, -1))
        flipped = switch(g, o, {0})
        assert flipped.signs == (-1, -1, -1)

    def test_empty_set_identity(self):
        g = cycle_graph(4)
        o = Orientation((1, -1, 1, -1))
        assert switch(g, o, set()) == o

    def test_full_vertex_set_identity(self):
        g = cycle_graph(4)
        o = Orientation((1, -1, 1, -1))
        assert switch(g, o, set(range(4))) == o

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            switch(complete_graph(3), Orientation((1, 1, 1)), {5})

    @given(graphs, st.data())
    @settings(max_examples=40, deadline=None)
    def test_switching_preserves_spectrum(self, g, data):
        signs = tuple(data.draw(st.sampled_from((1, -1))) for _ in range(g.m))
        s = data.draw(st.sets(st.integers(min_value=0, max_value=g.n - 1)))
        o = Orientation(signs)
        before = eigenvalues(hermitian_matrix(g, o))
        after = eigenvalues(hermitian_matrix(g, switch(g, o, s)))
        assert np.allclose(before, after, atol=1e-9)


class TestConstructorsAndJson:
    def test_petersen_shape(self):
        g = petersen_graph()
        assert (g.n, g.m) == (10, 15)
        assert set(g.degrees) == {3}

    def test_path_and_cycle(self):
        assert path_graph(4).m == 3
        assert cycle_graph(5).m == 5

    def test_induced_subgraph(self):
        g = complete_graph(4)
        sub = induced_subgraph(g, [1, 2, 3])
        assert sub == complete_graph(3)

    def test_graph_json_roundtrip(self):
        g = petersen_graph()
        assert graph_from_json(graph_to_json(g)) == g

    def test_orientation_json_roundtrip(self):
        o = Orientation((1, -1, 1))
        assert orientation_from_json(orientation_to_json(o)) == o

    def test_bad_orientation_values(self):
        with pytest.raises(ValueError):
            Orientation((1, 0, -1))

    def test_unsorted_edges_rejected(self):
        with pytest.raises(ValueError):
            Graph(3, ((1, 2), (0, 1)))
