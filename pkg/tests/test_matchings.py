import math
from itertools import combinations

from hermspec.graphs import (
    Graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    path_graph,
    petersen_graph,
)
from hermspec.matchings import matching_counts, matching_polynomial, matching_radius
from hermspec.polynomials import is_real_rooted, real_roots
from hermspec.spectral import adjacency_char_poly

SQRT3 = 1.7320508075688772
C4_RADIUS = 1.8477590650225735  # sqrt(2 + sqrt(2))


def subset_enumeration_counts(g):
    """Independent oracle: count disjoint edge subsets directly."""
    out = [1]
    for size in range(1, g.n // 2 + 1):
        c = 0
        for sub in combinations(g.edges, size):
            verts = set()
            ok = True
            for u, v in sub:
                if u in verts or v in verts:
                    ok = False
                    break
                verts.update((u, v))
            if ok:
                c += 1
        out.append(c)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


class TestCounts:
    def test_k3(self):
        assert matching_counts(complete_graph(3)) == [1, 3]

    def test_c4(self):
        assert matching_counts(cycle_graph(4)) == [1, 4, 2]

    def test_edgeless(self):
        assert matching_counts(Graph(5, ())) == [1]

    def test_petersen_against_oracle(self):
        g = petersen_graph()
        assert matching_counts(g) == subset_enumeration_counts(g)

    def test_recursion_equals_subset_enumeration_on_corpus(self, corpus):
        for g in corpus:
            if g.m <= 12:
                assert matching_counts(g) == subset_enumeration_counts(g), g


class TestPolynomial:
    def test_k3(self):
        assert matching_polynomial(complete_graph(3)).coeffs == (0, -3, 0, 1)

    def test_c4(self):
        assert matching_polynomial(cycle_graph(4)).coeffs == (2, 0, -4, 0, 1)

    def test_p3(self):
        assert matching_polynomial(path_graph(3)).coeffs == (0, -2, 0, 1)

    def test_k33(self):
        assert matching_polynomial(complete_bipartite_graph(3, 3)).coeffs == (-6, 0, 18, 0, -9, 0, 1)

    def test_trees_match_adjacency_char_poly(self, trees):
        for g in trees:
            assert matching_polynomial(g) == adjacency_char_poly(g)


class TestRadius:
    def test_k3(self):
        assert abs(matching_radius(complete_graph(3)) - SQRT3) < 1e-9

    def test_c4_closed_form(self):
        expect = math.sqrt(2 + math.sqrt(2))
        assert abs(expect - C4_RADIUS) < 1e-15
        assert abs(matching_radius(cycle_graph(4)) - C4_RADIUS) < 1e-9

    def test_k2(self):
        assert abs(matching_radius(path_graph(2)) - 1.0) < 1e-12


class TestInvariants:
    def test_real_rooted_and_symmetric_on_sample(self, corpus):
        for g in corpus[::17]:
            mu = matching_polynomial(g)
            assert is_real_rooted(mu)
            roots = real_roots(mu)
            for i in range(len(roots)):
                assert abs(roots[i] + roots[-1 - i]) < 1e-9
