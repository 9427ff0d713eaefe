import json
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hermspec.graphs import (
    Graph,
    Orientation,
    complete_graph,
    cycle_graph,
    graph_from_edges,
    path_graph,
)
from hermspec.polynomials import real_roots
from hermspec.spectral import (
    HermitianMatrix,
    adjacency_char_poly,
    char_poly_exact,
    eigenvalues,
    eigenvalues_for_orientations,
    hermitian_matrix,
    spectral_radius,
    spectrum_to_json,
)

SQRT3 = 1.7320508075688772
SQRT2 = 1.4142135623730951


def all_orientations(m):
    for idx in range(1 << m):
        yield Orientation(tuple(1 - 2 * ((idx >> (m - 1 - i)) & 1) for i in range(m)))


class TestMatrixConstruction:
    def test_k2(self):
        h = hermitian_matrix(path_graph(2), Orientation((1,)))
        assert np.array_equal(h.to_array(), np.array([[0, 1j], [-1j, 0]]))

    def test_k3_cyclic_arcs(self):
        # arcs 0->1->2->0: sigma(0,1) = +1, sigma(0,2) = -1, sigma(1,2) = +1
        h = hermitian_matrix(complete_graph(3), Orientation((1, -1, 1)))
        assert h.entry(0, 1) == 1j
        assert h.entry(0, 2) == -1j
        assert h.entry(1, 2) == 1j
        assert h.entry(1, 0) == -1j

    def test_flipping_one_sign_negates_one_edge(self):
        g = complete_graph(3)
        a = hermitian_matrix(g, Orientation((1, 1, 1))).to_array()
        b = hermitian_matrix(g, Orientation((1, -1, 1))).to_array()
        diff = b - a
        assert diff[0, 2] == -2j and diff[2, 0] == 2j
        diff[0, 2] = diff[2, 0] = 0
        assert not diff.any()

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            hermitian_matrix(complete_graph(3), Orientation((1, 1)))

    def test_json_roundtrip(self):
        h = hermitian_matrix(cycle_graph(4), Orientation((1, -1, 1, 1)))
        assert HermitianMatrix.from_json(h.to_json()) == h

    def test_json_rejects_real_parts(self):
        with pytest.raises(ValueError):
            HermitianMatrix.from_json(json.dumps(
                {"n": 1, "entries": [[1, 0]]}
            ))


class TestEigenvalues:
    def test_k2_any_orientation(self):
        for o in all_orientations(1):
            vals = eigenvalues(hermitian_matrix(path_graph(2), o))
            assert np.allclose(vals, [1, -1], atol=1e-12)

    def test_k3_all_eight_cospectral(self):
        g = complete_graph(3)
        for o in all_orientations(3):
            h = hermitian_matrix(g, o)
            vals = eigenvalues(h)
            # independent oracle: dense complex eigensolver
            oracle = np.linalg.eigvalsh(h.to_array())[::-1]
            assert np.allclose(vals, oracle, atol=1e-10)
            assert np.allclose(vals, [SQRT3, 0, -SQRT3], atol=1e-9)

    def test_c4_grouped_by_cycle_product(self):
        g = cycle_graph(4)
        # traversing 0-1-2-3-0 uses edges (0,1),(1,2),(2,3) forward and (0,3) backward
        for o in all_orientations(4):
            s = dict(zip(g.edges, o.signs))
            product = s[(0, 1)] * s[(1, 2)] * s[(2, 3)] * -s[(0, 3)]
            vals = eigenvalues(hermitian_matrix(g, o))
            if product == 1:
                assert np.allclose(vals, [2, 0, 0, -2], atol=1e-9)
            else:
                assert np.allclose(vals, [SQRT2, SQRT2, -SQRT2, -SQRT2], atol=1e-9)

    def test_batched_helper_matches(self):
        g = cycle_graph(5)
        signs = np.array([[1, -1, 1, 1, -1], [1, 1, 1, 1, 1]])
        batch = eigenvalues_for_orientations(g, signs)
        for row, s in zip(batch, signs):
            assert np.allclose(row, eigenvalues(hermitian_matrix(g, Orientation(tuple(int(x) for x in s)))))


class TestCharPolyExact:
    def test_k2(self):
        p = char_poly_exact(hermitian_matrix(path_graph(2), Orientation((1,))))
        assert p.coeffs == (-1, 0, 1)

    def test_k3_any_orientation(self):
        for o in all_orientations(3):
            p = char_poly_exact(hermitian_matrix(complete_graph(3), o))
            assert p.coeffs == (0, -3, 0, 1)

    def test_c4_negative_product_class(self):
        g = cycle_graph(4)
        o = Orientation((1, 1, 1, 1))  # product -1 under the canonical traversal
        p = char_poly_exact(hermitian_matrix(g, o))
        assert p.coeffs == (4, 0, -4, 0, 1)

    def test_spec_radius_examples(self):
        assert abs(spectral_radius(hermitian_matrix(path_graph(2), Orientation((1,)))) - 1) < 1e-12
        assert abs(spectral_radius(hermitian_matrix(complete_graph(3), Orientation((1, 1, 1)))) - SQRT3) < 1e-9


@st.composite
def oriented_graph(draw, max_n=7):
    n = draw(st.integers(min_value=1, max_value=max_n))
    all_edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(all_edges), unique=True, max_size=len(all_edges))) if all_edges else []
    g = graph_from_edges(n, edges)
    signs = tuple(draw(st.sampled_from((1, -1))) for _ in range(g.m))
    return g, Orientation(signs)


class TestInvariants:
    @given(oriented_graph())
    @settings(max_examples=60, deadline=None)
    def test_spectrum_symmetric_about_zero(self, go):
        g, o = go
        vals = eigenvalues(hermitian_matrix(g, o))
        scale = 1 + (abs(vals[0]) if vals else 0)
        for i in range(len(vals)):
            assert abs(vals[i] + vals[-1 - i]) <= 1e-9 * scale

    @given(oriented_graph())
    @settings(max_examples=60, deadline=None)
    def test_char_poly_parity_and_edge_count(self, go):
        g, o = go
        p = char_poly_exact(hermitian_matrix(g, o))
        coeffs = p.coeffs
        for power in range(g.n + 1):
            if (g.n - power) % 2 == 1:
                assert coeffs[power] == 0
        if g.n >= 2:
            assert coeffs[g.n - 2] == -g.m

    @given(oriented_graph(max_n=6))
    @settings(max_examples=40, deadline=None)
    def test_eigenvalues_agree_with_exact_char_poly_roots(self, go):
        g, o = go
        h = hermitian_matrix(g, o)
        vals = sorted(eigenvalues(h))
        roots = real_roots(char_poly_exact(h))
        assert len(vals) == len(roots)
        assert all(abs(a - b) < 1e-8 for a, b in zip(vals, roots))

    def test_trees_cospectral_with_adjacency(self, trees):
        rng = random.Random(5)
        for g in trees:
            adj = adjacency_char_poly(g)
            for _ in range(min(4, 1 << g.m)):
                o = Orientation(tuple(rng.choice((1, -1)) for _ in range(g.m)))
                assert char_poly_exact(hermitian_matrix(g, o)) == adj

    def test_spectrum_json(self):
        assert json.loads(spectrum_to_json([1.0, -1.0])) == {"eigenvalues": [1.0, -1.0]}
