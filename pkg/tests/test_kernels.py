"""Cross-checks tying the vectorized kernels to scalar and oracle routes."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hermspec import _kernels
from hermspec.errors import InvariantError
from hermspec.graphs import complete_graph, cycle_graph
from hermspec.polynomials import Polynomial, is_real_rooted, real_roots


@st.composite
def gaussian_matrices(draw):
    n = draw(st.integers(min_value=1, max_value=6))
    ints = st.integers(min_value=-3, max_value=3)
    re = [[draw(ints) for _ in range(n)] for _ in range(n)]
    im = [[draw(ints) for _ in range(n)] for _ in range(n)]
    return re, im


class TestBerkowitz:
    @given(gaussian_matrices())
    @settings(max_examples=60, deadline=None)
    def test_batched_matches_scalar(self, mat):
        re, im = mat
        pr, pi = _kernels.charpoly_exact_scalar(re, im)
        bre = np.array([re], np.int64)
        bim = np.array([im], np.int64)
        bpr, bpi = _kernels.charpoly_gaussian_batch(bre, bim)
        assert list(bpr[0]) == pr
        assert list(bpi[0]) == pi

    @given(gaussian_matrices())
    @settings(max_examples=40, deadline=None)
    def test_scalar_matches_numpy_determinant_expansion(self, mat):
        re, im = mat
        n = len(re)
        A = np.array(re, float) + 1j * np.array(im, float)
        pr, pi = _kernels.charpoly_exact_scalar(re, im)
        got = np.array(pr, float) + 1j * np.array(pi, float)
        # oracle: numpy's characteristic polynomial from eigenvalues
        expect = np.poly(A) if n else np.array([1.0])
        assert np.allclose(got, expect, atol=1e-6 * (1 + np.abs(expect).max()))

    def test_all_orientations_of_c4(self):
        g = cycle_graph(4)
        signs = _kernels.orientation_sign_batch(4, 0, 16)
        W = _kernels.skew_from_signs(list(g.edges), 4, signs)
        pr, pi = _kernels.charpoly_gaussian_batch(np.zeros_like(W), W)
        assert np.all(pi == 0)
        for row, s in zip(pr, signs):
            sr, si = _kernels.charpoly_exact_scalar(
                [[0] * 4 for _ in range(4)],
                [[int(x) for x in wrow] for wrow in _kernels.skew_from_signs(list(g.edges), 4, s[None])[0]],
            )
            assert list(row) == sr

    def test_empty_matrix(self):
        pr, pi = _kernels.charpoly_exact_scalar([], [])
        assert (pr, pi) == ([1], [0])


class TestEigvalsBatch:
    def test_matches_complex_eigvalsh(self):
        rng = np.random.default_rng(7)
        g = complete_graph(5)
        signs = (1 - 2 * rng.integers(0, 2, size=(64, g.m))).astype(np.int64)
        W = _kernels.skew_from_signs(list(g.edges), g.n, signs)
        vals = _kernels.hermitian_eigvals_batch(W, 1e-10)
        for k in range(64):
            direct = np.linalg.eigvalsh(1j * W[k].astype(complex))[::-1]
            assert np.allclose(vals[k], direct, atol=1e-9)

    def test_rows_non_increasing(self):
        g = cycle_graph(6)
        signs = _kernels.orientation_sign_batch(6, 0, 64)
        W = _kernels.skew_from_signs(list(g.edges), g.n, signs)
        vals = _kernels.hermitian_eigvals_batch(W, 1e-10)
        assert np.all(np.diff(vals, axis=1) <= 1e-12)


class TestSignBatch:
    def test_prefix_ranges_are_contiguous(self):
        m, k = 5, 2
        signs = _kernels.orientation_sign_batch(m, 0, 1 << m)
        width = 1 << (m - k)
        for p in range(1 << k):
            block = signs[p * width:(p + 1) * width, :k]
            assert (block == block[0]).all()

    def test_bit_to_sign_convention(self):
        signs = _kernels.orientation_sign_batch(3, 0, 8)
        assert list(signs[0]) == [1, 1, 1]
        assert list(signs[7]) == [-1, -1, -1]
        assert list(signs[4]) == [-1, 1, 1]


class TestSymmetricRoots:
    def test_parity_violation_raises(self):
        with pytest.raises(InvariantError):
            _kernels.split_even_odd(np.array([[1, 1, 1]], np.int64), 2)

    def test_simple_even_poly(self):
        # x^4 - 4x^2 + 2
        c = np.array([[2, 0, -4, 0, 1]], np.int64)
        roots, ok, unsure = _kernels.symmetric_real_roots_batch(c, 4)
        assert ok[0] and not unsure[0]
        expect = real_roots(Polynomial.from_exact([2, 0, -4, 0, 1]))
        assert np.allclose(roots[0], expect, atol=1e-9)

    def test_double_roots_flagged_uncertain(self):
        c = np.array([[4, 0, -4, 0, 1]], np.int64)  # (x^2-2)^2
        roots, ok, unsure = _kernels.symmetric_real_roots_batch(c, 4)
        assert unsure[0]

    def test_x_squared_factor_stripped_exactly(self):
        c = np.array([[0, 0, -4, 0, 1]], np.int64)  # x^2 (x^2 - 4)
        roots, ok, unsure = _kernels.symmetric_real_roots_batch(c, 4)
        assert ok[0] and not unsure[0]
        assert np.allclose(roots[0], [-2, 0, 0, 2], atol=1e-12)

    def test_not_real_rooted_detected(self):
        # x^4 + 1: y^2 + 1 has no real y-roots
        c = np.array([[1, 0, 0, 0, 1]], np.int64)
        _, ok, unsure = _kernels.symmetric_real_roots_batch(c, 4)
        assert not ok[0] and not unsure[0]

    @given(st.lists(st.integers(min_value=-5, max_value=5), min_size=1, max_size=3))
    @settings(max_examples=60, deadline=None)
    def test_matches_exact_route_on_random_even_polys(self, yroots):
        # build p(x) = prod (x^2 - r) with small integer r
        p = Polynomial.from_exact([1])
        for r in yroots:
            p = p * Polynomial.from_exact([-r, 0, 1])
        n = 2 * len(yroots)
        c = np.array([[int(x) for x in p.coeffs]], np.int64)
        roots, ok, unsure = _kernels.symmetric_real_roots_batch(c, n)
        expect_real = is_real_rooted(p)
        if not unsure[0]:
            assert bool(ok[0]) == expect_real
            if ok[0]:
                assert np.allclose(roots[0], real_roots(p), atol=1e-7)
