"""Hermitian adjacency matrices of oriented graphs: spectra and exact char polys.

For an orientation sigma, H has (u,v)-entry i*sigma(u,v), so H = i*W with W
an integer skew-symmetric matrix. Eigenvalues are computed through the
2n x 2n real-symmetric embedding (the only floating kernel is a symmetric
eigensolve); characteristic polynomials are computed exactly, division-free,
over Gaussian integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _kernels
from .errors import InvariantError
from .graphs import Graph, Orientation, check_orientation
from .polynomials import Polynomial

DEFAULT_EIG_TOL = 1e-10


@dataclass(frozen=True)
class HermitianMatrix:
    """Hermitian matrix with entries in {0, +i, -i} off the zero diagonal.

    Stored through its imaginary part: H = i * W with W skew-symmetric over
    {0, +1, -1}.
    """

    n: int
    imag: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.imag) != self.n or any(len(r) != self.n for r in self.imag):
            raise ValueError("imag part must be n x n")
        for u in range(self.n):
            if self.imag[u][u] != 0:
                raise ValueError("diagonal must be zero")
            for v in range(u + 1, self.n):
                if self.imag[u][v] not in (-1, 0, 1):
                    raise ValueError("entries must be 0 or +-i")
                if self.imag[v][u] != -self.imag[u][v]:
                    raise ValueError("matrix must be Hermitian")

    def entry(self, u: int, v: int) -> complex:
        return 1j * self.imag[u][v]

    @cached_property
    def imag_array(self) -> np.ndarray:
        return np.array(self.imag, dtype=np.int64)

    def to_array(self) -> np.ndarray:
        return 1j * self.imag_array.astype(np.complex128)

    def to_json(self) -> str:
        entries = [[0, int(self.imag[u][v])] for u in range(self.n) for v in range(self.n)]
        return json.dumps({"n": self.n, "entries": entries})

    @staticmethod
    def from_json(text: str) -> "HermitianMatrix":
        obj = json.loads(text)
        n = int(obj["n"])
        entries = obj["entries"]
        if len(entries) != n * n:
            raise ValueError("entries must be row-major n*n")
        imag = []
        for u in range(n):
            row = []
            for v in range(n):
                re, im = entries[u * n + v]
                if re != 0:
                    raise ValueError("real parts must be zero")
                row.append(int(im))
            imag.append(tuple(row))
        return HermitianMatrix(n, tuple(imag))


def hermitian_matrix(g: Graph, o: Orientation) -> HermitianMatrix:
    """H(g, o) with entry (u,v) equal to i times the sign of the arc u->v."""
    check_orientation(g, o)
    W = [[0] * g.n for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        W[u][v] = o.signs[i]
        W[v][u] = -o.signs[i]
    return HermitianMatrix(g.n, tuple(tuple(r) for r in W))


def eigenvalues(h: HermitianMatrix, tol: float = DEFAULT_EIG_TOL) -> list[float]:
    """Eigenvalues in non-increasing order, via the real-symmetric embedding."""
    vals = _kernels.hermitian_eigvals_batch(h.imag_array[None, :, :], tol)
    return [float(x) for x in vals[0]]


def char_poly_exact(h: HermitianMatrix) -> Polynomial:
    """Exact integer characteristic polynomial det(xI - H).

    Division-free Berkowitz expansion over Gaussian integers; every
    coefficient must come out with zero imaginary part, which is asserted.
    """
    re = [[0] * h.n for _ in range(h.n)]
    im = [list(r) for r in h.imag]
    pr, pi = _kernels.charpoly_exact_scalar(re, im)
    if any(x != 0 for x in pi):
        raise InvariantError("characteristic polynomial has nonzero imaginary part")
    return Polynomial.from_exact(pr[::-1])


def adjacency_char_poly(g: Graph) -> Polynomial:
    """Exact characteristic polynomial of the ordinary 0/1 adjacency matrix."""
    a = [[0] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        a[u][v] = 1
        a[v][u] = 1
    zeros = [[0] * g.n for _ in range(g.n)]
    pr, pi = _kernels.charpoly_exact_scalar(a, zeros)
    if any(x != 0 for x in pi):
        raise InvariantError("adjacency char poly has nonzero imaginary part")
    return Polynomial.from_exact(pr[::-1])


def spectral_radius(h: HermitianMatrix, tol: float = DEFAULT_EIG_TOL) -> float:
    """max(lambda_1, |lambda_n|); asserts it agrees with lambda_1, since the
    spectrum of any H(G^sigma) is symmetric about zero."""
    vals = eigenvalues(h, tol)
    if not vals:
        return 0.0
    rho = max(vals[0], abs(vals[-1]))
    if abs(rho - vals[0]) > tol * (1.0 + abs(rho)):
        raise InvariantError(
            f"spectral radius {rho} disagrees with lambda_1 {vals[0]}"
        )
    return rho


def eigenvalues_for_orientations(g: Graph, signs: np.ndarray,
                                 tol: float = DEFAULT_EIG_TOL) -> np.ndarray:
    """Spectra for a batch of orientations, rows non-increasing.

    signs: (B, m) array over {-1, +1}, one orientation per row.
    """
    W = _kernels.skew_from_signs(list(g.edges), g.n, np.asarray(signs, np.int64))
    return _kernels.hermitian_eigvals_batch(W, tol)


def spectrum_to_json(values: list[float]) -> str:
    return json.dumps({"eigenvalues": list(values)})
