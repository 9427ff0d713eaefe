"""Orientation searches over the assignment tree of edge signs.

Signing the canonical edges one at a time yields a binary tree whose nodes
carry the averaged characteristic polynomial over all completions. The root
average is the matching polynomial, siblings always admit a common
interlacer, and walking the tree greedily toward the smaller (or larger)
largest root realizes an orientation whose spectral radius is at most (at
least) the matching-polynomial radius.

Node polynomials are stored as exact integer coefficient sums (averages are
sums divided by a power of two, recovered on demand); the witness check uses
the sum normalization directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import CapExceededError, InvariantError, NotRealRootedError
from .graphs import Graph, Orientation, check_prefix
from .matchings import matching_radius
from .polynomials import (
    DEFAULT_SEED,
    Polynomial,
    _lambda_samples,
    convex_combination,
    is_real_rooted,
    largest_root,
    real_roots,
)
from .spectral import eigenvalues, hermitian_matrix, spectral_radius

BRUTE_CAP_EDGES = 20     # full 2^m orientation enumeration
FAMILY_CAP_EDGES = 12    # full assignment-tree verification
TREE_CAP_EDGES = 14      # cached exact sum tree

# uncertainty bands: float verdicts inside these margins are re-decided exactly
_ESCALATE_MARGIN = 1e-6


class ConditionalTree:
    """Exact sums of leaf characteristic polynomials over every sign prefix.

    levels[k] is a (2^k, n+1) int64 array of ascending coefficients;
    levels[k][p] is the sum of det(xI - H) over all completions of prefix p.
    Prefix p encodes sign s_i as bit k-1-i, with +1 as bit 0.
    """

    def __init__(self, g: Graph):
        if g.m > TREE_CAP_EDGES:
            raise CapExceededError(f"tree needs m <= {TREE_CAP_EDGES}, got {g.m}")
        self.graph = g
        n, m = g.n, g.m
        total = 1 << m
        leaves = np.zeros((total, n + 1), np.int64)
        chunk = 4096
        for start in range(0, total, chunk):
            stop = min(start + chunk, total)
            signs = _kernels.orientation_sign_batch(m, start, stop)
            W = _kernels.skew_from_signs(list(g.edges), n, signs)
            pr, pi = _kernels.charpoly_gaussian_batch(np.zeros_like(W), W)
            if np.any(pi != 0):
                raise InvariantError("imaginary coefficient in orientation char poly")
            leaves[start:stop] = pr[:, ::-1]
        levels = [leaves]
        for _ in range(m):
            top = levels[0]
            levels.insert(0, top[0::2] + top[1::2])
        if int(np.abs(levels[0]).max()) >= _kernels.INT64_GUARD:
            raise InvariantError("tree sums exceed the int64 guard")
        self.levels = levels

    def prefix_index(self, prefix: Sequence[int]) -> int:
        idx = 0
        for s in prefix:
            idx = (idx << 1) | (0 if s == 1 else 1)
        return idx

    def node_sum(self, prefix: Sequence[int]) -> np.ndarray:
        k = len(prefix)
        return self.levels[k][self.prefix_index(prefix)]

    def node_average(self, prefix: Sequence[int]) -> Polynomial:
        k = len(prefix)
        denom = 1 << (self.graph.m - k)
        return Polynomial.from_exact(
            [Fraction(int(c), denom) for c in self.node_sum(prefix)]
        )


@lru_cache(maxsize=4)
def conditional_tree(g: Graph) -> ConditionalTree:
    return ConditionalTree(g)


@dataclass(frozen=True)
class AssignmentNode:
    """A node of the assignment tree: a sign prefix and its averaged polynomial."""

    graph: Graph
    prefix: tuple[int, ...]
    polynomial: Polynomial


def assignment_node(g: Graph, prefix: Sequence[int]) -> AssignmentNode:
    pa = check_prefix(g, prefix)
    return AssignmentNode(g, pa, expected_charpoly_brute(g, pa))


# -- conditional expectation polynomials --------------------------------------

def expected_charpoly_brute(g: Graph, prefix: Sequence[int] = (),
                            cap: int = BRUTE_CAP_EDGES) -> Polynomial:
    """Exact average of det(xI - H) over all completions of the prefix.

    Enumerates every completion and averages the exact characteristic
    polynomials; this is the ground-truth oracle for the mixed expansion in
    expected_charpoly_fast. Rejects when more than `cap` edges are undecided.
    """
    pa = check_prefix(g, prefix)
    k, m, n = len(pa), g.m, g.n
    rem = m - k
    if rem > cap:
        raise CapExceededError(
            f"{rem} undecided edges exceeds cap {cap}; use expected_charpoly_fast"
        )
    if m <= TREE_CAP_EDGES:
        return conditional_tree(g).node_average(pa)
    total = 1 << rem
    acc = [0] * (n + 1)
    chunk = 4096
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        comp = _kernels.orientation_sign_batch(rem, start, stop)
        signs = np.concatenate(
            [np.repeat([list(pa)], stop - start, axis=0).astype(np.int64), comp], axis=1
        ) if k else comp
        W = _kernels.skew_from_signs(list(g.edges), n, signs)
        pr, pi = _kernels.charpoly_gaussian_batch(np.zeros_like(W), W)
        if np.any(pi != 0):
            raise InvariantError("imaginary coefficient in orientation char poly")
        sums = pr.sum(axis=0, dtype=np.int64)[::-1]
        for i, v in enumerate(sums):
            acc[i] += int(v)
    return Polynomial.from_exact([Fraction(c, total) for c in acc])


def _matchings_of(edges: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    """All matchings among `edges` as (vertex bitmask, size), empty included."""
    out: list[tuple[int, int]] = []

    def rec(i: int, used: int, size: int):
        if i == len(edges):
            out.append((used, size))
            return
        rec(i + 1, used, size)
        u, v = edges[i]
        bits = (1 << u) | (1 << v)
        if not used & bits:
            rec(i + 1, used | bits, size + 1)

    rec(0, 0, 0)
    return out


def _mixed_expansion_rows(g: Graph, k: int, decided: np.ndarray,
                          matchings: list[tuple[int, int]]) -> np.ndarray:
    """Shared core of the mixed expansion.

    decided: (B, n, n) int64 skew matrices of the decided edges only.
    Returns (B, n+1) int64 ascending coefficients of the exact conditional
    average sum over matchings M of undecided edges of
    (-1)^|M| det(xI - H_decided[V minus V(M)]).
    """
    n = g.n
    B = decided.shape[0]
    acc = np.zeros((B, n + 1), np.int64)
    keeps: dict[int, list[list[int]]] = {}
    for mask, size in matchings:
        keep = [v for v in range(n) if not (mask >> v) & 1]
        keeps.setdefault(size, []).append(keep)
    for size, keep_list in keeps.items():
        d = n - 2 * size
        sign = -1 if size % 2 else 1
        if d == 0:
            acc[:, 0] += sign * len(keep_list)
            continue
        minors = np.empty((B * len(keep_list), d, d), np.int64)
        for t, keep in enumerate(keep_list):
            minors[t * B:(t + 1) * B] = decided[:, keep][:, :, keep]
        pr, pi = _kernels.charpoly_gaussian_batch(np.zeros_like(minors), minors)
        if np.any(pi != 0):
            raise InvariantError("imaginary coefficient in mixed expansion minor")
        terms = pr[:, ::-1].reshape(len(keep_list), B, d + 1).sum(axis=0)
        acc[:, :d + 1] += sign * terms
    return acc


def expected_charpoly_fast(g: Graph, prefix: Sequence[int] = (),
                           _matchings: list[tuple[int, int]] | None = None) -> Polynomial:
    """Conditional average char poly by the mixed matching expansion.

    Averaging det(xI - H) over the undecided signs kills every permutation
    cycle that touches an undecided edge except bare transpositions, so the
    average collapses to a sum over matchings M of undecided edges of
    (-1)^|M| det(xI - H_dec[V minus V(M)]) with H_dec built from the decided
    edges alone. Exact integer output; no cap.
    """
    pa = check_prefix(g, prefix)
    k, n = len(pa), g.n
    if _matchings is None:
        _matchings = _matchings_of(g.edges[k:])
    signs = np.zeros((1, k), np.int64)
    if k:
        signs[0] = pa
    decided = _kernels.skew_from_signs(list(g.edges[:k]), n, signs)
    acc = _mixed_expansion_rows(g, k, decided, _matchings)
    return Polynomial.from_exact([int(c) for c in acc[0]])


def expected_charpoly_fast_level(g: Graph, k: int) -> np.ndarray:
    """Mixed-expansion conditional averages for ALL 2^k prefixes at once.

    Returns (2^k, n+1) int64 ascending coefficients, row p matching
    ConditionalTree prefix index p. Used to cross the two oracles over an
    entire tree level in one shot.
    """
    if k > g.m:
        raise ValueError("k exceeds edge count")
    matchings = _matchings_of(g.edges[k:])
    signs = _kernels.orientation_sign_batch(k, 0, 1 << k)
    decided = _kernels.skew_from_signs(list(g.edges[:k]), g.n, signs)
    return _mixed_expansion_rows(g, k, decided, matchings)


# -- greedy searches -----------------------------------------------------------

def _greedy(g: Graph, tol: float, maximize: bool) -> Orientation:
    prefix: list[int] = []
    for k in range(g.m):
        matchings = _matchings_of(g.edges[k + 1:])
        root_of = {}
        for t in (1, -1):
            child = expected_charpoly_fast(g, prefix + [t], _matchings=matchings)
            try:
                root_of[t] = largest_root(child, tol)
            except NotRealRootedError as exc:
                raise InvariantError(
                    f"conditional polynomial at depth {k + 1} is not real-rooted"
                ) from exc
        if maximize:
            pick = 1 if root_of[1] >= root_of[-1] - tol else -1
        else:
            pick = 1 if root_of[1] <= root_of[-1] + tol else -1
        prefix.append(pick)
    return Orientation(tuple(prefix))


def greedy_orient_min(g: Graph, tol: float = 1e-10) -> tuple[Orientation, float]:
    """Orientation with smallest largest-eigenvalue along the greedy walk.

    At each depth the child with the smaller largest root of its conditional
    polynomial is chosen (ties break to +1); sibling pairs always have a
    common interlacer, so the walk never increases the largest root and the
    result satisfies lambda_1 <= matching_radius(g) + tol.
    """
    o = _greedy(g, tol, maximize=False)
    lam1 = eigenvalues(hermitian_matrix(g, o))[0] if g.n else 0.0
    return o, lam1


def greedy_orient_max(g: Graph, tol: float = 1e-10) -> tuple[Orientation, float]:
    """Same walk maximizing the largest root; returns (orientation, rho)."""
    o = _greedy(g, tol, maximize=True)
    rho = spectral_radius(hermitian_matrix(g, o)) if g.n else 0.0
    return o, rho


# -- exhaustive enumeration ----------------------------------------------------

@dataclass(frozen=True)
class BruteForceExtremes:
    min_orientation: Orientation
    min_lambda1: float
    max_orientation: Orientation
    max_rho: float
    histogram: dict[float, int]


def _signs_for_index(m: int, idx: int) -> tuple[int, ...]:
    return tuple(1 - 2 * ((idx >> (m - 1 - i)) & 1) for i in range(m))


def _extremes_chunk(args):
    edges, n, m, start, stop, tol, bucket = args
    signs = _kernels.orientation_sign_batch(m, start, stop)
    W = _kernels.skew_from_signs(list(edges), n, signs)
    vals = _kernels.hermitian_eigvals_batch(W, tol)
    lam1 = vals[:, 0] if n else np.zeros(stop - start)
    lamn = vals[:, -1] if n else np.zeros(stop - start)
    rho = np.maximum(lam1, -lamn)
    imin = int(np.argmin(lam1))
    imax = int(np.argmax(rho))
    hist: dict[int, int] = {}
    for b, c in zip(*np.unique(np.rint(rho / bucket).astype(np.int64), return_counts=True)):
        hist[int(b)] = int(c)
    return (float(lam1[imin]), start + imin, float(rho[imax]), start + imax, hist)


def brute_force_extremes(g: Graph, tol: float = 1e-10, cap: int = BRUTE_CAP_EDGES,
                         workers: int = 1) -> BruteForceExtremes:
    """Exact min of lambda_1 and max of rho over all 2^m orientations.

    Histogram buckets spectral radii to the tolerance. Ties resolve to the
    smallest orientation index, so results are identical for any worker
    count; chunk boundaries are fixed independently of `workers`.
    """
    if g.m > cap:
        raise CapExceededError(f"m={g.m} exceeds brute-force cap {cap}")
    m, n = g.m, g.n
    total = 1 << m
    bucket = max(tol, 1e-12)
    chunk = 4096
    tasks = [(g.edges, n, m, s, min(s + chunk, total), tol, bucket)
             for s in range(0, total, chunk)]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_extremes_chunk, tasks))
    else:
        results = [_extremes_chunk(t) for t in tasks]
    best_min = (np.inf, -1)
    best_max = (-np.inf, -1)
    hist: dict[int, int] = {}
    for lam1, i1, rho, i2, h in results:
        if lam1 < best_min[0] or (lam1 == best_min[0] and i1 < best_min[1]):
            best_min = (lam1, i1)
        if rho > best_max[0] or (rho == best_max[0] and i2 < best_max[1]):
            best_max = (rho, i2)
        for b, c in h.items():
            hist[b] = hist.get(b, 0) + c
    histogram = {float(b * bucket): c for b, c in sorted(hist.items())}
    return BruteForceExtremes(
        Orientation(_signs_for_index(m, best_min[1])), best_min[0],
        Orientation(_signs_for_index(m, best_max[1])), best_max[0],
        histogram,
    )


# -- interlacing-family verification -------------------------------------------

@dataclass
class FamilyCheckReport:
    nodes: int
    internal_pairs: int
    failures: list[dict] = field(default_factory=list)
    escalations: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures


def _node_polynomial(row: np.ndarray) -> Polynomial:
    return Polynomial.from_exact([int(c) for c in row])


def _exact_real_rooted(row: np.ndarray) -> bool:
    return is_real_rooted(_node_polynomial(row))


def _exact_roots(row: np.ndarray) -> np.ndarray:
    return np.array(real_roots(_node_polynomial(row)))


def verify_interlacing_family(g: Graph, tol: float = 1e-9,
                              cap: int = FAMILY_CAP_EDGES,
                              seed: int = DEFAULT_SEED) -> FamilyCheckReport:
    """Check the interlacing-family structure over the full assignment tree.

    For every node: the conditional polynomial is real-rooted. For every
    internal node: its two children satisfy the common-interlacing interval
    criterion at tol, and every sampled convex combination of them is
    real-rooted. Verdicts come from vectorized floating kernels; any node or
    pair whose margin falls inside an uncertainty band is re-decided with
    exact arithmetic (Sturm counts, rational convex combinations), so a pass
    is never a rounding accident. Failures are reported, not raised.
    """
    if g.m > cap:
        raise CapExceededError(f"m={g.m} exceeds family verification cap {cap}")
    tree = conditional_tree(g)
    n, m = g.n, g.m
    report = FamilyCheckReport(nodes=(1 << (m + 1)) - 1, internal_pairs=(1 << m) - 1)
    lams = _lambda_samples(seed)
    lam_f = np.array([float(x) for x in lams])

    level_roots: list[np.ndarray] = []
    for k in range(m + 1):
        level = tree.levels[k]
        roots, ok, unsure = _kernels.symmetric_real_roots_batch(level, n)
        for p in np.nonzero(unsure | ~ok)[0]:
            report.escalations += 1
            row = level[p]
            if _exact_real_rooted(row):
                roots[p] = _exact_roots(row)
            else:
                report.failures.append(
                    {"kind": "real_rooted", "depth": k, "prefix_index": int(p)}
                )
        level_roots.append(roots)

    for k in range(m):
        child = level_roots[k + 1]
        a, b = child[0::2], child[1::2]
        if n >= 2:
            upper = np.minimum(a[:, 1:], b[:, 1:])
            lower = np.maximum(a[:, :-1], b[:, :-1])
            margin = (upper - lower).min(axis=1)
        else:
            margin = np.full(a.shape[0], np.inf)
        clear_pass = margin >= -tol + _ESCALATE_MARGIN
        clear_fail = margin < -tol - _ESCALATE_MARGIN
        for p in np.nonzero(~clear_pass & ~clear_fail)[0]:
            report.escalations += 1
            ra = _exact_roots(tree.levels[k + 1][2 * p])
            rb = _exact_roots(tree.levels[k + 1][2 * p + 1])
            mg = float((np.minimum(ra[1:], rb[1:]) - np.maximum(ra[:-1], rb[:-1])).min()) if n >= 2 else np.inf
            if mg < -tol:
                clear_fail[p] = True
        for p in np.nonzero(clear_fail)[0]:
            report.failures.append(
                {"kind": "interval_criterion", "depth": k, "prefix_index": int(p)}
            )

        # convex combinations of sibling coefficient rows, all lambdas at once
        ca = tree.levels[k + 1][0::2].astype(float)
        cb = tree.levels[k + 1][1::2].astype(float)
        combos = lam_f[None, :, None] * ca[:, None, :] + (1 - lam_f)[None, :, None] * cb[:, None, :]
        flat = combos.reshape(-1, n + 1)
        _, cok, cunsure = _kernels.symmetric_real_roots_batch(flat, n)
        bad = ~cok | cunsure
        for idx in np.nonzero(bad)[0]:
            pair, li = divmod(int(idx), len(lams))
            report.escalations += 1
            fa = _node_polynomial(tree.levels[k + 1][2 * pair])
            fb = _node_polynomial(tree.levels[k + 1][2 * pair + 1])
            combo = convex_combination(fa, fb, lams[li])
            if not is_real_rooted(combo):
                report.failures.append(
                    {"kind": "convex_combination", "depth": k,
                     "prefix_index": int(pair), "lam": str(lams[li])}
                )
    return report


# -- rank-one witness for the convex-combination identity -----------------------

@dataclass
class WitnessReport:
    k: int
    lam: object
    terms: int
    max_coeff_diff: float
    coefficients_match: bool
    q_real_rooted: bool
    delta_psd: bool

    @property
    def passed(self) -> bool:
        return self.coefficients_match and self.q_real_rooted and self.delta_psd


def witness_vectors(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """Per-edge vectors a_j = e_u - i e_v and b_j = e_u + i e_v (u < v)."""
    a = np.zeros((g.m, g.n), complex)
    b = np.zeros((g.m, g.n), complex)
    for j, (u, v) in enumerate(g.edges):
        a[j, u] = 1.0
        a[j, v] = -1j
        b[j, u] = 1.0
        b[j, v] = 1j
    return a, b


def witness_probabilities(g: Graph, prefix: Sequence[int], lam) -> list[Fraction]:
    """p_j = (s_j + 1)/2 on the prefix, lam at the pivot edge, 1/2 beyond."""
    pa = check_prefix(g, prefix)
    if len(pa) >= g.m:
        raise ValueError("prefix must leave at least one edge undecided")
    p = [Fraction(s + 1, 2) for s in pa]
    p.append(Fraction(lam) if not isinstance(lam, float) else lam)
    p.extend([Fraction(1, 2)] * (g.m - len(pa) - 1))
    return p


def block_sum_reconstruction(g: Graph, o: Orientation) -> bool:
    """Entrywise check that the rank-one blocks rebuild D - H(G^sigma).

    With S collecting the edges signed -1, sum_{j in S} a_j a_j* +
    sum_{j not in S} b_j b_j* equals the degree diagonal minus the Hermitian
    adjacency matrix, exactly.
    """
    a, b = witness_vectors(g)
    total = np.zeros((g.n, g.n), complex)
    for j in range(g.m):
        vec = a[j] if o.signs[j] == -1 else b[j]
        total += np.outer(vec, vec.conj())
    D = np.diag([float(d) for d in g.degrees])
    H = hermitian_matrix(g, o).to_array()
    return bool(np.array_equal(total, D - H))


def witness_check(g: Graph, prefix: Sequence[int], lam, tol: float = 1e-9) -> WitnessReport:
    """Verify the mixed-determinant identity behind sibling convex combinations.

    LHS: q = lam * f_{prefix,+1} + (1-lam) * f_{prefix,-1} with the children
    stored as sums over completions. RHS: direct enumeration of the subsets S
    with nonzero weight (S must contain every prefix edge signed +1 and avoid
    every prefix edge signed -1), each contributing
    det(xI - D + sum_{j in S} a_j a_j* + sum_{j not in S} b_j b_j*)
    built literally from the rank-one blocks, weighted lam or (1-lam) by the
    pivot edge's membership. Exact coefficient comparison when lam is
    rational; also reports real-rootedness of q and that (max degree) I - D
    is positive semidefinite.
    """
    pa = check_prefix(g, prefix)
    k, m, n = len(pa), g.m, g.n
    if k >= m:
        raise ValueError("witness check needs an undecided edge (k < m)")
    if m > TREE_CAP_EDGES:
        raise CapExceededError(f"witness check needs m <= {TREE_CAP_EDGES}")
    exact = not isinstance(lam, float)
    lam_fr = Fraction(lam) if exact else None

    tree = conditional_tree(g)
    s_plus = tree.node_sum(pa + (1,))
    s_minus = tree.node_sum(pa + (-1,))

    rem = m - k
    B = 1 << rem
    member_bits = ((np.arange(B)[:, None] >> np.arange(rem - 1, -1, -1)[None, :]) & 1).astype(np.int64)
    # imag part of sum of blocks at (u_j, v_j): +1 if j in S else -1
    im_blocks = np.zeros((B, n, n), np.int64)
    re_blocks = np.zeros((B, n, n), np.int64)
    for j, (u, v) in enumerate(g.edges):
        if j < k:
            val = np.full(B, 1 if pa[j] == 1 else -1, np.int64)
        else:
            val = 2 * member_bits[:, j - k] - 1
        im_blocks[:, u, v] += val
        im_blocks[:, v, u] -= val
        re_blocks[:, u, u] += 1
        re_blocks[:, v, v] += 1
    D = np.zeros((n, n), np.int64)
    for v in range(n):
        D[v, v] = g.degrees[v]
    a_re = D[None, :, :] - re_blocks
    a_im = -im_blocks
    pr, pi = _kernels.charpoly_gaussian_batch(a_re, a_im)
    if np.any(pi != 0):
        raise InvariantError("imaginary coefficient in witness determinant")
    asc = pr[:, ::-1]
    with_pivot = member_bits[:, 0] == 1
    sum_in = asc[with_pivot].sum(axis=0, dtype=np.int64)
    sum_out = asc[~with_pivot].sum(axis=0, dtype=np.int64)

    if exact:
        lhs = [lam_fr * int(x) + (1 - lam_fr) * int(y) for x, y in zip(s_plus, s_minus)]
        rhs = [lam_fr * int(x) + (1 - lam_fr) * int(y) for x, y in zip(sum_in, sum_out)]
        diffs = [abs(float(x - y)) for x, y in zip(lhs, rhs)]
        match = all(x == y for x, y in zip(lhs, rhs))
        q = Polynomial.from_exact(lhs)
    else:
        lhs_f = lam * s_plus.astype(float) + (1 - lam) * s_minus.astype(float)
        rhs_f = lam * sum_in.astype(float) + (1 - lam) * sum_out.astype(float)
        scale = 1.0 + np.abs(lhs_f).max()
        diffs = list(np.abs(lhs_f - rhs_f) / scale)
        match = max(diffs) <= tol
        q = Polynomial.from_floats(list(lhs_f))
    q_rr = is_real_rooted(q) if q.exact else is_real_rooted(q, max(tol, 1e-7))
    delta = max(g.degrees) if g.n else 0
    psd = all(delta - d >= 0 for d in g.degrees)
    return WitnessReport(
        k=k, lam=lam, terms=B, max_coeff_diff=float(max(diffs, default=0.0)),
        coefficients_match=bool(match), q_real_rooted=bool(q_rr), delta_psd=psd,
    )
