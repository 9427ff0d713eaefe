"""Matching counts and the signed matching polynomial."""

from __future__ import annotations

from .errors import InvariantError
from .graphs import Graph
from .polynomials import Polynomial, largest_root, max_abs_root


def matching_counts(g: Graph) -> list[int]:
    """Exact counts [m_0, m_1, ...] of l-edge matchings, trailing zeros trimmed.

    Deletion recursion pivoting on a highest-degree vertex v of the residual
    induced subgraph: matchings either avoid v or pair it with a neighbor.
    States are vertex subsets, memoized as bitmasks.
    """
    nbr_mask = [0] * g.n
    for u, v in g.edges:
        nbr_mask[u] |= 1 << v
        nbr_mask[v] |= 1 << u
    memo: dict[int, tuple[int, ...]] = {}

    def counts(mask: int) -> tuple[int, ...]:
        hit = memo.get(mask)
        if hit is not None:
            return hit
        best_v, best_deg = -1, -1
        mm = mask
        while mm:
            v = (mm & -mm).bit_length() - 1
            mm &= mm - 1
            deg = (nbr_mask[v] & mask).bit_count()
            if deg > best_deg:
                best_v, best_deg = v, deg
        if best_deg <= 0:
            memo[mask] = (1,)
            return (1,)
        v = best_v
        rest = counts(mask & ~(1 << v))
        acc = list(rest)
        mm = nbr_mask[v] & mask
        while mm:
            u = (mm & -mm).bit_length() - 1
            mm &= mm - 1
            sub = counts(mask & ~(1 << v) & ~(1 << u))
            if len(acc) < len(sub) + 1:
                acc.extend([0] * (len(sub) + 1 - len(acc)))
            for l, c in enumerate(sub):
                acc[l + 1] += c
        out = tuple(acc)
        memo[mask] = out
        return out

    full = counts((1 << g.n) - 1)
    return list(full)


def matching_polynomial(g: Graph) -> Polynomial:
    """sum_j (-1)^j m_j x^(n-2j), exact integer coefficients, degree n."""
    counts = matching_counts(g)
    coeffs = [0] * (g.n + 1)
    for j, mj in enumerate(counts):
        coeffs[g.n - 2 * j] = (-1) ** j * mj
    return Polynomial.from_exact(coeffs)


def matching_radius(g: Graph, tol: float = 1e-10) -> float:
    """Largest absolute value of a root of the matching polynomial.

    The roots are symmetric about zero, so this equals the largest root;
    both are computed and the agreement is asserted.
    """
    mu = matching_polynomial(g)
    if g.n == 0:
        return 0.0
    hi = largest_root(mu, tol)
    rho = max_abs_root(mu, tol)
    if abs(hi - rho) > tol * (1.0 + abs(rho)):
        raise InvariantError(f"matching radius {rho} disagrees with largest root {hi}")
    return rho
