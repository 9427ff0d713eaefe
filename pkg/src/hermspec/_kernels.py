"""Vectorized kernels behind the enumeration-heavy operations.

Everything here is an implementation detail: exact integer Berkowitz
characteristic polynomials (scalar and batched over orientations), the
real-symmetric embedding eigensolve, and fast real-root extraction for
batches of spectra-symmetric polynomials with escalation hooks for the
near-degenerate cases.
"""

from __future__ import annotations

import numpy as np

from .errors import InvariantError

INT64_GUARD = 1 << 62


def charpoly_exact_scalar(re: list[list[int]], im: list[list[int]]) -> tuple[list[int], list[int]]:
    """det(xI - A) for a Gaussian-integer matrix A = re + i*im.

    Division-free Berkowitz recursion over exact Python integers. Returns
    (real, imag) coefficient lists by descending power, leading 1.
    """
    n = len(re)
    if n == 0:
        return [1], [0]
    pr = [1, -re[0][0]]
    pi = [0, -im[0][0]]
    for k in range(2, n + 1):
        j = k - 1
        items_r = [1, -re[j][j]]
        items_i = [0, -im[j][j]]
        vr = [re[t][j] for t in range(j)]
        vi = [im[t][j] for t in range(j)]
        Rr = re[j][:j]
        Ri = im[j][:j]
        for t in range(k - 1):
            dr = di = 0
            for q in range(j):
                ar, ai, br, bi = Rr[q], Ri[q], vr[q], vi[q]
                dr += ar * br - ai * bi
                di += ar * bi + ai * br
            items_r.append(-dr)
            items_i.append(-di)
            if t < k - 2:
                nvr = [0] * j
                nvi = [0] * j
                for row in range(j):
                    mr = re[row]
                    mi = im[row]
                    sr = si = 0
                    for q in range(j):
                        ar, ai, br, bi = mr[q], mi[q], vr[q], vi[q]
                        sr += ar * br - ai * bi
                        si += ar * bi + ai * br
                    nvr[row] = sr
                    nvi[row] = si
                vr, vi = nvr, nvi
        npr = [0] * (k + 1)
        npi = [0] * (k + 1)
        for r in range(k + 1):
            lo = max(0, r - k)
            for i2 in range(lo, min(r, k - 1) + 1):
                tr, ti = items_r[r - i2], items_i[r - i2]
                qr, qi = pr[i2], pi[i2]
                npr[r] += tr * qr - ti * qi
                npi[r] += tr * qi + ti * qr
        pr, pi = npr, npi
    return pr, pi


def charpoly_gaussian_batch(re: np.ndarray, im: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Batched version of charpoly_exact_scalar over int64 arrays.

    re, im: (B, n, n). Returns (B, n+1) int64 pairs, descending powers.
    Intermediate magnitudes are guarded against int64 overflow; sizes in
    this package keep them tiny, but the guard turns a hypothetical wrap
    into a loud failure.
    """
    B, n, _ = re.shape
    if n == 0:
        return np.ones((B, 1), np.int64), np.zeros((B, 1), np.int64)
    pr = np.zeros((B, 2), np.int64)
    pi = np.zeros((B, 2), np.int64)
    pr[:, 0] = 1
    pr[:, 1] = -re[:, 0, 0]
    pi[:, 1] = -im[:, 0, 0]
    peak = 1
    for k in range(2, n + 1):
        j = k - 1
        Mr, Mi = re[:, :j, :j], im[:, :j, :j]
        Rr, Ri = re[:, j, :j], im[:, j, :j]
        vr = re[:, :j, j].copy()
        vi = im[:, :j, j].copy()
        items_r = np.zeros((B, k + 1), np.int64)
        items_i = np.zeros((B, k + 1), np.int64)
        items_r[:, 0] = 1
        items_r[:, 1] = -re[:, j, j]
        items_i[:, 1] = -im[:, j, j]
        for t in range(k - 1):
            dr = np.einsum("bi,bi->b", Rr, vr) - np.einsum("bi,bi->b", Ri, vi)
            di = np.einsum("bi,bi->b", Rr, vi) + np.einsum("bi,bi->b", Ri, vr)
            items_r[:, t + 2] = -dr
            items_i[:, t + 2] = -di
            if t < k - 2:
                nvr = np.einsum("bij,bj->bi", Mr, vr) - np.einsum("bij,bj->bi", Mi, vi)
                nvi = np.einsum("bij,bj->bi", Mr, vi) + np.einsum("bij,bj->bi", Mi, vr)
                vr, vi = nvr, nvi
        npr = np.zeros((B, k + 1), np.int64)
        npi = np.zeros((B, k + 1), np.int64)
        for r in range(k + 1):
            for i2 in range(max(0, r - k), min(r, k - 1) + 1):
                tr, ti = items_r[:, r - i2], items_i[:, r - i2]
                qr, qi = pr[:, i2], pi[:, i2]
                npr[:, r] += tr * qr - ti * qi
                npi[:, r] += tr * qi + ti * qr
        pr, pi = npr, npi
        peak = max(peak, int(np.abs(items_r).max()), int(np.abs(items_i).max()),
                   int(np.abs(pr).max()), int(np.abs(pi).max()))
    if peak >= INT64_GUARD:
        raise InvariantError("int64 magnitude guard tripped in batched Berkowitz")
    return pr, pi


def orientation_sign_batch(m: int, start: int, stop: int) -> np.ndarray:
    """Signs for orientation indices [start, stop): edge i maps to bit m-1-i,
    bit 0 means sign +1. Prefix (s_1..s_k) thus owns the contiguous index
    range [p * 2^(m-k), (p+1) * 2^(m-k))."""
    idx = np.arange(start, stop, dtype=np.int64)
    if m == 0:
        return np.zeros((len(idx), 0), np.int64)
    bits = (idx[:, None] >> np.arange(m - 1, -1, -1)[None, :]) & 1
    return (1 - 2 * bits).astype(np.int64)


def skew_from_signs(edges: list[tuple[int, int]], n: int, signs: np.ndarray) -> np.ndarray:
    """(B, n, n) integer skew matrices W with W[u,v] = sign for each edge (u<v)."""
    B = signs.shape[0]
    W = np.zeros((B, n, n), np.int64)
    for i, (u, v) in enumerate(edges):
        W[:, u, v] = signs[:, i]
        W[:, v, u] = -signs[:, i]
    return W


def hermitian_eigvals_batch(W: np.ndarray, tol: float) -> np.ndarray:
    """Eigenvalues of H = i*W for a batch of integer skew matrices W.

    Uses the 2n x 2n real-symmetric embedding [[Re H, -Im H], [Im H, Re H]]
    = [[0, -W], [W, 0]], whose spectrum is that of H with every multiplicity
    doubled; the doubled pairs are deduplicated by taking every other sorted
    value after asserting the pair gaps are below tol.

    Returns (B, n) eigenvalues in non-increasing order.
    """
    B, n, _ = W.shape
    if n == 0:
        return np.zeros((B, 0))
    E = np.zeros((B, 2 * n, 2 * n))
    E[:, :n, n:] = -W
    E[:, n:, :n] = W
    vals = np.linalg.eigvalsh(E)
    gaps = vals[:, 1::2] - vals[:, 0::2]
    scale = 1.0 + np.abs(vals).max(initial=0.0)
    if gaps.size and gaps.max() > tol * scale:
        raise InvariantError(
            f"embedding eigenvalue pairs split by {gaps.max():.3e} (tol {tol:.1e})"
        )
    return vals[:, 0::2][:, ::-1]


# -- fast real roots of batches of even/odd integer polynomials ---------------
#
# Node polynomials of the assignment tree are even or odd in x (their spectra
# are symmetric about 0), so p(x) = x^eps * q(x^2). Roots come from the much
# lower-degree q. The closed forms below handle deg q <= 3 (graphs up to 7
# vertices); higher degrees fall back to companion-matrix eigenvalues. Rows
# whose verdict sits inside an uncertainty band are flagged for the caller to
# escalate to exact arithmetic.

_NEG_BAND = 1e-9        # |smallest y-root| below this is treated as ambiguous
_DISC_BAND = 1e-9       # relative discriminant band around zero
_CLUSTER_BAND = 1e-6    # relative y-root gap below which roots count as clustered


def _roots_deg1(c: np.ndarray):
    r = (-c[:, 0] / c[:, 1])[:, None]
    ok = np.ones(len(c), bool)
    unsure = np.zeros(len(c), bool)
    return r, ok, unsure


def _roots_deg2(c: np.ndarray):
    a = c[:, 1] / c[:, 2]
    b = c[:, 0] / c[:, 2]
    disc = a * a - 4.0 * b
    scale = np.maximum(a * a, np.abs(b)) + 1.0
    ok = disc >= -_DISC_BAND * scale
    unsure = np.abs(disc) <= _DISC_BAND * scale
    s = np.sqrt(np.maximum(disc, 0.0))
    r = np.stack([(-a - s) / 2.0, (-a + s) / 2.0], axis=1)
    return r, ok, unsure


def _roots_deg3(c: np.ndarray):
    a = c[:, 2] / c[:, 3]
    b = c[:, 1] / c[:, 3]
    d = c[:, 0] / c[:, 3]
    p = b - a * a / 3.0
    q = d - a * b / 3.0 + 2.0 * a**3 / 27.0
    disc = -4.0 * p**3 - 27.0 * q * q
    scale = np.maximum(np.abs(p) ** 3, q * q) + 1.0
    ok = disc >= -_DISC_BAND * scale
    unsure = np.abs(disc) <= _DISC_BAND * scale
    mneg = np.sqrt(np.maximum(-p, 0.0) / 3.0)
    tiny = mneg < 1e-9
    unsure |= tiny & ok
    with np.errstate(invalid="ignore", divide="ignore"):
        arg = np.where(mneg > 0, 3.0 * q / (2.0 * p * mneg), 0.0)
    arg = np.clip(np.nan_to_num(arg), -1.0, 1.0)
    th = np.arccos(arg)
    ks = np.arange(3)
    t = 2.0 * mneg[:, None] * np.cos((th[:, None] - 2.0 * np.pi * ks[None, :]) / 3.0)
    trip = np.cbrt(-q)[:, None] * np.ones(3)[None, :]
    t = np.where(tiny[:, None], trip, t)
    r = np.sort(t - (a / 3.0)[:, None], axis=1)
    return r, ok, unsure


def _roots_companion(c: np.ndarray):
    B, w = c.shape
    d = w - 1
    comp = np.zeros((B, d, d))
    comp[:, 1:, :-1] = np.eye(d - 1)
    comp[:, :, -1] = -c[:, :d] / c[:, d:d + 1]
    vals = np.linalg.eigvals(comp)
    scale = 1.0 + np.abs(vals).max(axis=1)
    imag_ok = np.abs(vals.imag).max(axis=1) <= 1e-12 * scale
    unsure = ~(np.abs(vals.imag).max(axis=1) > 1e-5 * scale) & ~imag_ok
    r = np.sort(vals.real, axis=1)
    gaps = np.diff(r, axis=1)
    if gaps.size:
        unsure |= gaps.min(axis=1) <= _CLUSTER_BAND * scale
    return r, imag_ok | unsure, unsure


def real_roots_batch(c: np.ndarray):
    """Real roots of monic-normalizable polynomial batches (ascending coeffs).

    Returns (roots (B, d) sorted, all_real mask, uncertain mask). Uncertain
    rows must be re-decided by the caller through an exact route; their root
    values here are best-effort.
    """
    B, w = c.shape
    d = w - 1
    if d == 0:
        return np.zeros((B, 0)), np.ones(B, bool), np.zeros(B, bool)
    if d == 1:
        return _roots_deg1(c)
    if d == 2:
        r, ok, unsure = _roots_deg2(c)
    elif d == 3:
        r, ok, unsure = _roots_deg3(c)
    else:
        return _roots_companion(c)
    scale = 1.0 + np.abs(r).max(axis=1, initial=0.0)
    gaps = np.diff(r, axis=1)
    if gaps.size:
        # clustered roots have degraded accuracy; only meaningful when ok
        unsure |= ok & (np.abs(gaps).min(axis=1) <= _CLUSTER_BAND * scale)
    return r, ok, unsure


def split_even_odd(coeffs: np.ndarray, n: int) -> np.ndarray:
    """Extract q from p(x) = x^eps q(x^2) given ascending (B, n+1) coefficients.

    Raises InvariantError if any coefficient off the parity lattice is
    nonzero; the inputs here are exact integers, so this is an exact check.
    """
    eps = n % 2
    off = coeffs[:, (1 - eps)::2] if n >= 1 else coeffs[:, 1:1]
    if off.size and np.any(off != 0):
        raise InvariantError("polynomial lacks the expected even/odd symmetry")
    return coeffs[:, eps::2]


def symmetric_real_roots_batch(coeffs: np.ndarray, n: int):
    """Real roots for batches of exact even/odd polynomials of degree n.

    coeffs: (B, n+1) integer ascending. Returns (roots (B, n) sorted,
    real_rooted mask, uncertain mask). The y = x^2 substitution is exact;
    factors of x^2 (zero constant y-coefficients) are stripped exactly so
    only genuinely nonzero y-roots go through floating point.
    """
    B = coeffs.shape[0]
    y = split_even_odd(coeffs, n)
    eps = n % 2
    dy = y.shape[1] - 1
    roots = np.zeros((B, n))
    ok = np.ones(B, bool)
    unsure = np.zeros(B, bool)
    nz = y != 0
    strip = np.where(nz.any(axis=1), nz.argmax(axis=1), 0)
    for z in np.unique(strip):
        sel = np.nonzero(strip == z)[0]
        dq = dy - z
        zeros_here = 2 * z + eps
        if dq == 0:
            continue
        yc = y[sel, z:].astype(float)
        yr, yok, yun = real_roots_batch(yc)
        neg = yr[:, 0] < -_NEG_BAND
        near = yok & (np.abs(yr).min(axis=1) <= _NEG_BAND)
        ok[sel] &= yok & ~neg
        unsure[sel] |= yun | near
        xs = np.sqrt(np.clip(yr, 0.0, None))
        left = n // 2 - z
        roots[sel, left - dq:left] = -xs[:, ::-1]
        roots[sel, left + zeros_here:left + zeros_here + dq] = xs
    return roots, ok, unsure
