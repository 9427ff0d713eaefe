"""Univariate polynomials with exact integer/rational or floating coefficients.

Exact polynomials get Sturm-sequence machinery: real-root counts are computed
by exact sign variations, so real-rootedness and root orderings are decided
without floating-point doubt, and roots are then refined by bisection with
exact sign evaluations at dyadic points. Float polynomials go through
companion-matrix eigenvalues (numpy.roots) with a tolerance.

Coefficients are stored constant-term first.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InvariantError, NotRealRootedError

DEFAULT_COMPARE_TOL = 1e-10   # slack for root comparisons in predicates
DEFAULT_ROOT_TOL = 1e-12      # refinement width for returned roots
DEFAULT_SEED = 1729           # seeds the extra convex-combination samples

_LAMBDA_GRID = tuple(Fraction(i, 10) for i in range(11))


def _canon_exact(value):
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else value
    if isinstance(value, (int, np.integer)):
        return int(value)
    raise TypeError(f"exact coefficient must be int or Fraction, got {type(value)}")


@dataclass(frozen=True)
class Polynomial:
    """Immutable univariate polynomial; `exact` selects the arithmetic domain."""

    coeffs: tuple
    exact: bool

    @staticmethod
    def from_exact(coeffs: Sequence) -> "Polynomial":
        c = [_canon_exact(x) for x in coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if not c:
            c = [0]
        return Polynomial(tuple(c), True)

    @staticmethod
    def from_floats(coeffs: Sequence[float]) -> "Polynomial":
        c = [float(x) for x in coeffs]
        while len(c) > 1 and c[-1] == 0.0:
            c.pop()
        if not c:
            c = [0.0]
        return Polynomial(tuple(c), False)

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    @property
    def degree(self) -> int:
        return -1 if self.is_zero else len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        if self.exact and other.exact:
            return Polynomial.from_exact(out)
        return Polynomial.from_floats(out)

    def __neg__(self) -> "Polynomial":
        return self.scale(-1)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        if self.exact and other.exact:
            return Polynomial.from_exact(out)
        return Polynomial.from_floats(out)

    def scale(self, c) -> "Polynomial":
        if self.exact and isinstance(c, (int, Fraction)):
            return Polynomial.from_exact([Fraction(c) * x for x in self.coeffs])
        return Polynomial.from_floats([float(c) * float(x) for x in self.coeffs])

    def derivative(self) -> "Polynomial":
        if self.degree <= 0:
            return Polynomial.from_exact([0]) if self.exact else Polynomial.from_floats([0.0])
        out = [i * c for i, c in enumerate(self.coeffs)][1:]
        return Polynomial.from_exact(out) if self.exact else Polynomial.from_floats(out)

    def as_floats(self) -> list[float]:
        return [float(c) for c in self.coeffs]

    def to_float_poly(self) -> "Polynomial":
        return Polynomial.from_floats(self.as_floats())

    def pretty(self) -> str:
        """Human-readable form like 'x^3 - 3x'."""
        if self.is_zero:
            return "0"
        terms = []
        for power in range(self.degree, -1, -1):
            c = self.coeffs[power]
            if c == 0:
                continue
            neg = c < 0
            mag = -c if neg else c
            if power == 0:
                body = f"{mag}"
            else:
                xpart = "x" if power == 1 else f"x^{power}"
                body = xpart if mag == 1 else f"{mag}{xpart}"
            if not terms:
                terms.append(f"-{body}" if neg else body)
            else:
                terms.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(terms)

    def to_json(self) -> str:
        coeffs = []
        for c in self.coeffs:
            if isinstance(c, Fraction):
                coeffs.append([c.numerator, c.denominator])
            else:
                coeffs.append(c)
        return json.dumps({"coeffs": coeffs, "exact": self.exact})

    @staticmethod
    def from_json(text: str) -> "Polynomial":
        obj = json.loads(text)
        if obj["exact"]:
            vals = [Fraction(c[0], c[1]) if isinstance(c, list) else int(c) for c in obj["coeffs"]]
            return Polynomial.from_exact(vals)
        return Polynomial.from_floats(obj["coeffs"])


# -- exact integer-polynomial helpers (ascending int coefficient lists) -------

def _trim(c: list[int]) -> list[int]:
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def _int_coeffs(p: Polynomial) -> list[int]:
    """Clear denominators; the result has the same roots as p."""
    den = 1
    for c in p.coeffs:
        if isinstance(c, Fraction):
            den = den * c.denominator // math.gcd(den, c.denominator)
    return _trim([int(c * den) for c in p.coeffs])


def _content_strip(c: list[int]) -> list[int]:
    g = 0
    for x in c:
        g = math.gcd(g, abs(x))
        if g == 1:
            return c
    return [x // g for x in c] if g > 1 else c


def _deriv_int(c: list[int]) -> list[int]:
    return _trim([i * x for i, x in enumerate(c)][1:]) if len(c) > 1 else [0]


def _prem_signed(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of a by b, scaled so it equals a POSITIVE multiple of
    the true polynomial remainder (sign variations stay meaningful)."""
    da, db = len(a) - 1, len(b) - 1
    lb = b[-1]
    r = list(a)
    steps = 0
    for i in range(da - db, -1, -1):
        coef = r[db + i]
        r = [lb * x for x in r]
        steps += 1
        if coef != 0:
            for j in range(db + 1):
                r[i + j] -= coef * b[j]
    r = _trim(r)
    if lb < 0 and steps % 2 == 1:
        r = [-x for x in r]
    return r


def _sturm_chain(c: list[int]) -> list[list[int]]:
    p0 = _content_strip(_trim(list(c)))
    chain = [p0]
    if len(p0) > 1:
        chain.append(_content_strip(_deriv_int(p0)))
        while chain[-1] != [0]:
            r = _prem_signed(chain[-2], chain[-1])
            if r == [0]:
                break
            chain.append(_content_strip([-x for x in r]))
    return chain


def _sign_at(c: list[int], num: int, den: int) -> int:
    """Exact sign of the polynomial at num/den (den > 0)."""
    deg = len(c) - 1
    acc = 0
    dp = 1
    for i in range(deg, -1, -1):
        acc = acc * num + c[i] * dp
        if i > 0:
            dp *= den
    return (acc > 0) - (acc < 0)


def _variations(signs: list[int]) -> int:
    v = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev != 0 and s != prev:
            v += 1
        prev = s
    return v


def _variations_at(chain: list[list[int]], num: int, den: int) -> int:
    return _variations([_sign_at(p, num, den) for p in chain])


def _variations_at_inf(chain: list[list[int]], positive: bool) -> int:
    signs = []
    for p in chain:
        lc = p[-1]
        s = (lc > 0) - (lc < 0)
        if not positive and (len(p) - 1) % 2 == 1:
            s = -s
        signs.append(s)
    return _variations(signs)


def _distinct_real_count(c: list[int]) -> int:
    if len(_trim(list(c))) <= 1:
        return 0
    chain = _sturm_chain(c)
    return _variations_at_inf(chain, False) - _variations_at_inf(chain, True)


def _gcd_primitive(a: list[int], b: list[int]) -> list[int]:
    x = _content_strip(_trim(list(a)))
    y = _content_strip(_trim(list(b)))
    if x == [0]:
        return y
    if y == [0]:
        return x
    if len(x) < len(y):
        x, y = y, x
    while y != [0]:
        r = _content_strip(_prem_signed(x, y))
        x, y = y, r
    if x[-1] < 0:
        x = [-v for v in x]
    return x


def _div_exact(a: list[int], b: list[int]) -> list[int]:
    """Exact quotient a/b; raises if the division is not exact over Q."""
    fa = [Fraction(x) for x in a]
    db = len(b) - 1
    lb = Fraction(b[-1])
    q = [Fraction(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        coef = fa[i] / lb
        q[i - db] = coef
        if coef:
            for j in range(db + 1):
                fa[i - db + j] -= coef * b[j]
    if any(x != 0 for x in fa[:db]):
        raise ArithmeticError("inexact polynomial division")
    out = []
    for x in q:
        if x.denominator != 1:
            raise ArithmeticError("non-integral quotient")
        out.append(int(x))
    return _trim(out)


def _poly_sub(a: list[int], b: list[int]) -> list[int]:
    ln = max(len(a), len(b), 1)
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(ln)])


def _squarefree_parts(c: list[int]) -> list[tuple[list[int], int]]:
    """Yun decomposition: [(factor, multiplicity)] with factors square-free."""
    f = _content_strip(_trim(list(c)))
    if len(f) <= 1:
        return []
    if f[-1] < 0:
        f = [-x for x in f]
    df = _deriv_int(f)
    a = _gcd_primitive(f, df)
    if len(a) == 1:
        return [(f, 1)]
    b = _div_exact(f, a)
    d = _poly_sub(_div_exact(df, a), _deriv_int(b))
    out = []
    i = 1
    while len(b) > 1:
        ai = _gcd_primitive(b, d)
        if len(ai) > 1:
            out.append((ai, i))
        b = _div_exact(b, ai)
        d = _poly_sub(_div_exact(d, ai), _deriv_int(b))
        i += 1
    return out


def _root_bound(c: list[int]) -> Fraction:
    """Strict Cauchy bound on root magnitudes, rounded up to a power of two."""
    lead = abs(c[-1])
    mx = max((abs(x) for x in c[:-1]), default=0)
    bound = 1 + Fraction(mx, lead)
    b = Fraction(1)
    while b < bound:
        b *= 2
    return b


def _isolate_squarefree(c: list[int]) -> tuple[list[Fraction], list[tuple[Fraction, Fraction]]]:
    """Distinct real roots of a square-free int polynomial.

    Returns (exact_roots, isolating_intervals); intervals are open, contain
    exactly one root each, and have non-root dyadic endpoints.
    """
    if len(c) <= 1:
        return [], []
    chain = _sturm_chain(c)
    bound = _root_bound(c)
    exact: list[Fraction] = []
    intervals: list[tuple[Fraction, Fraction]] = []

    def var(x: Fraction) -> int:
        return _variations_at(chain, x.numerator, x.denominator)

    def sgn(x: Fraction) -> int:
        return _sign_at(c, x.numerator, x.denominator)

    stack = [(-bound, bound, var(-bound) - var(bound))]
    while stack:
        lo, hi, cnt = stack.pop()
        if cnt <= 0:
            continue
        if cnt == 1:
            if sgn(hi) == 0:
                exact.append(hi)
            else:
                intervals.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if sgn(mid) == 0:
            exact.append(mid)
            w = (hi - lo) / 4
            while True:
                lo2, hi2 = mid - w, mid + w
                if sgn(lo2) != 0 and sgn(hi2) != 0 and var(lo2) - var(hi2) == 1:
                    break
                w /= 2
            vl, vlo2 = var(lo), var(lo2)
            stack.append((lo, lo2, vl - vlo2))
            stack.append((hi2, hi, var(hi2) - var(hi)))
        else:
            vm = var(mid)
            stack.append((lo, mid, var(lo) - vm))
            stack.append((mid, hi, vm - var(hi)))
    return exact, intervals


def _refine_bisect(c: list[int], lo: Fraction, hi: Fraction, tol: float) -> float:
    slo = _sign_at(c, lo.numerator, lo.denominator)
    width = hi - lo
    target = Fraction(tol).limit_denominator(10**18) if tol > 0 else Fraction(1, 10**15)
    while width > target:
        mid = (lo + hi) / 2
        sm = _sign_at(c, mid.numerator, mid.denominator)
        if sm == 0:
            return float(mid)
        if sm == slo:
            lo = mid
        else:
            hi = mid
        width = hi - lo
    return float((lo + hi) / 2)


def count_real_roots(p: Polynomial) -> int:
    """Number of real roots counted with multiplicity (exact for exact input)."""
    if p.is_zero:
        raise ValueError("zero polynomial has no well-defined root count")
    if p.degree == 0:
        return 0
    if p.exact:
        c = _int_coeffs(p)
        return sum(mult * _distinct_real_count(part) for part, mult in _squarefree_parts(c))
    roots = _float_real_roots(p.as_floats(), DEFAULT_COMPARE_TOL)
    return len(roots)


def real_roots(p: Polynomial, tol: float = DEFAULT_ROOT_TOL) -> list[float]:
    """All real roots with multiplicity, non-decreasing, each accurate to tol.

    Exact input: Sturm isolation on the square-free parts, then bisection
    with exact sign tests. Float input: companion-matrix eigenvalues.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if p.is_zero:
        raise ValueError("zero polynomial")
    if p.degree == 0:
        return []
    if not p.exact:
        return _float_real_roots(p.as_floats(), tol)
    out: list[float] = []
    for part, mult in _squarefree_parts(_int_coeffs(p)):
        exact, intervals = _isolate_squarefree(part)
        vals = [float(x) for x in exact]
        vals.extend(_refine_bisect(part, lo, hi, tol) for lo, hi in intervals)
        out.extend(v for v in vals for _ in range(mult))
    out.sort()
    return out


def _float_real_roots(coeffs: list[float], tol: float) -> list[float]:
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 0.0:
        c.pop()
    if len(c) <= 1:
        return []
    scale = max(abs(x) for x in c)
    rts = np.roots(np.array(c[::-1], dtype=float) / scale)
    out = []
    for z in rts:
        if abs(z.imag) <= tol * (1.0 + abs(z.real)):
            out.append(float(z.real))
    out.sort()
    return out


def is_real_rooted(p: Polynomial, tol: float = DEFAULT_COMPARE_TOL) -> bool:
    """True iff the real-root count (with multiplicity) equals the degree.

    The verdict is exact (Sturm counts) for exact coefficients; float
    coefficients use the refined-root count against the degree with tol.
    """
    if p.is_zero:
        return False
    if p.degree == 0:
        return True
    if p.exact:
        return count_real_roots(p) == p.degree
    return len(_float_real_roots(p.as_floats(), tol)) == p.degree


def _require_real_rooted(p: Polynomial, tol: float) -> list[float]:
    roots = real_roots(p, min(tol, DEFAULT_ROOT_TOL))
    if len(roots) != p.degree:
        raise NotRealRootedError(len(roots), p.degree)
    return roots


def largest_root(p: Polynomial, tol: float = DEFAULT_COMPARE_TOL) -> float:
    """Largest root of a real-rooted polynomial; rejects non-real-rooted input."""
    roots = _require_real_rooted(p, tol)
    if not roots:
        raise ValueError("constant polynomial has no roots")
    return roots[-1]


def max_abs_root(p: Polynomial, tol: float = DEFAULT_COMPARE_TOL) -> float:
    """Largest absolute value of a root of a real-rooted polynomial."""
    roots = _require_real_rooted(p, tol)
    if not roots:
        raise ValueError("constant polynomial has no roots")
    return max(abs(roots[0]), abs(roots[-1]))


def interlaces(g: Polynomial, f: Polynomial, tol: float = DEFAULT_COMPARE_TOL) -> bool:
    """True iff the roots of g weave between the roots of f.

    Requires deg g == deg f - 1 and both real-rooted; comparisons get tol
    slack on each side, so exact ties pass.
    """
    if g.degree != f.degree - 1:
        raise ValueError(f"degree mismatch: deg g={g.degree}, deg f={f.degree}")
    alpha = _require_real_rooted(g, tol)
    beta = _require_real_rooted(f, tol)
    for i, a in enumerate(alpha):
        if not (beta[i] <= a + tol and a <= beta[i + 1] + tol):
            return False
    return True


def _lambda_samples(seed: int = DEFAULT_SEED) -> list[Fraction]:
    rng = random.Random(seed)
    extra = [Fraction(rng.randint(1, 999999), 10**6) for _ in range(5)]
    return list(_LAMBDA_GRID) + extra


def convex_combination(f1: Polynomial, f2: Polynomial, lam) -> Polynomial:
    """lam*f1 + (1-lam)*f2, exact when both inputs are exact and lam rational."""
    if f1.exact and f2.exact and isinstance(lam, (int, Fraction)):
        lam = Fraction(lam)
        return f1.scale(lam) + f2.scale(1 - lam)
    lam = float(lam)
    return f1.to_float_poly().scale(lam) + f2.to_float_poly().scale(1.0 - lam)


def common_interlacing(f1: Polynomial, f2: Polynomial, tol: float = DEFAULT_COMPARE_TOL,
                       seed: int = DEFAULT_SEED) -> bool:
    """Whether f1 and f2 (same degree, positive leading coefficients) admit a
    common interlacer.

    Decided by the interval criterion on sorted roots: max(a_i, b_i) <=
    min(a_{i+1}, b_{i+1}) + tol for every i. When it passes, the verdict is
    cross-checked by sampling convex combinations lam*f1 + (1-lam)*f2 over a
    fixed grid plus seeded extras and asserting their real-rootedness; a
    clear contradiction (criterion passes without needing the tol slack yet
    some combination is decisively not real-rooted) raises InvariantError.
    """
    if f1.degree != f2.degree:
        raise ValueError(f"degree mismatch: {f1.degree} vs {f2.degree}")
    if f1.degree < 1:
        raise ValueError("degree must be at least 1")
    if float(f1.leading) <= 0 or float(f2.leading) <= 0:
        raise ValueError("leading coefficients must be positive")
    a = _require_real_rooted(f1, tol)
    b = _require_real_rooted(f2, tol)
    margin = math.inf
    for i in range(len(a) - 1):
        margin = min(margin, min(a[i + 1], b[i + 1]) - max(a[i], b[i]))
    if margin < -tol:
        return False
    exact_mode = f1.exact and f2.exact
    for lam in _lambda_samples(seed):
        combo = convex_combination(f1, f2, lam if exact_mode else float(lam))
        if combo.degree < 1:
            continue
        if exact_mode:
            ok = is_real_rooted(combo)
        else:
            ok = is_real_rooted(combo, max(tol, 1e-7))
        if not ok and margin > tol and exact_mode:
            raise InvariantError(
                f"interval criterion passed with margin {margin:.3g} but the "
                f"lam={lam} combination is not real-rooted"
            )
        if not ok and margin > tol:
            raise InvariantError("interval criterion and convex sampling disagree")
    return True


def polynomial_to_json(p: Polynomial) -> str:
    return p.to_json()


def polynomial_from_json(text: str) -> Polynomial:
    return Polynomial.from_json(text)
