"""Root solving for the package.

The workhorse is a simultaneous Aberth iteration that runs on batches of
coefficient rows, so sweeping one polynomial over many right-hand sides
costs a handful of vectorized passes.  An independently written
Durand-Kerner solver is kept alongside purely as a cross-check oracle.
Integer polynomials get exact multiplicity resolution (zero roots are
stripped symbolically, repeated roots via a rational gcd), which keeps
repeated eigenvalues and arc endpoints accurate to full precision.
Bracketed scalar solves (bisection plus Newton polish) cover the various
special constants: the radial cubic, the pseudospectral angle, and the
level crossings of the Chebyshev-type family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .charpoly import IntPoly, all_plus_poly

_START_ROTATION = (math.sqrt(5.0) - 1.0) / 2.0  # irrational offset, breaks root symmetry
RESIDUAL_RTOL = 1e-9
CLUSTER_TOL = 1e-7
_STEP_TOL = 1e-13
_OUTPUT_DECIMALS = 12


class RootSolveError(RuntimeError):
    """An iterative solve failed to converge or lost a root."""


class BracketError(ValueError):
    """The endpoints do not certify a sign change."""


# ---------------------------------------------------------------------------
# simultaneous iteration on coefficient batches


def _eval_batch(coeffs: np.ndarray, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Horner value and derivative of per-row polynomials at per-row points."""
    deg = coeffs.shape[1] - 1
    p = np.broadcast_to(coeffs[:, -1:], z.shape).astype(complex).copy()
    dp = np.zeros_like(z)
    for j in range(deg - 1, -1, -1):
        dp = dp * z + p
        p = p * z + coeffs[:, j : j + 1]
    return p, dp


def _aberth_many(coeffs: np.ndarray, maxiter: int = 240) -> np.ndarray:
    """All roots of every coefficient row (ascending order, degree >= 1)."""
    c = np.array(coeffs, dtype=complex)
    single = c.ndim == 1
    if single:
        c = c[None, :]
    if c.shape[1] < 2 or np.any(c[:, -1] == 0):
        raise ValueError("need degree >= 1 with nonzero leading coefficient")
    c = c / c[:, -1:]
    deg = c.shape[1] - 1
    if deg == 1:
        z = -c[:, :1].copy()
        return z[0] if single else z
    radius = 1.0 + np.max(np.abs(c[:, :-1]), axis=1)
    angles = 2.0 * np.pi * (np.arange(deg) / deg + _START_ROTATION)
    z = radius[:, None] * np.exp(1j * angles)[None, :]
    restol = 0.01 * RESIDUAL_RTOL * (1.0 + np.max(np.abs(c), axis=1))
    live = np.arange(c.shape[0])
    for _ in range(maxiter):
        zc = z[live]
        p, dp = _eval_batch(c[live], zc)
        dp = np.where(dp == 0, 1e-300, dp)
        w = p / dp
        diff = zc[:, :, None] - zc[:, None, :]
        np.einsum("bii->bi", diff)[...] = np.inf
        s = (1.0 / diff).sum(axis=2)
        denom = 1.0 - w * s
        denom = np.where(denom == 0, 1e-300, denom)
        step = w / denom
        z[live] = zc - step
        done = np.all(
            (np.abs(step) <= _STEP_TOL * (1.0 + np.abs(zc)))
            | (np.abs(p) <= restol[live, None]),
            axis=1,
        )
        live = live[~done]
        if live.size == 0:
            break
    else:
        raise RootSolveError(f"simultaneous iteration stalled on {live.size} solve(s)")
    return z[0] if single else z


def _newton_many(coeffs: np.ndarray, z: np.ndarray, maxiter: int = 50) -> np.ndarray:
    """Polish every point by Newton steps on its own row polynomial."""
    c = np.asarray(coeffs, dtype=complex)
    if c.ndim == 1:
        c = np.broadcast_to(c, (z.shape[0], c.size)) if z.ndim == 2 else c[None, :]
    z = np.array(z, dtype=complex)
    flat = z.ndim == 1
    if flat:
        z = z[None, :]
    for _ in range(maxiter):
        p, dp = _eval_batch(c, z)
        dp = np.where(dp == 0, 1e-300, dp)
        step = p / dp
        z = z - step
        if np.all(np.abs(step) <= 1e-15 * (1.0 + np.abs(z))):
            break
    return z[0] if flat else z


def durand_kerner(coeffs: Sequence[complex], maxiter: int = 600) -> np.ndarray:
    """Weierstrass simultaneous correction; independent cross-check oracle."""
    c = np.array(coeffs, dtype=complex).ravel()
    if c.size < 2 or c[-1] == 0:
        raise ValueError("need degree >= 1 with nonzero leading coefficient")
    c = c / c[-1]
    deg = c.size - 1
    scale = max(1.0, np.max(np.abs(c[:-1])) ** (1.0 / deg))
    z = scale * np.array([(0.4 + 0.9j) ** k for k in range(1, deg + 1)])
    for _ in range(maxiter):
        pvals = np.polyval(c[::-1], z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        denom = diff.prod(axis=1)
        denom = np.where(denom == 0, 1e-300, denom)
        step = pvals / denom
        z = z - step
        if np.all(np.abs(step) <= 1e-14 * (1.0 + np.abs(z))):
            break
    else:
        raise RootSolveError("Durand-Kerner iteration stalled")
    return z


# ---------------------------------------------------------------------------
# exact multiplicity handling for integer polynomials


def _to_fracs(p: IntPoly) -> list[Fraction]:
    return [Fraction(c) for c in p.coeffs]


def _frac_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = a[:]
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        q = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i in range(len(b)):
            a[shift + i] -= q * b[i]
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _primitive(fr: list[Fraction]) -> IntPoly:
    if not fr:
        return IntPoly(())
    den = 1
    for f in fr:
        den = den * f.denominator // math.gcd(den, f.denominator)
    ints = [int(f * den) for f in fr]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    if g:
        ints = [v // g for v in ints]
    if ints[-1] < 0:
        ints = [-v for v in ints]
    return IntPoly(tuple(ints))


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive integer gcd via the Euclidean algorithm over the rationals."""
    fa, fb = _to_fracs(a), _to_fracs(b)
    while fb:
        fa, fb = fb, _frac_mod(fa, fb)
    return _primitive(fa)


def exact_div(a: IntPoly, b: IntPoly) -> IntPoly:
    """Exact quotient a/b; raises if b does not divide a."""
    fa, fb = _to_fracs(a), _to_fracs(b)
    if not fb:
        raise ZeroDivisionError("division by zero polynomial")
    q = [Fraction(0)] * max(len(fa) - len(fb) + 1, 0)
    while len(fa) >= len(fb) and any(fa):
        if fa[-1] == 0:
            fa.pop()
            continue
        c = fa[-1] / fb[-1]
        shift = len(fa) - len(fb)
        q[shift] = c
        for i in range(len(fb)):
            fa[shift + i] -= c * fb[i]
        fa.pop()
    while fa and fa[-1] == 0:
        fa.pop()
    if fa:
        raise ValueError("inexact polynomial division")
    if any(f.denominator != 1 for f in q):
        raise ValueError("quotient is not integral")
    return IntPoly(tuple(int(f) for f in q))


def _simple_roots(p: IntPoly) -> np.ndarray:
    c = np.array(p.coeffs, dtype=float)
    z = _aberth_many(c)
    return _newton_many(c, z)


def _min_pairwise(z: np.ndarray) -> float:
    if z.size < 2:
        return np.inf
    d = np.abs(z[:, None] - z[None, :])
    np.fill_diagonal(d, np.inf)
    return float(d.min())


# a multiplicity-m root smears the iterates over a radius ~ restol**(1/m);
# any raw spacing below this conservatively triggers the exact gcd path
_EXACT_FALLBACK_GAP = 0.1


def _nonzero_root_pairs(p: IntPoly) -> list[tuple[complex, int]]:
    """(root, multiplicity) for a polynomial with nonzero constant term."""
    raw = _simple_roots(p)
    if _min_pairwise(raw) > _EXACT_FALLBACK_GAP:
        return [(complex(r), 1) for r in raw]
    # possibly clustered roots: resolve multiplicities exactly through gcd(p, p')
    g = poly_gcd(p, p.derivative())
    if g.degree < 1:
        return [(complex(r), 1) for r in raw]
    radical = exact_div(p, g)
    sub = _nonzero_root_pairs(g)
    out = []
    for r in _simple_roots(radical):
        mult = 1
        if sub:
            dists = [abs(r - sr) for sr, _ in sub]
            i = int(np.argmin(dists))
            if dists[i] <= 1e-6 * (1.0 + abs(r)):
                mult += sub[i][1]
        out.append((complex(r), mult))
    if sum(m for _, m in out) != p.degree:
        raise RootSolveError(f"multiplicity resolution lost roots of {p}")
    return out


def roots_with_multiplicity(p: IntPoly) -> list[tuple[complex, int]]:
    """Distinct roots of an integer polynomial with exact multiplicities.

    The exact power of x is divided out first (zero is reported exactly), and
    clustered nonzero roots are separated through a rational gcd, so repeated
    roots cost no accuracy.
    """
    if p.degree < 1:
        raise ValueError("need degree >= 1")
    m0 = next(i for i, c in enumerate(p.coeffs) if c)
    pairs: list[tuple[complex, int]] = [(0j, m0)] if m0 else []
    reduced = IntPoly(p.coeffs[m0:])
    if reduced.degree >= 1:
        pairs.extend(_nonzero_root_pairs(reduced))
    pairs.sort(key=lambda rm: (round(rm[0].real, _OUTPUT_DECIMALS), round(rm[0].imag, _OUTPUT_DECIMALS)))
    return pairs


@dataclass(frozen=True)
class RootSet:
    """Multiplicity-expanded roots in deterministic order, with residuals."""

    roots: tuple[complex, ...]
    residuals: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.roots)

    @property
    def max_residual(self) -> float:
        return max(self.residuals) if self.residuals else 0.0


def _sort_key(z: complex) -> tuple[float, float]:
    return (round(z.real, _OUTPUT_DECIMALS), round(z.imag, _OUTPUT_DECIMALS))


def all_roots(p: IntPoly) -> RootSet:
    """Every complex root with multiplicity, polished and deterministically ordered."""
    expanded: list[complex] = []
    for r, m in roots_with_multiplicity(p):
        expanded.extend([r] * m)
    expanded.sort(key=_sort_key)
    maxc = max(abs(c) for c in p.coeffs)
    residuals = tuple(abs(complex(p.evaluate(r))) for r in expanded)
    bound = RESIDUAL_RTOL * (1.0 + maxc)
    if residuals and max(residuals) > bound:
        raise RootSolveError(f"residual {max(residuals):.3e} above {bound:.3e}")
    return RootSet(tuple(expanded), residuals)


def _cluster_merge(z: np.ndarray, tol: float = CLUSTER_TOL) -> np.ndarray:
    """Replace mutually close points by their cluster mean (multiplicity kept)."""
    z = np.array(z, dtype=complex)
    n = z.size
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(z[i] - z[j]) <= tol:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    for idx in groups.values():
        if len(idx) > 1:
            z[idx] = z[idx].mean()
    return z


def _is_int(x: float) -> bool:
    return float(x).is_integer() and abs(x) < 2**53


def shifted_roots(p: IntPoly, w: complex) -> np.ndarray:
    """Roots of p(x) - w, multiplicity-expanded and sorted.

    Gaussian-integer shifts (the arc-endpoint values 0, +-2, +-2i among them)
    go through the exact integer machinery, so repeated roots there carry no
    floating error; generic shifts use the batched iteration.
    """
    if p.degree < 1:
        raise ValueError("need degree >= 1")
    w = complex(w)
    pairs: list[tuple[complex, int]] | None = None
    if w == 0:
        pairs = roots_with_multiplicity(p)
    elif w.imag == 0 and _is_int(w.real):
        pairs = roots_with_multiplicity(p - int(w.real))
    elif w.real == 0 and _is_int(w.imag):
        t = int(w.imag)
        pairs = [
            (r, m)
            for r, m in roots_with_multiplicity(p * p + t * t)
            if abs(complex(p.evaluate(r)) - w) < abs(complex(p.evaluate(r)) + w)
        ]
        if sum(m for _, m in pairs) != p.degree:
            raise RootSolveError("lost roots while splitting a conjugate product")
    if pairs is not None:
        out = []
        for r, m in pairs:
            out.extend([r] * m)
        return np.array(sorted(out, key=_sort_key), dtype=complex)
    c = np.array(p.coeffs, dtype=complex)
    c[0] -= w
    z = _cluster_merge(_newton_many(c, _aberth_many(c)))
    return np.array(sorted(z.tolist(), key=_sort_key), dtype=complex)


def preimage_roots(p: IntPoly, values: Sequence[complex], chunk: int = 2048) -> np.ndarray:
    """Row i holds the full root set of p(x) = values[i].

    Rows with Gaussian-integer right-hand sides are delegated to the exact
    path of :func:`shifted_roots`; the remaining rows (simple roots away from
    arc endpoints) run through the batched iteration in chunks.
    """
    if p.degree < 1:
        raise ValueError("need degree >= 1")
    vals = np.asarray(values, dtype=complex).ravel()
    out = np.empty((vals.size, p.degree), dtype=complex)
    exact = np.array(
        [
            (v.imag == 0 and _is_int(v.real)) or (v.real == 0 and _is_int(v.imag))
            for v in vals
        ]
    )
    for i in np.nonzero(exact)[0]:
        out[i] = shifted_roots(p, vals[i])
    rest = np.nonzero(~exact)[0]
    base = np.array(p.coeffs, dtype=complex)
    for start in range(0, rest.size, chunk):
        idx = rest[start : start + chunk]
        rows = np.tile(base, (idx.size, 1))
        rows[:, 0] -= vals[idx]
        out[idx] = _newton_many(rows, _aberth_many(rows))
    return out


# ---------------------------------------------------------------------------
# bracketed scalar solves


@dataclass(frozen=True)
class Bracket:
    """A sign-change certificate for bisection."""

    lo: float
    hi: float
    f_lo_sign: int
    f_hi_sign: int

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise BracketError(f"need lo < hi, got [{self.lo}, {self.hi}]")
        if self.f_lo_sign * self.f_hi_sign >= 0:
            raise BracketError("endpoint signs do not certify a sign change")


def make_bracket(f: Callable[[float], float], lo: float, hi: float) -> Bracket:
    slo = _sign(f(lo))
    shi = _sign(f(hi))
    return Bracket(lo, hi, slo, shi)


def _sign(x: float) -> int:
    return int(x > 0) - int(x < 0)


def bisect_root(f: Callable[[float], float], bracket: Bracket, tol: float = 1e-13) -> float:
    """Bisection to an interval of width <= tol that still brackets the root."""
    lo, hi, slo = bracket.lo, bracket.hi, bracket.f_lo_sign
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break  # interval at floating resolution
        sm = _sign(f(mid))
        if sm == 0:
            return mid
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def real_roots_in(p: IntPoly, lo: float, hi: float, scan: int = 4096) -> list[float]:
    """All real roots of an integer polynomial in [lo, hi], sorted ascending.

    The squarefree part is taken exactly first (even-multiplicity roots do
    not change sign), then a dense sign scan brackets each root for bisection
    and Newton polish.
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    if p.degree < 1:
        return []
    g = poly_gcd(p, p.derivative())
    h = exact_div(p, g) if g.degree >= 1 else p
    c = np.array(h.coeffs, dtype=float)
    xs = np.linspace(lo, hi, scan + 1)
    vals = np.polyval(c[::-1], xs)
    roots: list[float] = []
    f = lambda x: float(np.polyval(c[::-1], x))
    for i in range(scan):
        a, b = vals[i], vals[i + 1]
        if a == 0.0:
            roots.append(float(xs[i]))
        elif a * b < 0:
            r = bisect_root(f, Bracket(float(xs[i]), float(xs[i + 1]), _sign(a), _sign(b)))
            roots.append(r)
    if vals[-1] == 0.0:
        roots.append(float(xs[-1]))
    # Newton polish on the squarefree part
    polished = sorted(float(np.real(z)) for z in _newton_many(c, np.array(roots, dtype=complex)).ravel()) if roots else []
    out: list[float] = []
    for r in polished:
        if lo - 1e-12 <= r <= hi + 1e-12 and (not out or abs(r - out[-1]) > 1e-12):
            out.append(min(max(r, lo), hi))
    return out


# ---------------------------------------------------------------------------
# special scalar equations


def radial_cubic(t):
    """Largest positive solution s of s^3 - 2 t s^2 + s = 1, for -1 <= t <= 1.

    The solution is unique on (0, 2); it lies in (0,1) for t < 1/2 and in
    [1, 2) for t >= 1/2.  Accepts scalars or arrays.
    """
    arr = np.asarray(t, dtype=float)
    if np.any(arr < -1.0 - 1e-9) or np.any(arr > 1.0 + 1e-9):
        raise ValueError("t must lie in [-1, 1]")
    tt = np.clip(arr, -1.0, 1.0)
    lo = np.zeros_like(tt)
    hi = np.full_like(tt, 2.0)
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        fm = ((mid - 2.0 * tt) * mid + 1.0) * mid - 1.0
        neg = fm < 0
        lo = np.where(neg, mid, lo)
        hi = np.where(neg, hi, mid)
    s = 0.5 * (lo + hi)
    for _ in range(3):  # Newton polish
        fs = ((s - 2.0 * tt) * s + 1.0) * s - 1.0
        dfs = (3.0 * s - 4.0 * tt) * s + 1.0
        s = s - fs / dfs
    return float(s) if np.isscalar(t) or arr.ndim == 0 else s


@lru_cache(maxsize=None)
def pseudospec_angle(n: int) -> float:
    """Unique solution of 2 cos((n+1)t) = cos((n-1)t) in (pi/(2n+6), pi/(2n+4)].

    Four times its sine is the pseudospectrum radius that makes the n-section
    bound converge from above; for n = 1 the solution is the right endpoint
    pi/6 itself.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    f = lambda t: 2.0 * math.cos((n + 1) * t) - math.cos((n - 1) * t)
    lo = math.pi / (2 * n + 6)
    hi = math.pi / (2 * n + 4)
    if f(hi) >= 0.0:
        return hi  # root sits at the closed right endpoint
    t = bisect_root(f, make_bracket(f, lo, hi))
    df = lambda t: -2.0 * (n + 1) * math.sin((n + 1) * t) + (n - 1) * math.sin((n - 1) * t)
    for _ in range(4):
        t -= f(t) / df(t)
    return t


def _cheb_level(m: int, theta: float) -> float:
    # all-plus discriminant at 2 cos(theta)
    return 2.0 * math.sin(m * theta) / math.tan(theta)


def level_one_crossings(m: int) -> tuple[float | None, float]:
    """Largest solutions of P(x) = -1 and P(x) = +1 for the degree-m all-plus
    discriminant, on (0, 2).

    Returns (minus, plus); minus is None for m = 3 (no admissible solution is
    used there) and requires m >= 4.  The crossings interlace:
    minus(m+1) < plus(m) < plus(m+1).
    """
    if m < 3:
        raise ValueError(f"need m >= 3, got {m}")
    # Solve in the angle variable, where the level function is monotone on
    # the bracket; bisection to floating resolution puts the crossing within
    # a few ulps, and a polynomial polish near 2 would risk hopping to a
    # neighbouring oscillation.
    f_plus = lambda th: _cheb_level(m, th) - 1.0
    th = bisect_root(f_plus, make_bracket(f_plus, math.pi / m - math.pi / m**2, math.pi / m), tol=1e-16)
    plus = 2.0 * math.cos(th)

    if m == 3:
        return None, plus
    if m == 4:
        # the -1 level is a perfect-square touch point here; the exact
        # machinery returns the double root at 1 with no floating error
        p = all_plus_poly(4)
        cands = [r.real for r, _ in roots_with_multiplicity(p + 1) if abs(r.imag) < 1e-12 and 0 < r.real < 2]
        return max(cands), plus
    f_minus = lambda th: _cheb_level(m, th) + 1.0
    th = bisect_root(f_minus, make_bracket(f_minus, math.pi / m, math.pi / m + math.pi / m**2), tol=1e-16)
    minus = 2.0 * math.cos(th)
    return minus, plus
