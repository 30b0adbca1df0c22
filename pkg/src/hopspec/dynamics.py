"""Forward and backward dynamics of the symmetry polynomials.

Forward: orbit classification (escape / trapped in the certified trap set /
undecided) drives a numerical certificate that the filled Julia set of a
symmetry polynomial sits inside the periodic part of the spectrum, and a
vectorized escape-time engine renders filled Julia sets.  Backward:
iterated preimages of the unit disk produce point clouds of spectral
subsets.  The module also carries the degree-18 pattern whose discriminant
has an attracting fixed point outside the closed unit disk, with an exact
rational certificate for it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bounds import RasterGrid
from .charpoly import IntPoly, X, floquet_discriminant
from .roots import RootSet, all_roots, preimage_roots, real_roots_in, roots_with_multiplicity
from .signvec import SignVector, is_symmetry_vector
from .spectra import SpectralCloud

ESCAPED = "escaped"
TRAPPED = "trapped_in_T"
UNDECIDED = "undecided"

DEFAULT_MAX_ITER = 10_000


@dataclass(frozen=True)
class TrapParams:
    """The trap set: the closed 1.1-disk plus thin strips around the real and
    imaginary open segments (-2, 2).

    The strips carry a tiny half-width so orbits that are real (or imaginary)
    up to floating rounding still count; an orbit must sit in the trap for
    ``run_length`` consecutive steps before it is declared trapped, since
    orbits only have to enter the trap eventually.
    """

    disk_radius: float = 1.1
    strip_halfwidth: float = 1e-9
    strip_extent: float = 2.0
    run_length: int = 50

    def contains(self, z: complex) -> bool:
        if abs(z) <= self.disk_radius:
            return True
        if abs(z.imag) <= self.strip_halfwidth and abs(z.real) < self.strip_extent:
            return True
        return abs(z.real) <= self.strip_halfwidth and abs(z.imag) < self.strip_extent


@dataclass(frozen=True)
class OrbitVerdict:
    status: str
    steps: int
    witness: complex


def critical_points(p: IntPoly) -> RootSet:
    """All zeros of the derivative (with multiplicity)."""
    if p.degree < 2:
        raise ValueError(f"need degree >= 2, got {p.degree}")
    return all_roots(p.derivative())


def escape_radius(p: IntPoly, symmetry_poly: bool = False) -> float:
    """Radius beyond which orbits are certified to diverge.

    Any discriminant maps |z| >= 2 outside the filled Julia set, so 2 is the
    right threshold for them; a generic monic polynomial falls back to the
    coefficient bound 1 + max|c|.
    """
    if symmetry_poly:
        return 2.0
    return max(2.0, 1.0 + max(abs(c) for c in p.coeffs[:-1]) / abs(p.coeffs[-1]))


def classify_orbit(
    p: IntPoly,
    z0: complex,
    max_iter: int = DEFAULT_MAX_ITER,
    trap: TrapParams = TrapParams(),
    escape_closed: bool = False,
    radius: float | None = None,
) -> OrbitVerdict:
    """Iterate z -> p(z) until the orbit certifies escape or trapping.

    ``escape_closed`` treats |z| equal to the escape radius as escaped, which
    is valid exactly for the symmetry polynomials.  An orbit that does
    neither within ``max_iter`` steps is reported undecided, never guessed.
    """
    if max_iter < 1:
        raise ValueError("need max_iter >= 1")
    r = escape_radius(p, escape_closed) if radius is None else radius
    z = complex(z0)
    run = 0
    for step in range(max_iter + 1):
        mag = abs(z)
        if not math.isfinite(mag) or mag > r or (escape_closed and mag >= r):
            return OrbitVerdict(ESCAPED, step, z)
        if trap.contains(z):
            run += 1
            if run >= trap.run_length:
                return OrbitVerdict(TRAPPED, step, z)
        else:
            run = 0
        z = complex(p.evaluate(z))
    return OrbitVerdict(UNDECIDED, max_iter, z)


def classify_critical_orbits(
    p: IntPoly,
    max_iter: int = DEFAULT_MAX_ITER,
    trap: TrapParams = TrapParams(),
) -> list[tuple[complex, OrbitVerdict]]:
    """Verdict for the orbit of every distinct critical point.

    The caller asserts p is a symmetry polynomial (so escape may use the
    closed threshold |z| >= 2).  No verdict being undecided is the numerical
    hypothesis under which the filled Julia set is contained in the periodic
    part of the spectrum.
    """
    out = []
    for c, _mult in roots_with_multiplicity(p.derivative()):
        out.append((c, classify_orbit(p, c, max_iter, trap, escape_closed=True)))
    return out


def all_orbits_decided(verdicts: list[tuple[complex, OrbitVerdict]]) -> bool:
    return all(v.status != UNDECIDED for _, v in verdicts)


def filled_julia_raster(
    p: IntPoly,
    window: tuple[float, float, float, float],
    width: int,
    height: int,
    max_iter: int = 200,
    symmetry_poly: bool = False,
    discriminant: bool = False,
) -> RasterGrid:
    """Escape-time raster: counts per pixel, ``max_iter`` meaning never escaped.

    Pixels that reach the escape radius stop iterating; the surviving set
    approximates the filled Julia set from outside.  ``discriminant`` allows
    the tight radius 2 with a strict threshold (any pattern discriminant maps
    |z| >= 2 to modulus >= 2); ``symmetry_poly`` additionally treats |z| = 2
    itself as escaped, which only the symmetry class justifies.
    """
    if p.degree < 2:
        raise ValueError(f"need degree >= 2, got {p.degree}")
    grid = RasterGrid(window, width, height, np.zeros((height, width), dtype=np.int32))
    z = grid.centers().ravel()
    counts = np.full(z.size, max_iter, dtype=np.int32)
    alive = np.ones(z.size, dtype=bool)
    r = 2.0 if (symmetry_poly or discriminant) else escape_radius(p)
    coeffs = np.array(p.coeffs, dtype=complex)
    with np.errstate(over="ignore", invalid="ignore"):
        for it in range(max_iter):
            za = z[alive]
            mag = np.abs(za)
            gone = ~np.isfinite(mag) | (mag > r) | ((mag >= r) if symmetry_poly else False)
            if gone.any():
                idx = np.nonzero(alive)[0][gone]
                counts[idx] = it
                alive[idx] = False
                za = za[~gone]
            if not alive.any():
                break
            acc = np.full(za.shape, coeffs[-1])
            for c in coeffs[-2::-1]:
                acc = acc * za + c
            z[alive] = acc
    return RasterGrid(window, width, height, counts.reshape(height, width))


def _hash01(z: np.ndarray) -> np.ndarray:
    """Deterministic per-point hash in [0, 1), independent of array order."""
    bits = np.ascontiguousarray(z.real).view(np.uint64) * np.uint64(0x9E3779B97F4A7C15)
    bits ^= np.ascontiguousarray(z.imag).view(np.uint64) * np.uint64(0xC2B2AE3D27D4EB4F)
    bits ^= bits >> np.uint64(33)
    bits *= np.uint64(0xFF51AFD7ED558CCD)
    bits ^= bits >> np.uint64(33)
    return bits / 2.0**64


def preimage_cloud(
    p: IntPoly,
    depth: int,
    seeds: int = 64,
    level_cap: int = 1_000_000,
    rng_seed: int = 0,
) -> SpectralCloud:
    """Backward iteration of the unit disk: all levels pooled into one cloud.

    Level 0 seeds are drawn uniformly from the open unit disk with a fixed
    generator; each level replaces every point w by the full root set of
    p(x) = w.  Levels larger than ``level_cap`` are thinned by a per-point
    hash so the result does not depend on evaluation order.
    """
    if p.degree < 2:
        raise ValueError(f"need degree >= 2, got {p.degree}")
    if depth < 1:
        raise ValueError(f"need depth >= 1, got {depth}")
    rng = np.random.default_rng(rng_seed)
    radius = np.sqrt(rng.uniform(0.0, 1.0, seeds))
    angle = rng.uniform(0.0, 2.0 * np.pi, seeds)
    level = radius * np.exp(1j * angle)
    clouds = []
    for lev in range(1, depth + 1):
        level = preimage_roots(p, level).ravel()
        if level.size > level_cap:
            level = level[_hash01(level) < level_cap / level.size]
        clouds.append(SpectralCloud.build(level, f"level{lev}", np.full(level.size, float(lev))))
    return SpectralCloud.merge(clouds, label=f"cloud:deg{p.degree}", dedup=False)


def find_attracting_fixed_points(p: IntPoly) -> list[tuple[complex, complex]]:
    """All fixed points with multiplier |p'(z)| < 1, as (point, multiplier)."""
    if p.degree < 2:
        raise ValueError(f"need degree >= 2, got {p.degree}")
    dp = p.derivative()
    out = []
    for z, _mult in roots_with_multiplicity(p - X):
        mult = complex(dp.evaluate(z))
        if abs(mult) < 1.0:
            out.append((z, mult))
    return out


# ---------------------------------------------------------------------------
# the degree-18 off-disk attracting fixed point


OFFDISK_SIGNS = SignVector.from_entries(
    (1, -1, 1, 1, 1, -1, 1, -1, -1, 1, -1, 1, 1, 1, -1, 1, -1, 1)
)

# expected expansions, used only as comparison data for the certificate
_EXPECTED_POLY = IntPoly((0, 0, 1, 0, -4, 0, 6, 0, -8, 0, 7, 0, -4, 0, 5, 0, -4, 0, 1))
_EXPECTED_DERIV = IntPoly((0, 2, 0, -16, 0, 36, 0, -64, 0, 70, 0, -48, 0, 70, 0, -64, 0, 18))

_FIXED_POINT_REF = 1.21544069
_MULTIPLIER_REF = -0.69


@dataclass(frozen=True)
class CertificateClause:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class Certificate:
    clauses: tuple[CertificateClause, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)

    def report(self) -> str:
        lines = [f"[{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.detail}" for c in self.clauses]
        lines.append(f"certificate: {'all clauses pass' if self.passed else 'FAILED'}")
        return "\n".join(lines)


def offdisk_fixed_point_certificate() -> Certificate:
    """Exact-arithmetic certificate that the degree-18 pattern's discriminant
    has an attracting fixed point in (1.215, 1.216), outside the unit disk.

    All inequality clauses are evaluated in rational arithmetic: a sign
    change of p(x) - x across the interval, |p'(1.2155)| <= 0.71, and a
    bound |p''| < 400 on the interval via the split of p'' into its
    positive and negative coefficient parts (both increasing on the
    interval), which together give |p'(fixed point)| <= 0.91 < 1.  Floating
    clauses locate the fixed point and multiplier themselves.
    """
    clauses: list[CertificateClause] = []
    k = OFFDISK_SIGNS
    p = floquet_discriminant(k)

    clauses.append(
        CertificateClause(
            "pattern is a symmetry vector",
            is_symmetry_vector(k),
            str(k),
        )
    )
    clauses.append(
        CertificateClause(
            "discriminant coefficients",
            p.coeffs == _EXPECTED_POLY.coeffs,
            str(p),
        )
    )
    dp = p.derivative()
    clauses.append(
        CertificateClause(
            "derivative coefficients",
            dp.coeffs == _EXPECTED_DERIV.coeffs,
            str(dp),
        )
    )

    lo = Fraction(1215, 1000)
    hi = Fraction(1216, 1000)
    f_lo = p.evaluate(lo) - lo
    f_hi = p.evaluate(hi) - hi
    clauses.append(
        CertificateClause(
            "sign change of p(x) - x on [1.215, 1.216]",
            f_lo * f_hi < 0,
            f"f(lo) = {float(f_lo):.6g}, f(hi) = {float(f_hi):.6g} (exact rational signs)",
        )
    )

    mid = Fraction(12155, 10000)
    dmid = dp.evaluate(mid)
    clauses.append(
        CertificateClause(
            "|p'(1.2155)| <= 0.71",
            abs(dmid) <= Fraction(71, 100),
            f"|p'(1.2155)| = {float(abs(dmid)):.6f} exactly",
        )
    )

    ddp = dp.derivative()
    plus = IntPoly(tuple(max(c, 0) for c in ddp.coeffs))
    minus = IntPoly(tuple(-min(c, 0) for c in ddp.coeffs))
    # both parts increase on [lo, hi], so the cross evaluations bound |p''|
    bound = max(abs(minus.evaluate(hi) - plus.evaluate(lo)), abs(minus.evaluate(lo) - plus.evaluate(hi)))
    clauses.append(
        CertificateClause(
            "|p''| < 400 on the interval",
            bound < 400,
            f"exact bound {float(bound):.3f}",
        )
    )

    concluded = abs(dmid) + Fraction(5, 10000) * 400
    clauses.append(
        CertificateClause(
            "|p'(fixed point)| <= 0.91 < 1 (attracting)",
            concluded <= Fraction(91, 100),
            f"|p'(1.2155)| + 0.0005 * 400 = {float(concluded):.6f}",
        )
    )

    fixed = real_roots_in(p - X, 1.215, 1.216)
    lam = fixed[0] if fixed else math.nan
    clauses.append(
        CertificateClause(
            f"numeric fixed point near {_FIXED_POINT_REF}",
            len(fixed) == 1 and abs(lam - _FIXED_POINT_REF) <= 1e-6,
            f"found {lam!r}",
        )
    )
    mult = complex(dp.evaluate(lam)) if fixed else complex("nan")
    clauses.append(
        CertificateClause(
            f"numeric multiplier near {_MULTIPLIER_REF}",
            fixed != [] and abs(mult - _MULTIPLIER_REF) <= 1e-2,
            f"multiplier {mult.real:.6f}",
        )
    )
    attracting = find_attracting_fixed_points(p)
    clauses.append(
        CertificateClause(
            "attracting fixed-point sweep finds it",
            any(abs(z - _FIXED_POINT_REF) <= 1e-6 for z, _ in attracting),
            f"{len(attracting)} attracting fixed point(s)",
        )
    )
    return Certificate(tuple(clauses))
