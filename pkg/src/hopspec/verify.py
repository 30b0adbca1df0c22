"""Self-verification suites, one per module's invariant set.

Each suite returns a list of named checks with pass/fail status so the CLI
can print one line per check and exit nonzero on any failure.  The same
functions back the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from . import bounds, charpoly, dynamics, roots, signvec, spectra
from .charpoly import IntPoly
from .signvec import SignVector


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _check(name: str, passed, detail: str = "") -> CheckResult:
    return CheckResult(name, bool(passed), detail)


@lru_cache(maxsize=None)
def _disc(entries: tuple[int, ...]) -> IntPoly:
    return charpoly.floquet_discriminant(SignVector.from_entries(entries))


SUITE_NAMES = (
    "recurrences",
    "symmetries",
    "inclusions",
    "interlacing",
    "region",
    "counterexample",
    "julia",
)


# ---------------------------------------------------------------------------


def suite_recurrences() -> list[CheckResult]:
    """Exact-polynomial identities: parities, closed families, growth bounds."""
    out = []

    ok = True
    for n in range(1, 13):
        for k in signvec.all_sign_vectors(n):
            q = charpoly.jacobi_charpoly(k)
            if not q.is_monic() or q.degree != n + 1:
                ok = False
            if n % 2 == 1:
                ok &= all(c == 0 for j, c in enumerate(q.coeffs) if j % 2 == 1)
                ok &= q.coeffs[0] in (-1, 1)
            else:
                ok &= all(c == 0 for j, c in enumerate(q.coeffs) if j % 2 == 0)
    out.append(_check("section charpoly parity and constant term, n <= 12", ok))

    ok = True
    for n in range(2, 13):
        for k in signvec.all_sign_vectors(n):
            p = _disc(k.entries)
            if not p.is_monic() or p.degree != n:
                ok = False
            want = 1 if n % 2 == 0 else 0  # even/odd function
            ok &= all(c == 0 for j, c in enumerate(p.coeffs) if j % 2 != n % 2)
    out.append(_check("discriminant parity (odd/even function), n <= 12", ok))

    ok = all(
        charpoly.all_plus_poly(m).coeffs
        == _disc((1,) * (m - 2) + (-1, 1)).coeffs
        for m in range(2, 13)
    )
    out.append(_check("all-plus family matches its pattern discriminant, m <= 12", ok))

    ok = all(
        charpoly.alternating_poly(m).coeffs
        == _disc(tuple((-1) ** j for j in range(1, 2 * m))).coeffs
        for m in range(2, 9)
    )
    out.append(_check("alternating family matches its pattern discriminant, m <= 8", ok))

    ok = True
    for n in range(2, 17):
        for k in signvec.symmetry_vectors(n):
            ok &= charpoly.palindromic_discriminant(k).coeffs == _disc(k.entries).coeffs
    out.append(_check("palindromic shortcut agrees with the discriminant, n <= 16", ok))

    rng = np.random.default_rng(7)
    pts = 2.0 + rng.uniform(0.0, 2.0, 200)
    pts = pts * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, 200))
    ok = True
    for n in range(1, 11):
        for k in signvec.all_sign_vectors(n):
            vals = np.abs(charpoly.jacobi_charpoly(k).evaluate(pts))
            ok &= bool(np.all(vals >= n + 2 - 1e-9))
    out.append(_check("|section charpoly| >= n+2 on sampled |z| >= 2, n <= 10", ok))

    ok = True
    for n in range(2, 11):
        for k in signvec.symmetry_vectors(n):
            vals = np.abs(_disc(k.entries).evaluate(pts))
            ok &= bool(np.all(vals >= 2 * n - 1e-9))
    out.append(_check("|symmetry discriminant| >= 2n on sampled |z| >= 2, n <= 10", ok))

    table = charpoly.symmetry_polynomials(6)
    out.append(_check("distinct symmetry polynomials up to degree 6", len(table) == 12, f"{len(table)} rows"))

    # root engine against the independent simultaneous solver; both solve the
    # exact squarefree reduction (shared integer preprocessing, separate
    # iterations) since neither iteration is meant for repeated roots
    ok = True
    worst = 0.0
    for n in range(1, 11):
        for k in signvec.all_sign_vectors(n):
            d = _oracle_mismatch(charpoly.jacobi_charpoly(k))
            worst = max(worst, d)
            ok &= d <= 1e-8
    out.append(_check("root engine matches Durand-Kerner on section polys, n <= 10", ok, f"max mismatch {worst:.2e}"))

    rng = np.random.default_rng(11)
    ok = True
    worst = 0.0
    for _ in range(100):
        deg = int(rng.integers(2, 13))
        cs = rng.integers(-9, 10, deg + 1)
        cs[-1] = rng.integers(1, 10)
        d = _oracle_mismatch(IntPoly(tuple(int(c) for c in cs)))
        worst = max(worst, d)
        ok &= d <= 1e-8
    out.append(_check("root engine matches Durand-Kerner on 100 random polys", ok, f"max mismatch {worst:.2e}"))
    return out


def _oracle_mismatch(p: IntPoly) -> float:
    m0 = next(i for i, c in enumerate(p.coeffs) if c)
    reduced = IntPoly(p.coeffs[m0:])
    if reduced.degree >= 1:
        g = roots.poly_gcd(reduced, reduced.derivative())
        radical = roots.exact_div(reduced, g) if g.degree >= 1 else reduced
    else:
        return 0.0
    got = {z for z, _ in roots.roots_with_multiplicity(p) if z != 0}
    ref = roots.durand_kerner(np.array(radical.coeffs, dtype=complex))
    return _matching_distance(np.sort_complex(np.array(sorted(got, key=lambda z: (z.real, z.imag)))), np.sort_complex(ref))


def _matching_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Greedy optimal-ish matching distance between equal-size root sets."""
    if a.size != b.size:
        return math.inf
    remaining = list(b)
    worst = 0.0
    for z in a:
        dists = [abs(z - w) for w in remaining]
        i = int(np.argmin(dists))
        worst = max(worst, dists[i])
        remaining.pop(i)
    return worst


# ---------------------------------------------------------------------------


def suite_symmetries() -> list[CheckResult]:
    """Pattern actions and the induced identities on discriminants."""
    out = []

    ok = True
    for n in (1, 2, 3, 5, 8):
        for k in signvec.all_sign_vectors(n):
            ok &= signvec.reverse(signvec.reverse(k)) == k
            ok &= signvec.negate(signvec.negate(k)) == k
            ok &= signvec.cyclic_shift(k, n) == k
            s = 3
            ok &= signvec.cyclic_shift(signvec.cyclic_shift(k, s), n - s % n) == k
    out.append(_check("reverse/negate involutions, full shift is identity", ok))

    ok = True
    counts = True
    for n in range(2, 17):
        enum = signvec.symmetry_vectors(n)
        counts &= len(enum) == 2 ** ((n + 1) // 2 - 1)
        brute = [k for k in signvec.all_sign_vectors(n) if signvec.is_symmetry_vector(k)]
        ok &= enum == brute
    out.append(_check("symmetry-pattern enumeration matches brute force, n <= 16", ok))
    out.append(_check("|K_n| = 2^(ceil(n/2)-1), n <= 16", counts))

    cyc = rev = neg = True
    for n in range(2, 13):
        for k in signvec.all_sign_vectors(n):
            p = _disc(k.entries)
            rev &= _disc(signvec.reverse(k).entries).coeffs == p.coeffs
            neg &= _disc(signvec.negate(k).entries).coeffs == charpoly.quarter_turn(p).coeffs
            for s in range(1, n):
                cyc &= _disc(signvec.cyclic_shift(k, s).entries).coeffs == p.coeffs
    out.append(_check("cyclic invariance of discriminants, n <= 12 exhaustive", cyc))
    out.append(_check("reversal invariance of discriminants, n <= 12 exhaustive", rev))
    out.append(_check("negation rule = quarter turn, n <= 12 exhaustive", neg))
    return out


# ---------------------------------------------------------------------------


def suite_inclusions() -> list[CheckResult]:
    """Finite sections inside periodic spectra; dual parametrizations agree."""
    out = []

    ok = True
    for n in range(1, 15):
        for k in signvec.all_sign_vectors(n):
            ok &= spectra.section_charpoly(k).coeffs == charpoly.jacobi_charpoly(k).coeffs
    out.append(_check("section recurrence equals first-row expansion, n <= 14", ok))

    worst = 0.0
    for n in range(2, 7):
        for k in signvec.all_sign_vectors(n):
            a = spectra.periodic_spectrum(k, 257)
            b = spectra.periodic_spectrum_bloch(k, 512)
            worst = max(
                worst,
                spectra.one_sided_hausdorff(a, b),
                spectra.one_sided_hausdorff(b, a),
            )
    out.append(_check("preimage vs phase clouds, n <= 6", worst <= 1e-5, f"max one-sided distance {worst:.2e}"))

    worst = 0.0
    for m in range(1, 6):
        eig = spectra.eigenvalue_cloud(m).points
        d = spectra.symmetry_membership_distance(2 * m + 2, eig)
        worst = max(worst, float(d.max()))
    out.append(_check("section eigenvalues inside the symmetry cloud of period 2n+2, n <= 5", worst <= 1e-6, f"max distance {worst:.2e}"))

    worst = 0.0
    for n in (2, 3, 4):
        cloud = spectra.periodic_cloud(n, 129)
        for mapped in (1j * cloud.points, np.conj(cloud.points)):
            worst = max(worst, spectra.one_sided_hausdorff(mapped, cloud.points))
    out.append(_check("quarter-turn and conjugation symmetry of periodic clouds", worst <= 1e-9, f"max displacement {worst:.2e}"))

    ok = True
    for n in range(1, 9):
        pts = spectra.periodic_cloud(n, 65).points
        ok &= bool(np.all(np.abs(pts.real) + np.abs(pts.imag) <= 2.0 + 1e-9))
        ok &= bool(np.all(bounds.in_second_order_range(pts + 0.0)))
    out.append(_check("periodic clouds inside the diamond and second-order range, n <= 8", ok))
    return out


# ---------------------------------------------------------------------------


def suite_interlacing() -> list[CheckResult]:
    """Level-crossing order of the all-plus family and related root facts."""
    out = []

    vals = {m: roots.level_one_crossings(m) for m in range(3, 42)}
    ok = True
    margin = math.inf
    for m in range(3, 41):
        minus_next, _ = vals[m + 1]
        _, plus = vals[m]
        _, plus_next = vals[m + 1]
        gaps = (plus - minus_next, plus_next - plus)
        margin = min(margin, *gaps)
        ok &= all(g > 1e-10 for g in gaps)
    out.append(_check("interlacing minus(m+1) < plus(m) < plus(m+1), 3 <= m <= 40", ok, f"min gap {margin:.3e}"))

    lam4, _ = vals[4]
    out.append(_check("level -1 crossing at m = 4 equals 1", abs(lam4 - 1.0) <= 1e-12, f"{lam4!r}"))

    ok = all(charpoly.all_plus_poly(m).evaluate(2) == 2 * m for m in range(1, 21))
    out.append(_check("all-plus family value 2m at x = 2, exact integers, m <= 20", ok))

    ok = True
    for m in range(4, 21):
        minus, _ = vals[m]
        xs = np.linspace(minus + 1e-9, 2.0 - 1e-12, 300)
        ys = charpoly.all_plus_poly(m).evaluate(xs)
        ok &= bool(np.all(np.diff(ys) > 0))
    out.append(_check("all-plus family strictly increasing past its -1 crossing, m <= 20", ok))

    ok = abs(vals[3][1] - 2.0) < 1.0 and vals[40][1] > vals[10][1]
    drift = 2.0 - vals[40][1]
    out.append(_check("+1 crossings increase toward 2", ok, f"2 - plus(40) = {drift:.4f}"))
    return out


# ---------------------------------------------------------------------------


def suite_region() -> list[CheckResult]:
    """The bound regions: scalar constants, containments, s_min oracle."""
    out = []

    s_half = roots.radial_cubic(0.5)
    out.append(_check("radial cubic at 1/2 equals 1", abs(s_half - 1.0) < 1e-12, f"{s_half!r}"))
    s_one = roots.radial_cubic(1.0)
    out.append(_check("radial cubic at 1 near 1.75488", abs(s_one - 1.75488) <= 1e-4, f"{s_one:.6f}"))
    s0 = bounds.preimage_radius(0.0)
    out.append(_check("preimage region radius on the real axis near 1.32472", abs(s0 - 1.32472) <= 1e-4, f"{s0:.6f}"))
    eta = bounds.disk_gap_radius()
    out.append(_check("tangent-disk radius near 0.174744", abs(eta - 0.174744) <= 1e-5, f"{eta:.7f}"))
    eps1 = bounds.pseudo_epsilon(1)
    out.append(_check("order-1 pseudospectral radius equals 2", abs(eps1 - 2.0) <= 1e-12, f"{eps1!r}"))

    ths = np.linspace(-2.0 * np.pi, 2.0 * np.pi, 4001)
    rho = bounds.second_order_radius(ths)
    ok = bool(np.all(np.abs(rho - bounds.second_order_radius(-ths)) < 1e-12))
    ok &= bool(np.all(np.abs(rho - bounds.second_order_radius(ths + np.pi / 2)) < 1e-12))
    j1 = bounds.second_order_radius(np.pi / 6 - 1e-9)
    j2 = bounds.second_order_radius(np.pi / 6 + 1e-9)
    ok &= abs(j1 - j2) < 1e-6 and abs(j1 - math.sqrt(2.0)) < 1e-6
    out.append(_check("second-order radius even, pi/2-periodic, continuous junction", ok))

    th = 2.0 * np.pi * np.arange(100_000) / 100_000
    on_circle = 1.1 * np.exp(1j * th)
    ok = bool(np.all(bounds.lower_region_mask(on_circle)))
    out.append(_check("lower-bound region contains the circle of radius 1.1 (1e5 samples)", ok))

    rng = np.random.default_rng(3)
    disk = np.sqrt(rng.uniform(0, 1, 2000)) * np.exp(2j * np.pi * rng.uniform(0, 1, 2000)) * 1.1
    ok = bool(np.all(bounds.lower_region_mask(disk)))
    out.append(_check("lower-bound region contains 1.1 D (2e3 random samples)", ok))

    rng = np.random.default_rng(5)
    ok = True
    worst = 0.0
    for _ in range(60):
        n = int(rng.integers(1, 5))
        k = SignVector.from_entries(rng.choice([-1, 1], size=max(n, 1)))
        lam = complex(rng.normal(), rng.normal())
        got = bounds.smallest_singular_value(k, n, lam)
        ref = _smin_charpoly_oracle(spectra.section_matrix(k, n), lam)
        worst = max(worst, abs(got - ref))
        ok &= abs(got - ref) <= 1e-8
    out.append(_check("Jacobi s_min matches the characteristic-polynomial oracle, n <= 4", ok, f"max diff {worst:.2e}"))

    # the low orders overshoot (the order-2 bound spills past |z| = 2), so
    # pixelwise nesting only sets in at order 4; areas shrink from order 3 on
    window = (-2.5, 2.5, -2.5, 2.5)
    rasters = {n: bounds.pseudospectral_raster(n, window, 128, 128) for n in range(3, 9)}
    areas = [int(rasters[n].values.sum()) for n in range(3, 9)]
    ok = all(a >= b for a, b in zip(areas, areas[1:]))
    out.append(_check("pseudospectral areas shrink for orders 3..8 at 128^2", ok, f"areas {areas}"))
    ok = all(
        bool(np.all(rasters[n].values >= rasters[n + 1].values)) for n in range(4, 8)
    )
    out.append(_check("pseudospectral rasters nest pixelwise for orders 4..8", ok))
    return out


def _smin_charpoly_oracle(a: np.ndarray, lam: complex) -> float:
    """Brute-force s_min: characteristic polynomial of M^H M via
    Faddeev-LeVerrier, smallest real root, square root."""
    m = a.astype(complex) - lam * np.eye(a.shape[0])
    h = m.conj().T @ m
    n = h.shape[0]
    coeffs = [1.0 + 0j]  # descending: x^n + c1 x^(n-1) + ...
    mk = np.zeros_like(h)
    for k in range(1, n + 1):
        mk = h @ mk + coeffs[-1] * np.eye(n)
        coeffs.append(-(h @ mk).trace() / k)
    eigs = np.roots(np.array(coeffs))
    return math.sqrt(max(0.0, float(np.min(eigs.real))))


# ---------------------------------------------------------------------------


def suite_counterexample() -> list[CheckResult]:
    cert = dynamics.offdisk_fixed_point_certificate()
    return [_check(c.name, c.passed, c.detail) for c in cert.clauses]


# ---------------------------------------------------------------------------


def suite_julia() -> list[CheckResult]:
    """Escape soundness, critical-orbit classification, backward invariance."""
    out = []

    square = IntPoly((0, 0, 1))
    grid = dynamics.filled_julia_raster(square, (-1.6, 1.6, -1.6, 1.6), 256, 256, 120, symmetry_poly=True)
    centers = grid.centers()
    member = grid.values == 120
    mismatch = member != (np.abs(centers) <= 1.0)
    ok = bool(np.all(np.abs(np.abs(centers[mismatch]) - 1.0) <= grid.pixel_diag))
    out.append(_check("filled Julia set of x^2 is the unit disk (1-pixel tolerance)", ok))

    ok = True
    for p, _k in charpoly.symmetry_polynomials(6):
        g = dynamics.filled_julia_raster(p, (-2.2, 2.2, -2.2, 2.2), 96, 96, 80, symmetry_poly=True)
        pts = g.centers()[g.values == 80]
        ok &= bool(np.all(np.abs(pts) < 2.0))
    out.append(_check("no member pixel outside |z| < 2 for symmetry polynomials (deg <= 6)", ok))

    verdicts = {}
    ok = True
    for p, k in charpoly.symmetry_polynomials(7):
        v = dynamics.classify_critical_orbits(p)
        verdicts[p.coeffs] = v
        ok &= dynamics.all_orbits_decided(v)
    out.append(_check("critical orbits all decided for symmetry polynomials of degree <= 7", ok))

    quartic = charpoly.quarter_turn(charpoly.all_plus_poly(4))  # x^4 + 2x^2
    v = {round(c.real, 6) + 1j * round(c.imag, 6): verd.status for c, verd in dynamics.classify_critical_orbits(quartic)}
    ok = v.get(0j) == dynamics.TRAPPED and v.get(1j) == dynamics.ESCAPED and v.get(-1j) == dynamics.ESCAPED
    out.append(_check("x^4 + 2x^2: origin trapped, +-i escaped", ok, str(v)))

    ok = True
    for p, _k in charpoly.symmetry_polynomials(8):
        if p.degree % 2 == 0:
            fixed = dynamics.find_attracting_fixed_points(p)
            ok &= any(abs(z) < 1e-9 and abs(m) < 1e-9 for z, m in fixed)
        elif p.degree <= 7:
            ok &= p.coeffs[0] == 0 and abs(p.coeffs[1]) == 1
    out.append(_check("even symmetry polys: superattracting origin; odd: |p'(0)| = 1", ok))

    ok = True
    for p, _k in charpoly.symmetry_polynomials(5):
        for z, _m in dynamics.find_attracting_fixed_points(p):
            ok &= abs(complex(p.evaluate(z)) - z) <= 1e-9
    out.append(_check("fixed-point residuals below 1e-9", ok))

    ok = True
    rng = np.random.default_rng(13)
    for p, _k in charpoly.symmetry_polynomials(6)[:6]:
        cloud = dynamics.preimage_cloud(p, depth=4, seeds=50, rng_seed=1)
        ok &= bool(np.all(np.abs(cloud.points) < 2.0))
        for lev in (3, 4):
            cur = cloud.points[cloud.params == lev]
            prev = cloud.points[cloud.params == lev - 1]
            take = rng.choice(cur.size, size=min(100, cur.size), replace=False)
            images = np.array([complex(p.evaluate(z)) for z in cur[take]])
            d = spectra.one_sided_hausdorff(images, prev)
            ok &= d <= 1e-8
    out.append(_check("backward cloud: images land on the previous level; all inside |z| < 2", ok))

    # the boundaries of the filled Julia sets of the all-plus family hug the
    # periodic part; 0.05 covers the cloud's sampling density, not a constant
    pi10 = spectra.periodic_cloud(10, 65, cumulative=True)
    worst = 0.0
    for m in range(2, 6):
        g = dynamics.filled_julia_raster(
            charpoly.all_plus_poly(m), (-2.1, 2.1, -2.1, 2.1), 160, 160, 120, symmetry_poly=True
        )
        member = g.values == 120
        interior = member.copy()
        interior[1:-1, 1:-1] = (
            member[1:-1, 1:-1]
            & member[:-2, 1:-1]
            & member[2:, 1:-1]
            & member[1:-1, :-2]
            & member[1:-1, 2:]
        )
        pts = g.centers()[member & ~interior]
        worst = max(worst, spectra.one_sided_hausdorff(pts, pi10.points))
    out.append(_check("Julia boundaries of the all-plus family lie on the periodic cloud", worst <= 0.05, f"max {worst:.3f}"))
    return out


SUITES: dict[str, Callable[[], list[CheckResult]]] = {
    "recurrences": suite_recurrences,
    "symmetries": suite_symmetries,
    "inclusions": suite_inclusions,
    "interlacing": suite_interlacing,
    "region": suite_region,
    "counterexample": suite_counterexample,
    "julia": suite_julia,
}


def run_suite(name: str) -> list[CheckResult]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    return SUITES[name]()
