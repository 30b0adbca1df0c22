"""Explicit bounds on the spectrum, as membership predicates and rasters.

Upper bounds: the open numerical-range diamond |x|+|y| < 2, the tighter
second-order range (square roots of the squared operator's numerical range,
known in closed polar form), and the shrinking pseudospectral sets built
from smallest singular values of n x n sections.  Lower bound: the explicit
region assembled from the degree-3 discriminant preimage of the unit disk,
its square root, two tangent disks, and quarter-turn rotations; it contains
the closed disk of radius 1.1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .roots import bisect_root, make_bracket, pseudospec_angle, radial_cubic
from .signvec import SignVector, all_sign_vectors
from .spectra import section_matrix

SQRT3 = math.sqrt(3.0)


class JacobiError(RuntimeError):
    """Cyclic Jacobi sweep failed to reach the off-diagonal tolerance."""


# ---------------------------------------------------------------------------
# closed-form upper bounds


def in_diamond(z) -> bool | np.ndarray:
    """Membership in the open numerical-range diamond |Re| + |Im| < 2."""
    zz = np.asarray(z, dtype=complex)
    out = np.abs(zz.real) + np.abs(zz.imag) < 2.0
    return bool(out) if zz.ndim == 0 else out


def second_order_radius(theta) -> float | np.ndarray:
    """Boundary radius of the second-order range in direction theta.

    Even and pi/2-periodic; sqrt(2) on the outer sector pi/6 <= |t| <= pi/4
    of each period, 2/sqrt(cos 2t + sqrt(3)|sin 2t|) inside.  Continuous at
    the junction where both branches give sqrt(2).
    """
    th = np.asarray(theta, dtype=float)
    t = np.mod(th, 0.5 * np.pi)
    t = np.where(t > 0.25 * np.pi, 0.5 * np.pi - t, t)
    inner = 2.0 / np.sqrt(np.cos(2.0 * t) + SQRT3 * np.abs(np.sin(2.0 * t)))
    out = np.where(t >= np.pi / 6.0, math.sqrt(2.0), inner)
    return float(out) if th.ndim == 0 else out


def in_second_order_range(z) -> bool | np.ndarray:
    """Membership (closed) in the second-order range."""
    zz = np.asarray(z, dtype=complex)
    out = np.abs(zz) <= second_order_radius(np.angle(zz))
    return bool(out) if zz.ndim == 0 else out


# ---------------------------------------------------------------------------
# pseudospectral upper bounds


@lru_cache(maxsize=None)
def pseudo_epsilon(n: int) -> float:
    """The radius 4 sin(theta_n) used for the order-n pseudospectral bound;
    always at most 2 pi / (n + 2)."""
    return 4.0 * math.sin(pseudospec_angle(n))


def _jacobi_min_eig(herm: np.ndarray, tol: float = 1e-12, max_sweeps: int = 30) -> float:
    """Smallest eigenvalue of a Hermitian matrix by cyclic Jacobi sweeps.

    Each rotation is the unitary plane rotation with phase arg(a[p,q]) and the
    small-angle (Rutishauser) choice for the real 2x2 core; updates touch the
    affected rows/columns elementwise so Hermitian symmetry is kept exactly.
    """
    a = np.array(herm, dtype=complex)
    n = a.shape[0]
    if n == 1:
        return float(a[0, 0].real)
    scale = max(1.0, float(np.linalg.norm(a)))
    idx = np.arange(n)
    offpart = np.empty_like(a)
    for _ in range(max_sweeps):
        np.copyto(offpart, a)
        np.fill_diagonal(offpart, 0.0)
        if float(np.linalg.norm(offpart)) <= tol * scale:
            return float(np.min(np.diag(a).real))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= 1e-300:
                    continue
                phase = apq / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                a[p, p] = a[p, p].real - t * mag
                a[q, q] = a[q, q].real + t * mag
                a[p, q] = a[q, p] = 0.0
                other = idx[(idx != p) & (idx != q)]
                aip = a[other, p]
                aiq = a[other, q]
                a[other, p] = c * aip - s * np.conj(phase) * aiq
                a[other, q] = s * phase * aip + c * aiq
                a[p, other] = np.conj(a[other, p])
                a[q, other] = np.conj(a[other, q])
    raise JacobiError(f"off-diagonal norm did not reach {tol:g} in {max_sweeps} sweeps")


def smallest_singular_value(k: SignVector, n: int, lam: complex) -> float:
    """s_min of (n x n section of k) - lam*I, via cyclic Jacobi diagonalization
    of the Hermitian product M^H M."""
    m = section_matrix(k, n).astype(complex) - complex(lam) * np.eye(n)
    h = m.conj().T @ m
    return math.sqrt(max(0.0, _jacobi_min_eig(h)))


def _smin_batch(prefix: tuple[int, ...], n: int, lams: np.ndarray) -> np.ndarray:
    """Vectorized s_min over many shifts of one section (LAPACK svd)."""
    a = section_matrix(list(prefix) + [1], n).astype(complex)
    mats = a[None, :, :] - lams[:, None, None] * np.eye(n)[None, :, :]
    return np.linalg.svd(mats, compute_uv=False)[:, -1]


def _prefixes(n: int) -> list[tuple[int, ...]]:
    if n == 1:
        return [()]
    return [v.entries for v in all_sign_vectors(n - 1)]


def in_pseudospectral_bound(n: int, lam: complex) -> bool:
    """True iff some n x n section has s_min(section - lam) < 4 sin(theta_n).

    This is the computable membership test for the order-n upper bound that
    decreases to the spectrum; order 1 gives exactly the disk of radius 2.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    eps = pseudo_epsilon(n)
    for prefix in _prefixes(n):
        k = SignVector.from_entries(list(prefix) + [1]) if prefix else SignVector.from_entries([1])
        if smallest_singular_value(k, n, lam) < eps:
            return True
    return False


def pseudospectral_mask(n: int, points, chunk: int = 65536) -> np.ndarray:
    """Vectorized membership of many points in the order-n bound."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    pts = np.asarray(points, dtype=complex).ravel()
    eps = pseudo_epsilon(n)
    mask = np.zeros(pts.size, dtype=bool)
    undecided = np.arange(pts.size)
    for prefix in _prefixes(n):
        for start in range(0, undecided.size, chunk):
            idx = undecided[start : start + chunk]
            smin = _smin_batch(prefix, n, pts[idx])
            mask[idx[smin < eps]] = True
        undecided = undecided[~mask[undecided]]
        if undecided.size == 0:
            break
    return mask


# ---------------------------------------------------------------------------
# the explicit lower-bound region


def preimage_radius(theta) -> float | np.ndarray:
    """Radius of the degree-3 preimage region: sqrt of the radial cubic at
    cos(2 theta).  Even, pi-periodic, maximal on the real axis."""
    th = np.asarray(theta, dtype=float)
    out = np.sqrt(radial_cubic(np.cos(2.0 * th)))
    return float(out) if th.ndim == 0 else out


def _tangent_gain(eps: float) -> float:
    # product bound for the degree-5 discriminant near its unit-circle zeros
    return eps * (1.0 + eps) ** 2 * (SQRT3 + eps) * (2.0 + eps)


@lru_cache(maxsize=1)
def disk_gap_radius() -> float:
    """Radius of the two tangent disks: the positive solution of
    e (1+e)^2 (sqrt3+e) (2+e) = 1, about 0.174744."""
    f = lambda e: _tangent_gain(e) - 1.0
    r = bisect_root(f, make_bracket(f, 0.05, 0.5))
    df = lambda e, h=1e-8: (f(e + h) - f(e - h)) / (2.0 * h)
    for _ in range(3):
        r -= f(r) / df(r)
    return r


def lower_region_mask(points) -> np.ndarray:
    """Vectorized membership in the explicit lower-bound region.

    The region is the union over quarter turns of: the sector |t| <= pi/6 of
    the degree-3 preimage region, the sector pi/6 <= t <= pi/3 of its square
    root, and the two disks tangent to the unit circle at exp(+-i pi/6).
    Strict inequalities throughout (the region is open).
    """
    pts = np.asarray(points, dtype=complex).ravel()
    eta = disk_gap_radius()
    centers = (np.exp(1j * np.pi / 6.0), np.exp(-1j * np.pi / 6.0))
    mask = np.zeros(pts.size, dtype=bool)
    w = pts.copy()
    for _ in range(4):
        r = np.abs(w)
        th = np.angle(w)
        sec1 = np.abs(th) <= np.pi / 6.0 + 1e-15
        if sec1.any():
            mask[sec1] |= r[sec1] < preimage_radius(th[sec1])
        sec2 = (th >= np.pi / 6.0 - 1e-15) & (th <= np.pi / 3.0 + 1e-15)
        if sec2.any():
            mask[sec2] |= r[sec2] < np.sqrt(preimage_radius(2.0 * th[sec2] - 0.5 * np.pi))
        for c in centers:
            mask |= np.abs(w - c) < eta
        w = w * -1j  # test the next quarter turn
    return mask


def in_lower_bound_region(z: complex) -> bool:
    """Scalar membership in the explicit lower-bound region (contains 1.1 D)."""
    return bool(lower_region_mask(np.array([z]))[0])


# ---------------------------------------------------------------------------
# rasters


@dataclass(frozen=True)
class RasterGrid:
    """A pixel grid over a complex window.

    ``values[i, j]`` belongs to the pixel center at column j, row i, with row
    0 at the top of the window (image convention).  Membership rasters use
    the codes 0 = outside, 1 = member, 2 = boundary-uncertain; escape rasters
    store iteration counts.
    """

    window: tuple[float, float, float, float]
    width: int
    height: int
    values: np.ndarray

    def __post_init__(self) -> None:
        re_min, re_max, im_min, im_max = self.window
        if not (re_min < re_max and im_min < im_max):
            raise ValueError(f"badly ordered window {self.window}")
        if self.width < 1 or self.height < 1:
            raise ValueError("need at least one pixel in each direction")
        if self.values.shape != (self.height, self.width):
            raise ValueError("values shape does not match width/height")

    def centers(self) -> np.ndarray:
        re_min, re_max, im_min, im_max = self.window
        xs = re_min + (np.arange(self.width) + 0.5) * (re_max - re_min) / self.width
        ys = im_max - (np.arange(self.height) + 0.5) * (im_max - im_min) / self.height
        return xs[None, :] + 1j * ys[:, None]

    @property
    def pixel_diag(self) -> float:
        re_min, re_max, im_min, im_max = self.window
        return math.hypot((re_max - re_min) / self.width, (im_max - im_min) / self.height)

    def to_pgm(self, escape_max: int | None = None) -> bytes:
        """Binary PGM (P5, maxval 255).

        Membership rasters map 0/1/2 to 0/255/128; escape rasters map counts
        to 0..254 with never-escaped pixels at 255.
        """
        if escape_max is None:
            lut = np.array([0, 255, 128], dtype=np.uint8)
            body = lut[np.clip(self.values, 0, 2)]
        else:
            counts = np.clip(self.values, 0, escape_max)
            body = np.where(
                counts >= escape_max,
                np.uint8(255),
                (254.0 * counts / max(escape_max, 1)).astype(np.uint8),
            )
        header = f"P5\n{self.width} {self.height}\n255\n".encode("ascii")
        return header + body.astype(np.uint8).tobytes()

    def write_pgm(self, path, escape_max: int | None = None) -> None:
        with open(path, "wb") as fh:
            fh.write(self.to_pgm(escape_max))


def raster_membership(
    mask_fn: Callable[[np.ndarray], np.ndarray],
    window: tuple[float, float, float, float],
    width: int,
    height: int,
) -> RasterGrid:
    """Evaluate a vectorized membership predicate at every pixel center."""
    grid = RasterGrid(window, width, height, np.zeros((height, width), dtype=np.int32))
    vals = mask_fn(grid.centers().ravel()).astype(np.int32).reshape(height, width)
    return RasterGrid(window, width, height, vals)


def _symmetric_axis(lo: float, hi: float, count: int) -> bool:
    return abs(lo + hi) < 1e-12 and count % 2 == 0


def pseudospectral_raster(
    n: int,
    window: tuple[float, float, float, float],
    width: int,
    height: int,
    use_symmetry: bool = True,
) -> RasterGrid:
    """Membership raster of the order-n pseudospectral bound.

    On a square window centered at the origin the set's quarter-turn and
    conjugation symmetry lets one octant stand in for the whole grid, which
    cuts the section solves roughly eightfold.
    """
    re_min, re_max, im_min, im_max = window
    grid = RasterGrid(window, width, height, np.zeros((height, width), dtype=np.int32))
    centers = grid.centers()
    symmetric = (
        use_symmetry
        and width == height
        and _symmetric_axis(re_min, re_max, width)
        and _symmetric_axis(im_min, im_max, height)
        and abs((re_max - re_min) - (im_max - im_min)) < 1e-12
    )
    if not symmetric:
        mask = pseudospectral_mask(n, centers.ravel()).reshape(height, width)
        return RasterGrid(window, width, height, mask.astype(np.int32))
    half = width // 2
    habs = centers.real[0][half:]  # positive half-axis values, ascending
    ii, jj = np.triu_indices(half)  # jj >= ii: |x| index >= |y| index
    octant = habs[jj] + 1j * habs[ii]
    vals = pseudospectral_mask(n, octant)
    tri = np.zeros((half, half), dtype=bool)
    tri[ii, jj] = vals
    quad = np.where(np.arange(half)[:, None] <= np.arange(half)[None, :], tri, tri.T)
    # half-axis index of |x| per column and of |y| per row (both axes share
    # the positive value table because the window is centered and square)
    jxs = np.arange(width)
    col = np.where(jxs >= half, jxs - half, half - 1 - jxs)
    iys = np.arange(height)
    row = np.where(iys >= half, iys - half, half - 1 - iys)
    full = quad[row[:, None], col[None, :]]
    return RasterGrid(window, width, height, full.astype(np.int32))
