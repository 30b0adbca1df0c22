"""Spectra of periodic hopping operators and their finite sections.

Everything is computed through the exact integer polynomials: the period-n
spectrum is the discriminant preimage of [-2,2] (entry product +1) or
i[-2,2] (product -1), sampled along the segment; finite-section eigenvalues
are the roots of the section characteristic polynomial.  A second, phase
parametrization of the same curves (corner-twisted sections) serves as a
cross-check.  Point sets are carried as flat clouds with per-point
provenance so unions stay auditable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .charpoly import IntPoly, X, floquet_discriminant, section_charpoly
from .roots import all_roots, preimage_roots
from .signvec import SignVector, all_sign_vectors, parity, symmetry_vectors

DEDUP_PITCH = 1e-9


@dataclass(frozen=True)
class SpectralCloud:
    """A finite multiset of spectrum samples with provenance.

    ``sources[source_ids[i]]`` names the pattern that produced point i and
    ``params[i]`` is the segment (or phase) parameter; NaN marks points, such
    as eigenvalues, that carry no parameter.
    """

    points: np.ndarray
    source_ids: np.ndarray
    params: np.ndarray
    sources: tuple[str, ...]
    label: str

    def __len__(self) -> int:
        return len(self.points)

    @classmethod
    def build(cls, points, source: str, params=None, label: str = "") -> "SpectralCloud":
        pts = np.asarray(points, dtype=complex).ravel()
        if params is None:
            par = np.full(pts.size, np.nan)
        else:
            par = np.asarray(params, dtype=float).ravel()
        return cls(pts, np.zeros(pts.size, dtype=np.int32), par, (source,), label or source)

    @classmethod
    def merge(cls, clouds: Sequence["SpectralCloud"], label: str, dedup: bool = True) -> "SpectralCloud":
        """Union of clouds; grid deduplication keeps the first witness."""
        points, ids, params, sources = [], [], [], []
        for c in clouds:
            base = len(sources)
            sources.extend(c.sources)
            points.append(c.points)
            ids.append(c.source_ids.astype(np.int64) + base)
            params.append(c.params)
        pts = np.concatenate(points) if points else np.empty(0, dtype=complex)
        idarr = np.concatenate(ids) if ids else np.empty(0, dtype=np.int64)
        pararr = np.concatenate(params) if params else np.empty(0)
        out = cls(pts, idarr.astype(np.int32), pararr, tuple(sources), label)
        return out.dedup() if dedup else out

    def dedup(self, pitch: float = DEDUP_PITCH) -> "SpectralCloud":
        if not len(self):
            return self
        key = np.empty(len(self), dtype=[("re", np.int64), ("im", np.int64)])
        key["re"] = np.round(self.points.real / pitch)
        key["im"] = np.round(self.points.imag / pitch)
        _, first = np.unique(key, return_index=True)
        first.sort()
        return SpectralCloud(
            self.points[first],
            self.source_ids[first],
            self.params[first],
            self.sources,
            self.label,
        )

    def to_csv(self) -> str:
        lines = ["re,im,source,param"]
        for z, sid, par in zip(self.points, self.source_ids, self.params):
            ptxt = "" if math.isnan(par) else f"{par:.17g}"
            lines.append(f"{z.real:.17g},{z.imag:.17g},{self.sources[sid]},{ptxt}")
        return "\n".join(lines) + "\n"

    def write_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.to_csv())


def segment_grid(num_t: int) -> np.ndarray:
    """Chebyshev-spaced samples of [-2, 2], dense near the endpoints.

    Built to be exactly symmetric: the endpoints are exactly +-2 and, for odd
    counts, the midpoint is exactly 0, so the degenerate arc-endpoint solves
    take the exact integer path.
    """
    if num_t < 2:
        raise ValueError(f"need num_t >= 2, got {num_t}")
    j = np.arange(num_t)
    t = 2.0 * np.cos(np.pi * j / (num_t - 1))
    half = num_t // 2
    t[num_t - 1 - np.arange(half)] = -t[:half]
    if num_t % 2:
        t[half] = 0.0
    t[0] = 2.0
    return t


def _discriminant(k: SignVector) -> IntPoly:
    # period 1 has the linear discriminant regardless of the sign
    return X if k.n == 1 else floquet_discriminant(k)


def periodic_spectrum(k: SignVector, num_t: int = 257) -> SpectralCloud:
    """Period-n spectrum sampled through discriminant preimages.

    For each parameter t the cloud holds the full root set of p(x) = t
    (entry product +1) or p(x) = i t (product -1), so the cloud has
    n * num_t points covering all spectral arcs.
    """
    p = _discriminant(k)
    t = segment_grid(num_t)
    w = t.astype(complex) if parity(k) == 1 else 1j * t
    roots = preimage_roots(p, w)
    params = np.repeat(t, p.degree)
    return SpectralCloud.build(roots.ravel(), str(k), params, label=f"per:{k}")


def periodic_spectrum_bloch(k: SignVector, num_phi: int = 512) -> SpectralCloud:
    """The same spectrum through the phase parametrization (cross-check path).

    The corner-twisted n x n section at phase phi has characteristic values
    where the discriminant equals e^{i phi} * prod(k) + e^{-i phi}, i.e.
    2 cos(phi) for even patterns and -2i sin(phi) for odd ones.  Phases near
    the degenerate values are snapped so arc endpoints take the exact path.
    """
    if k.n < 2:
        raise ValueError("phase parametrization needs period >= 2")
    if num_phi < 1:
        raise ValueError(f"need num_phi >= 1, got {num_phi}")
    p = _discriminant(k)
    phi = 2.0 * np.pi * np.arange(num_phi) / num_phi
    if parity(k) == 1:
        c = np.cos(phi)
        snap = np.abs(np.abs(c) - 1.0) < 4e-16
        c[snap] = np.sign(c[snap])
        w = (2.0 * c).astype(complex)
    else:
        s = np.sin(phi)
        snap = np.abs(np.abs(s) - 1.0) < 4e-16
        s[snap] = np.sign(s[snap])
        w = -2j * s
    roots = preimage_roots(p, w)
    params = np.repeat(phi, p.degree)
    return SpectralCloud.build(roots.ravel(), str(k), params, label=f"bloch:{k}")


def bloch_matrix(k: SignVector, phi: float) -> np.ndarray:
    """The corner-twisted section itself (for brute-force cross-checks)."""
    n = k.n
    a = section_matrix(k, n).astype(complex)
    a[n - 1, 0] += np.exp(-1j * phi)
    a[0, n - 1] += k[n - 1] * np.exp(1j * phi)
    return a


def section_matrix(k: SignVector | Sequence[int], n: int) -> np.ndarray:
    """The n x n section: zero diagonal, unit superdiagonal, signs below."""
    ents = k.entries if isinstance(k, SignVector) else tuple(k)
    if len(ents) < n - 1:
        raise ValueError(f"need at least {n - 1} signs, got {len(ents)}")
    a = np.zeros((n, n))
    for i in range(n - 1):
        a[i, i + 1] = 1.0
        a[i + 1, i] = ents[i]
    return a


def finite_spectrum(k: SignVector, n: int) -> SpectralCloud:
    """Eigenvalues of the n x n section (only the first n-1 signs matter).

    Computed as the exact roots of the section characteristic polynomial from
    the three-term recurrence; repeated eigenvalues come out exact.
    """
    if k.n < n:
        raise ValueError(f"pattern of length {k.n} too short for an {n} x {n} section")
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    chi = section_charpoly(k.entries[: n - 1])
    pts = all_roots(chi).roots
    return SpectralCloud.build(np.array(pts), str(k), None, label=f"fin{n}:{k}")


def eigenvalue_cloud(n: int) -> SpectralCloud:
    """Union of the eigenvalues of all 2^(n-1) distinct n x n sections."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    clouds = []
    if n == 1:
        clouds.append(SpectralCloud.build(np.zeros(1, dtype=complex), "+", None))
    else:
        for prefix in all_sign_vectors(n - 1):
            chi = section_charpoly(prefix.entries)
            pts = np.array(all_roots(chi).roots)
            clouds.append(SpectralCloud.build(pts, str(prefix), None))
    return SpectralCloud.merge(clouds, label=f"sigma:{n}", dedup=True)


def _grouped_periodic(vectors: Iterable[SignVector], num_t: int) -> list[SpectralCloud]:
    """One preimage sweep per distinct (discriminant, parity) class."""
    groups: dict[tuple[tuple[int, ...], int], SignVector] = {}
    for k in vectors:
        key = (_discriminant(k).coeffs, parity(k))
        groups.setdefault(key, k)
    return [periodic_spectrum(k, num_t) for k in groups.values()]


def periodic_cloud(n: int, num_t: int = 257, cumulative: bool = False) -> SpectralCloud:
    """Union of all period-n spectra; with ``cumulative`` the union over
    periods 1..n.  Patterns sharing a discriminant are solved once."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    periods = range(1, n + 1) if cumulative else (n,)
    clouds = []
    for m in periods:
        clouds.extend(_grouped_periodic(all_sign_vectors(m), num_t))
    name = f"Pi:{n}" if cumulative else f"pi:{n}"
    return SpectralCloud.merge(clouds, label=name, dedup=True)


def symmetry_cloud(n: int, num_t: int = 257) -> SpectralCloud:
    """Union of period-n spectra over the symmetry patterns only."""
    clouds = _grouped_periodic(symmetry_vectors(n), num_t)
    return SpectralCloud.merge(clouds, label=f"piS:{n}", dedup=True)


def embed_section(k: SignVector, a: int, b: int, c: int, d: int) -> SignVector:
    """The period-(2n+2) pattern (reversed prefix, a, b, prefix, c, d) whose
    periodic spectrum contains every eigenvalue of the n x n section of k.

    With a == b and (c, d) == (-1, 1) the result is a symmetry pattern.
    """
    if k.n < 2:
        raise ValueError("embedding needs a pattern of length >= 2")
    for s in (a, b, c, d):
        if s not in (-1, 1):
            raise ValueError("a, b, c, d must be +-1")
    tilde = k.entries[: k.n - 1]
    return SignVector.from_entries(tilde[::-1] + (a, b) + tilde + (c, d))


def one_sided_hausdorff(a, b) -> float:
    """max over points of a of the distance to the nearest point of b."""
    pa = a.points if isinstance(a, SpectralCloud) else np.asarray(a, dtype=complex).ravel()
    pb = b.points if isinstance(b, SpectralCloud) else np.asarray(b, dtype=complex).ravel()
    if pa.size == 0 or pb.size == 0:
        raise ValueError("empty point set")
    tree = cKDTree(np.column_stack([pb.real, pb.imag]))
    d, _ = tree.query(np.column_stack([pa.real, pa.imag]))
    return float(np.max(d))


def periodic_spectrum_distance(k: SignVector, points) -> np.ndarray:
    """Upper bound on the distance from each point to the period-n spectrum.

    Each query value is pushed through the discriminant, clamped onto the
    spectral segment, and pulled back; the nearest preimage root witnesses
    membership, so values near zero certify inclusion to that tolerance.
    """
    pts = np.asarray(points, dtype=complex).ravel()
    p = _discriminant(k)
    w0 = np.array([complex(p.evaluate(z)) for z in pts])
    if parity(k) == 1:
        w = np.clip(w0.real, -2.0, 2.0).astype(complex)
    else:
        w = 1j * np.clip(w0.imag, -2.0, 2.0)
    roots = preimage_roots(p, w)
    return np.min(np.abs(roots - pts[:, None]), axis=1)


def symmetry_membership_distance(n: int, points) -> np.ndarray:
    """Distance bound from each point to the union of period-n spectra over
    the symmetry patterns (minimum over the patterns)."""
    pts = np.asarray(points, dtype=complex).ravel()
    best = np.full(pts.size, np.inf)
    for k in symmetry_vectors(n):
        best = np.minimum(best, periodic_spectrum_distance(k, pts))
    return best
