import itertools
import math

import numpy as np
import pytest

from hopspec.charpoly import IntPoly, X
from hopspec.signvec import SignVector, all_sign_vectors
from hopspec.spectra import (
    SpectralCloud,
    bloch_matrix,
    eigenvalue_cloud,
    embed_section,
    finite_spectrum,
    one_sided_hausdorff,
    periodic_cloud,
    periodic_spectrum,
    periodic_spectrum_bloch,
    periodic_spectrum_distance,
    section_charpoly,
    section_matrix,
    segment_grid,
    symmetry_cloud,
    symmetry_membership_distance,
)


def sv(*entries):
    return SignVector.from_entries(entries)


def leibniz_charpoly(signs):
    """det(xI - A) by brute-force permutation expansion (test oracle)."""
    n = len(signs) + 1
    a = [[IntPoly(()) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        a[i][i] = X
    for i in range(n - 1):
        a[i][i + 1] = IntPoly((-1,))
        a[i + 1][i] = IntPoly((-signs[i],))
    total = IntPoly(())
    for perm in itertools.permutations(range(n)):
        term = IntPoly((1,))
        for i, j in enumerate(perm):
            if a[i][j].is_zero():
                term = IntPoly(())
                break
            term = term * a[i][j]
        if term.is_zero():
            continue
        inv = sum(1 for x in range(n) for y in range(x + 1, n) if perm[x] > perm[y])
        total = total + (term if inv % 2 == 0 else -term)
    return total


def test_section_charpoly_against_leibniz():
    for n in range(1, 7):
        for k in all_sign_vectors(n):
            assert section_charpoly(k).coeffs == leibniz_charpoly(k.entries).coeffs
    # sampled checks at the larger sizes
    rng = np.random.default_rng(17)
    for n in (7, 8):
        for _ in range(6):
            k = SignVector.from_entries(rng.choice([-1, 1], size=n))
            assert section_charpoly(k).coeffs == leibniz_charpoly(k.entries).coeffs


def test_segment_grid_symmetry():
    t = segment_grid(257)
    assert t[0] == 2.0 and t[-1] == -2.0 and t[128] == 0.0
    assert np.all(t[::-1] == -t)
    assert np.all(np.diff(t) < 0)
    with pytest.raises(ValueError):
        segment_grid(1)


def test_periodic_spectrum_period_one():
    # all-plus period: the real segment [-2, 2]
    c = periodic_spectrum(sv(1), 65)
    assert np.max(np.abs(c.points.imag)) < 1e-12
    assert np.max(np.abs(c.points.real)) <= 2.0 + 1e-12
    assert abs(np.min(c.points.real) + 2.0) < 1e-9 and abs(np.max(c.points.real) - 2.0) < 1e-9
    # all-minus period: the rotated segment
    c = periodic_spectrum(sv(-1), 65)
    assert np.max(np.abs(c.points.real)) < 1e-12
    assert np.max(np.abs(c.points.imag)) <= 2.0 + 1e-12


def test_periodic_spectrum_period_two():
    # the diagonal cross {x +- ix : |x| <= 1}
    c = periodic_spectrum(sv(-1, 1), 129)
    pts = c.points
    assert np.max(np.abs(np.abs(pts.real) - np.abs(pts.imag))) < 1e-9
    assert np.max(np.abs(pts.real)) <= 1.0 + 1e-9


def match_distance(a, b):
    """Greedy matching distance between equal-size point multisets."""
    rem = list(b)
    worst = 0.0
    for z in a:
        i = int(np.argmin([abs(z - w) for w in rem]))
        worst = max(worst, abs(z - rem.pop(i)))
    return worst


def test_bloch_parametrization_matches_matrix_eigenvalues():
    # the determinant expansion vs a brute-force eigensolve of the twisted section
    from hopspec.charpoly import floquet_discriminant
    from hopspec.roots import preimage_roots
    from hopspec.signvec import parity

    rng = np.random.default_rng(8)
    for _ in range(25):
        n = int(rng.integers(2, 6))
        k = SignVector.from_entries(rng.choice([-1, 1], size=n))
        phi = float(rng.uniform(0, 2 * np.pi))
        ref = np.linalg.eigvals(bloch_matrix(k, phi))
        p = floquet_discriminant(k)
        w = np.exp(1j * phi) * parity(k) + np.exp(-1j * phi)
        got = preimage_roots(p, np.array([w]))[0]
        assert match_distance(got, ref) < 1e-8


def test_bloch_examples():
    # phi = 0 on the all-plus pair: eigenvalues +-2
    k = sv(1, 1)
    ref = np.sort_complex(np.linalg.eigvals(bloch_matrix(k, 0.0)))
    assert np.allclose(ref, [-2, 2], atol=1e-12)
    # quarter phase on the alternating pair: +-(1 - i)
    k = sv(-1, 1)
    ref = np.sort_complex(np.linalg.eigvals(bloch_matrix(k, np.pi / 2)))
    assert np.allclose(np.sort_complex(np.array([1 - 1j, -1 + 1j])), ref, atol=1e-12)
    with pytest.raises(ValueError):
        periodic_spectrum_bloch(sv(1), 16)


def test_dual_parametrizations_cover_the_same_curve():
    for k in (sv(1, 1), sv(-1, 1), sv(1, -1, 1), sv(-1, -1, 1, 1)):
        a = periodic_spectrum(k, 257)
        b = periodic_spectrum_bloch(k, 512)
        assert one_sided_hausdorff(a, b) < 1e-5
        assert one_sided_hausdorff(b, a) < 1e-5


def test_finite_spectrum():
    c = finite_spectrum(sv(1, 1, 1), 3)
    got = np.sort_complex(c.points)
    assert np.max(np.abs(got - np.array([-math.sqrt(2), 0, math.sqrt(2)]))) < 1e-9
    assert finite_spectrum(sv(1), 1).points.tolist() == [0j]
    for k1 in (-1, 1):
        got = np.sort_complex(finite_spectrum(sv(k1, 1), 2).points)
        ref = np.sort_complex(np.linalg.eigvals(section_matrix(sv(k1, 1), 2)))
        assert np.max(np.abs(got - ref)) < 1e-9
    with pytest.raises(ValueError):
        finite_spectrum(sv(1), 2)


def test_eigenvalue_cloud():
    c = eigenvalue_cloud(2)
    assert sorted(np.round(c.points, 12).tolist(), key=lambda z: (z.real, z.imag)) == [
        -1,
        -1j,
        1j,
        1,
    ]
    for n in (1, 3, 5):
        pts = eigenvalue_cloud(n).points
        assert np.min(np.abs(pts)) < 1e-12  # zero eigenvalue for odd sizes
    pts = eigenvalue_cloud(4).points
    assert one_sided_hausdorff(1j * pts, pts) < 1e-9
    assert one_sided_hausdorff(np.conj(pts), pts) < 1e-9


def test_periodic_cloud_nesting_and_bounds():
    c1 = periodic_cloud(1, 65)
    c2 = periodic_cloud(2, 65, cumulative=True)
    assert one_sided_hausdorff(c1, c2) < 1e-12  # period-1 arcs persist
    pts = c2.points
    assert np.max(np.abs(pts.real) + np.abs(pts.imag)) <= 2.0 + 1e-9
    # the Chebyshev grid is self-nested under the square map, so the period-1
    # samples land exactly on period-2 preimage samples: union adds nothing
    assert len(c2) == len(periodic_cloud(2, 65))
    assert len(periodic_cloud(3, 65, cumulative=True)) > len(periodic_cloud(3, 65))


def test_symmetry_cloud_is_a_subset():
    full = periodic_cloud(4, 65)
    sym = symmetry_cloud(4, 65)
    assert one_sided_hausdorff(sym, full) < 1e-12
    assert len(sym) < len(full)


def test_embed_section():
    k = sv(1, 1, 1)
    l = embed_section(k, 1, 1, -1, 1)
    assert l.entries == (1, 1, 1, 1, 1, 1, -1, 1)
    from hopspec.signvec import is_symmetry_vector

    assert is_symmetry_vector(l)
    # eigenvalues sit inside each embedded periodic spectrum
    eig = finite_spectrum(k, 3).points
    distinct = set()
    for a, b, c, d in itertools.product((-1, 1), repeat=4):
        l = embed_section(k, a, b, c, d)
        from hopspec.charpoly import floquet_discriminant

        distinct.add(floquet_discriminant(l).coeffs)
        assert periodic_spectrum_distance(l, eig).max() < 1e-6
    assert len(distinct) == 7
    with pytest.raises(ValueError):
        embed_section(sv(1), 1, 1, 1, 1)
    with pytest.raises(ValueError):
        embed_section(k, 0, 1, 1, 1)


def test_membership_distance_is_small_only_on_the_spectrum():
    k = sv(-1, 1)  # spectrum is the diagonal cross
    on = np.array([0.5 + 0.5j, -0.3 + 0.3j])
    off = np.array([1.5 + 0.0j, 0.9 + 0.1j])
    d_on = periodic_spectrum_distance(k, on)
    d_off = periodic_spectrum_distance(k, off)
    assert d_on.max() < 1e-9
    assert d_off.min() > 1e-2


def test_symmetry_membership_distance():
    eig = eigenvalue_cloud(2).points
    assert symmetry_membership_distance(6, eig).max() < 1e-6


def test_cloud_dedup_and_csv(tmp_path):
    a = SpectralCloud.build([1 + 1j, 1 + 1j, 2.0], "a", [0.1, 0.2, 0.3])
    b = SpectralCloud.build([1 + 1j], "b", [9.0])
    merged = SpectralCloud.merge([a, b], label="u")
    assert len(merged) == 2  # duplicates collapse, first witness kept
    sid = merged.source_ids[np.argmin(np.abs(merged.points - (1 + 1j)))]
    assert merged.sources[sid] == "a"
    c = finite_spectrum(sv(1, 1), 2)
    path = tmp_path / "pts.csv"
    c.write_csv(path)
    text = path.read_text()
    lines = text.strip().split("\n")
    assert lines[0] == "re,im,source,param"
    assert len(lines) == 3
    assert lines[1].endswith(",++,")  # eigenvalues carry no parameter
    assert "\r" not in text


def test_hausdorff_basics():
    pts = np.array([0j, 1 + 1j])
    assert one_sided_hausdorff(pts, pts) == 0.0
    with pytest.raises(ValueError):
        one_sided_hausdorff(pts, np.array([], dtype=complex))
