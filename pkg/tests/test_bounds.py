import math

import numpy as np
import pytest

from hopspec.bounds import (
    RasterGrid,
    disk_gap_radius,
    in_diamond,
    in_lower_bound_region,
    in_pseudospectral_bound,
    in_second_order_range,
    lower_region_mask,
    preimage_radius,
    pseudo_epsilon,
    pseudospectral_mask,
    pseudospectral_raster,
    raster_membership,
    second_order_radius,
    smallest_singular_value,
)
from hopspec.signvec import SignVector
from hopspec.spectra import periodic_cloud, section_matrix


def sv(*entries):
    return SignVector.from_entries(entries)


def test_in_diamond():
    assert in_diamond(0)
    assert not in_diamond(1 + 1j)  # boundary of the open set
    assert not in_diamond(1.5 + 0.5j)
    assert in_diamond(np.array([0.5, 1.9, 1.0 + 0.99j])).tolist() == [True, True, True]


def test_second_order_radius():
    assert second_order_radius(math.pi / 4) == pytest.approx(math.sqrt(2), abs=1e-15)
    assert second_order_radius(0.0) == pytest.approx(2.0, abs=1e-15)
    assert second_order_radius(math.pi / 6) == pytest.approx(math.sqrt(2), abs=1e-12)
    ths = np.linspace(-7, 7, 1001)
    r = second_order_radius(ths)
    assert np.allclose(r, second_order_radius(-ths), atol=1e-12)
    assert np.allclose(r, second_order_radius(ths + np.pi / 2), atol=1e-12)
    assert np.all((r >= math.sqrt(2) - 1e-12) & (r <= 2.0 + 1e-12))


def test_in_second_order_range():
    assert in_second_order_range(2.0)  # boundary point on the axis
    assert not in_second_order_range(1.9 * np.exp(1j * np.pi / 4))
    pts = periodic_cloud(4, 65).points
    assert np.all(in_second_order_range(pts))
    # the second-order range sits inside the closed diamond, strictly somewhere
    grid = raster_membership(in_second_order_range, (-2.2, 2.2, -2.2, 2.2), 64, 64)
    centers = grid.centers()
    n2 = grid.values == 1
    assert np.all(np.abs(centers[n2].real) + np.abs(centers[n2].imag) <= 2.0 + 1e-9)
    diamond = np.abs(centers.real) + np.abs(centers.imag) < 2.0
    assert np.any(diamond & ~n2)


def test_pseudo_epsilon():
    assert pseudo_epsilon(1) == pytest.approx(2.0, abs=1e-12)
    for n in range(1, 30):
        assert pseudo_epsilon(n) <= 2 * math.pi / (n + 2) + 1e-12


def test_smallest_singular_value():
    assert smallest_singular_value(sv(1), 1, 0.0) == pytest.approx(0.0, abs=1e-15)
    assert smallest_singular_value(sv(1, 1), 2, 0.0) == pytest.approx(1.0, abs=1e-12)
    # an eigenvalue makes the shifted section singular
    assert smallest_singular_value(sv(1, 1, 1), 3, math.sqrt(2)) < 1e-9
    rng = np.random.default_rng(9)
    for _ in range(40):
        n = int(rng.integers(1, 7))
        k = SignVector.from_entries(rng.choice([-1, 1], size=n))
        lam = complex(rng.normal(), rng.normal())
        ref = np.linalg.svd(section_matrix(k, n) - lam * np.eye(n), compute_uv=False)[-1]
        assert smallest_singular_value(k, n, lam) == pytest.approx(ref, abs=1e-11)


def test_pseudospectral_bound_order_one_is_the_disk():
    for z in (0.0, 1.9, 1.99j, -1.2 + 0.5j):
        assert in_pseudospectral_bound(1, z)
    for z in (2.01, 2.0 + 0.1j, -3.0):
        assert not in_pseudospectral_bound(1, z)


def test_pseudospectral_bound_far_points():
    for n in range(1, 9):
        assert not in_pseudospectral_bound(n, 3.0)


def test_pseudospectral_mask_matches_scalar():
    rng = np.random.default_rng(10)
    pts = rng.normal(size=24) + 1j * rng.normal(size=24)
    for n in (1, 2, 3, 4):
        mask = pseudospectral_mask(n, pts)
        ref = np.array([in_pseudospectral_bound(n, z) for z in pts])
        assert np.array_equal(mask, ref)


def test_periodic_cloud_inside_order_six_bound():
    pts = periodic_cloud(5, 33, cumulative=True).points
    assert np.all(pseudospectral_mask(6, pts))


def test_pseudospectral_raster_symmetry_shortcut():
    window = (-2.5, 2.5, -2.5, 2.5)
    for n in (1, 3):
        a = pseudospectral_raster(n, window, 64, 64)
        b = pseudospectral_raster(n, window, 64, 64, use_symmetry=False)
        assert np.array_equal(a.values, b.values)
    # asymmetric windows silently take the direct path
    c = pseudospectral_raster(1, (-2.5, 2.0, -2.5, 2.5), 32, 32)
    centers = c.centers()
    assert np.array_equal(c.values == 1, np.abs(centers) < 2.0 + 1e-12)


def test_preimage_radius_and_eta():
    assert preimage_radius(0.0) == pytest.approx(1.32472, abs=1e-4)
    # radius at the sector edge is exactly 1 (the region meets the unit circle)
    assert preimage_radius(math.pi / 6) == pytest.approx(1.0, abs=1e-9)
    assert disk_gap_radius() == pytest.approx(0.174744, abs=1e-5)


def test_lower_bound_region():
    assert in_lower_bound_region(0.0)
    assert in_lower_bound_region(1.32)  # inside along the real axis
    assert not in_lower_bound_region(1.4)  # outside along the real axis
    assert in_lower_bound_region(1.32j)
    th = 2 * np.pi * np.arange(5000) / 5000
    assert np.all(lower_region_mask(1.1 * np.exp(1j * th)))
    # quarter-turn and conjugation symmetry of the region
    rng = np.random.default_rng(11)
    pts = rng.normal(scale=0.8, size=300) + 1j * rng.normal(scale=0.8, size=300)
    m = lower_region_mask(pts)
    assert np.array_equal(m, lower_region_mask(1j * pts))
    assert np.array_equal(m, lower_region_mask(np.conj(pts)))


def test_raster_membership_diamond():
    grid = raster_membership(in_diamond, (-2.2, 2.2, -2.2, 2.2), 33, 33)
    assert grid.values[0, 0] == 0 and grid.values[0, -1] == 0  # corners outside
    assert grid.values[16, 16] == 1  # center pixel inside
    centers = grid.centers()
    assert abs(centers[16, 16]) < 0.1


def test_raster_grid_validation_and_pgm():
    with pytest.raises(ValueError):
        RasterGrid((1.0, -1.0, 0.0, 1.0), 4, 4, np.zeros((4, 4), dtype=np.int32))
    with pytest.raises(ValueError):
        RasterGrid((0.0, 1.0, 0.0, 1.0), 4, 4, np.zeros((3, 4), dtype=np.int32))
    grid = RasterGrid((0.0, 1.0, 0.0, 1.0), 3, 2, np.array([[0, 1, 2], [1, 0, 1]], dtype=np.int32))
    data = grid.to_pgm()
    assert data.startswith(b"P5\n3 2\n255\n")
    assert data[-6:] == bytes([0, 255, 128, 255, 0, 255])
    esc = RasterGrid((0.0, 1.0, 0.0, 1.0), 2, 1, np.array([[10, 100]], dtype=np.int32))
    body = esc.to_pgm(escape_max=100)[-2:]
    assert body[1] == 255 and 0 < body[0] < 255
