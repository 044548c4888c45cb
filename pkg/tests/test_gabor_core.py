import math

import numpy as np
import pytest

from gaborlab import _accel, gabor_core
from gaborlab.errors import NumericalConsistencyError, UnsupportedDensityError
from gaborlab.gabor_core import (
    FrameBounds,
    GridSpec,
    TruncationSpec,
    condition_number,
    heuristic_bounds,
    janssen_series,
    locate_janssen_minimum,
    periodization_p,
    sharp_bounds,
    spectrogram_gaussian,
    stft_gaussian,
    truncation_radius,
)
from gaborlab.lattice2d import Lattice2D, ModuliPoint, adjoint, from_tau, make_hexagonal, make_rectangular, rotation
from oracles import gaussian_lattice_sum, hexagonal_lower_series, janssen_brute, square_lower_series

SQ_LOWER = 1.66925
HEX_LOWER = 1.84074
SQUARE_B = 2.3606811980321933  # 2 sum exp(-pi(k^2+l^2)), brute force
HEX_B = 2.3191905339278565  # 2 sum exp(-pi (2/sqrt3)(k^2+kl+l^2)), brute force
SQ_P_MIN = 1.9850883569821147  # periodization at the cell centre, brute force
SQ_P_MAX = 2.014967440690169  # periodization at the origin, brute force


def random_density2_lattices(seed, count):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        x = rng.uniform(-0.5, 0.5)
        y = rng.uniform(math.sqrt(max(0.0, 1 - x * x)), 2.0)
        lat = from_tau(ModuliPoint(x, y), 2.0)
        u = np.array([[1, rng.integers(-2, 3)], [0, 1]]) @ np.array([[1, 0], [rng.integers(-2, 3), 1]])
        out.append(Lattice2D(rotation(rng.uniform(0, 2 * math.pi)) @ lat.basis @ u))
    return out


def hex_phase_point(lat):
    """z with sigma(B n, z) = n1/3 - n2/3 on the adjoint basis B."""
    b = adjoint(lat).basis
    w = np.linalg.solve(b.T, [1 / 3, -1 / 3])
    return np.array([-w[1], w[0]])


# -- closed forms -----------------------------------------------------------

def test_stft_examples():
    assert stft_gaussian(0.0, 0.0) == pytest.approx(1.0)
    v = stft_gaussian(1.0, 0.0)
    assert v.real == pytest.approx(math.exp(-math.pi / 2), rel=1e-15) and v.imag == 0.0
    w = stft_gaussian(1.0, 1.0)
    assert w.real == pytest.approx(-math.exp(-math.pi), rel=1e-14)
    assert abs(w.imag) < 1e-16


def test_spectrogram_examples_and_consistency():
    assert spectrogram_gaussian(0.0, 0.0) == 1.0
    assert spectrogram_gaussian(1.0, 0.0) == pytest.approx(math.exp(-math.pi), rel=1e-15)
    rng = np.random.default_rng(3)
    x, w = rng.normal(size=(2, 200))
    np.testing.assert_array_equal(spectrogram_gaussian(x, w), spectrogram_gaussian(w, x))
    assert np.max(np.abs(spectrogram_gaussian(x, w) - np.abs(stft_gaussian(x, w)) ** 2)) <= 1e-15
    assert np.all(np.abs(stft_gaussian(x, w)) < 1.0)


# -- truncation -------------------------------------------------------------

@pytest.mark.parametrize("tau", [ModuliPoint(0, 1), ModuliPoint(0.5, math.sqrt(3) / 2), ModuliPoint(0.3, 2.0)])
@pytest.mark.parametrize("a", [math.pi / 2, math.pi])
def test_truncation_radius_bounds_tail(tau, a):
    lat = from_tau(tau, 2.0)
    tol = 1e-10
    r = truncation_radius(lat, a, tol)
    k = np.arange(-40, 41)
    kk, ll = np.meshgrid(k, k)
    pts = np.column_stack([kk.ravel(), ll.ravel()]) @ lat.basis.T
    norms = np.linalg.norm(pts, axis=1)
    for shift in (np.zeros(2), lat.basis @ [0.37, 0.61]):
        d = np.linalg.norm(pts + shift, axis=1)
        assert np.exp(-a * d[d > r] ** 2).sum() < tol
    assert r < 2 * norms[norms > 0].min() + 6  # not absurdly large


# -- periodization ----------------------------------------------------------

def test_periodization_examples(square2):
    assert periodization_p(make_rectangular(1, 1), [0, 0]) == pytest.approx(1.1803405990160964, abs=1e-14)
    assert periodization_p(square2, [0, 0]) == pytest.approx(SQ_P_MAX, abs=1e-14)


@pytest.mark.parametrize("seed", range(3))
def test_periodization_matches_brute_force_and_is_periodic(seed):
    lat = random_density2_lattices(seed, 1)[0]
    rng = np.random.default_rng(seed)
    trunc = TruncationSpec()
    for _ in range(5):
        z = rng.normal(size=2)
        v = periodization_p(lat, z, trunc)
        assert v == pytest.approx(gaussian_lattice_sum(lat.basis, math.pi, z, kmax=30), abs=1e-13)
        shift = lat.basis @ rng.integers(-5, 6, size=2)
        assert abs(periodization_p(lat, z + shift, trunc) - v) <= 2 * trunc.tail_tol + 1e-15


# -- Janssen-type series ----------------------------------------------------

def test_janssen_named_series(square2, hex2):
    c = 1 / (2 * math.sqrt(2))
    sq = janssen_series(square2, [c, c])
    assert sq == pytest.approx(square_lower_series().real, abs=1e-14)
    assert sq == pytest.approx(SQ_LOWER, abs=5e-6)
    assert janssen_series(square2, [0, 0]) == pytest.approx(SQUARE_B, abs=1e-14)
    hx = janssen_series(hex2, hex_phase_point(hex2))
    assert hx == pytest.approx(hexagonal_lower_series().real, abs=1e-14)
    assert hx == pytest.approx(HEX_LOWER, abs=5e-6)


@pytest.mark.parametrize("seed", range(4))
def test_janssen_matches_brute_force(seed):
    lat = random_density2_lattices(100 + seed, 1)[0]
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(6, 2))
    vals = janssen_series(lat, z)
    ref = [janssen_brute(lat.basis, zz) for zz in z]
    np.testing.assert_allclose(vals, np.real(ref), atol=1e-13)
    assert np.max(np.abs(np.imag(ref))) < 1e-12


def test_janssen_is_lattice_periodic():
    lat = random_density2_lattices(7, 1)[0]
    rng = np.random.default_rng(7)
    z = rng.normal(size=(20, 2))
    shifts = rng.integers(-4, 5, size=(20, 2)) @ lat.basis.T
    np.testing.assert_allclose(janssen_series(lat, z + shifts), janssen_series(lat, z), atol=1e-13)


def test_janssen_imaginary_residue_guard(monkeypatch, square2):
    monkeypatch.setattr(_accel, "sin_sum", lambda f, c, z: np.full(len(np.atleast_2d(z)), 1e-9))
    with pytest.raises(NumericalConsistencyError):
        janssen_series(square2, [0.1, 0.2])


def test_imaginary_residue_small_everywhere():
    for lat in random_density2_lattices(11, 5) + [make_hexagonal(4.0), make_rectangular(0.25, 1.0)]:
        freqs, coeffs = gabor_core._janssen_terms(lat, TruncationSpec())
        z = np.random.default_rng(0).uniform(-3, 3, size=(500, 2))
        assert np.max(np.abs(_accel.sin_sum(freqs, coeffs, z))) < 1e-12


def test_maximum_at_origin():
    rng = np.random.default_rng(42)
    for lat in random_density2_lattices(42, 10):
        top = janssen_series(lat, [0.0, 0.0])
        z = rng.uniform(-2, 2, size=(100, 2))
        assert np.all(janssen_series(lat, z) <= top + 1e-12)


# -- sharp bounds -----------------------------------------------------------

def test_frame_bounds_invariants():
    fb = FrameBounds(1.5, 3.0)
    assert fb.cond == 2.0
    with pytest.raises(NumericalConsistencyError):
        FrameBounds(2.0, 1.0)
    with pytest.raises(NumericalConsistencyError):
        FrameBounds(0.0, 1.0)


def test_sharp_bounds_square(square2):
    fb = sharp_bounds(square2)
    assert fb.lower == pytest.approx(SQ_LOWER, abs=5e-6)
    assert fb.lower == pytest.approx(square_lower_series().real, abs=1e-13)
    assert fb.upper == pytest.approx(SQUARE_B, abs=1e-13)
    assert abs(fb.cond - math.sqrt(2)) < 1e-6
    assert abs((fb.lower / fb.upper) ** 2 - 0.5) < 1e-8


def test_sharp_bounds_hexagonal(hex2):
    fb = sharp_bounds(hex2)
    assert fb.lower == pytest.approx(hexagonal_lower_series().real, abs=1e-13)
    assert fb.upper == pytest.approx(HEX_B, abs=1e-13)
    assert fb.cond == pytest.approx(HEX_B / hexagonal_lower_series().real, rel=1e-12)
    assert fb.cond == pytest.approx(1.2599, abs=1e-4)


def test_minimizer_is_a_deep_hole(square2, hex2):
    z, _ = locate_janssen_minimum(square2)
    u = np.linalg.solve(square2.basis, z) % 1.0
    np.testing.assert_allclose(u, [0.5, 0.5], atol=1e-6)
    z, val = locate_janssen_minimum(hex2)
    assert val == pytest.approx(janssen_series(hex2, hex_phase_point(hex2)), abs=1e-13)


def test_sharp_bounds_rotation_invariance(square2):
    ref = sharp_bounds(square2)
    rot = sharp_bounds(Lattice2D(rotation(0.3) @ square2.basis))
    assert rot.lower == pytest.approx(ref.lower, abs=1e-8)
    assert rot.upper == pytest.approx(ref.upper, abs=1e-8)


@pytest.mark.parametrize("seed", range(3))
def test_sharp_bounds_basis_change_invariance(seed):
    lat = random_density2_lattices(200 + seed, 1)[0]
    ref = sharp_bounds(lat)
    rng = np.random.default_rng(seed)
    u = np.array([[2, 1], [1, 1]]) if seed % 2 else np.array([[1, 3], [0, 1]])
    other = Lattice2D(rotation(rng.uniform(0, 6)) @ lat.basis @ u)
    fb = sharp_bounds(other)
    assert abs(fb.lower - ref.lower) < 1e-8 and abs(fb.upper - ref.upper) < 1e-8


def test_sharp_bounds_rejects_odd_density():
    with pytest.raises(UnsupportedDensityError):
        sharp_bounds(make_rectangular(1.0, 1.0))
    with pytest.raises(UnsupportedDensityError):
        sharp_bounds(make_hexagonal(3.0))
    with pytest.raises(UnsupportedDensityError):
        sharp_bounds(make_hexagonal(2.5))


def test_sharp_bounds_density_four():
    fb = sharp_bounds(make_hexagonal(4.0))
    assert 0 < fb.lower <= fb.upper
    # density 4: coefficients 4 exp(-pi|l|^2/2) on 4*Lambda -> upper = 4 * theta sum at t=2 of hex(1)
    assert fb.upper == pytest.approx(4 * gaussian_lattice_sum(make_hexagonal(1.0).basis, 2 * math.pi), rel=1e-13)


def test_grid_convergence():
    lats = random_density2_lattices(5, 2) + [make_hexagonal(2.0)]
    for lat in lats:
        a1 = sharp_bounds(lat, GridSpec(32, 3, 8)).lower
        a2 = sharp_bounds(lat, GridSpec(64, 3, 8)).lower
        assert abs(a1 - a2) < 1e-6


def test_condition_number(square2, hex2):
    assert abs(condition_number(square2) - math.sqrt(2)) < 1e-6
    assert condition_number(hex2) == pytest.approx(1.2599, abs=1e-4)
    assert condition_number(hex2) < condition_number(square2)


# -- heuristic bounds -------------------------------------------------------

def test_heuristic_bounds_square(square2):
    lo, hi = heuristic_bounds(square2)
    assert lo == pytest.approx(SQ_P_MIN, abs=1e-12)
    assert hi == pytest.approx(SQ_P_MAX, abs=1e-12)
    fb = sharp_bounds(square2)
    assert fb.lower <= lo and hi <= fb.upper


def test_heuristic_bounds_integer_lattice():
    lo, hi = heuristic_bounds(make_rectangular(1.0, 1.0))
    assert lo == pytest.approx(periodization_p(make_rectangular(1.0, 1.0), [0.5, 0.5]), abs=1e-12)
    assert hi == pytest.approx(periodization_p(make_rectangular(1.0, 1.0), [0.0, 0.0]), abs=1e-12)


def test_sandwich_random_lattices():
    for lat in random_density2_lattices(9, 10):
        fb = sharp_bounds(lat)
        lo, hi = heuristic_bounds(lat)
        assert fb.lower <= lo + 1e-9
        assert hi <= fb.upper + 1e-9
