"""Frame bounds of Gaussian Gabor systems over planar lattices.

For the standard Gaussian ``g0(t) = 2^(1/4) exp(-pi t^2)`` the ambiguity
function has a closed form, so every lattice sum here is a Gaussian sum over
the lattice or over its adjoint:

* ``periodization_p`` sums the spectrogram over ``Lambda + z``; its extrema
  bracket the frame bounds for any density.
* ``janssen_series`` is the Fourier series ``delta * sum exp(-pi |l|^2 / 2)
  exp(2 pi i sigma(l, z))`` over the adjoint lattice; for even integer
  densities its infimum and supremum are the sharp frame bounds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from . import _accel
from .errors import DomainError, NumericalConsistencyError, UnsupportedDensityError
from .lattice2d import Lattice2D, adjoint, covering_radius_bound, points_in_radius, reduced_basis

__all__ = [
    "TruncationSpec",
    "GridSpec",
    "FrameBounds",
    "truncation_radius",
    "stft_gaussian",
    "spectrogram_gaussian",
    "periodization_p",
    "janssen_series",
    "locate_janssen_minimum",
    "sharp_bounds",
    "heuristic_bounds",
    "condition_number",
    "is_even_density",
]

IMAG_TOL = 1e-12
EVEN_DENSITY_TOL = 1e-9
_N_CANDIDATES = 4
_NEWTON_STEPS = 25


@dataclass(frozen=True)
class TruncationSpec:
    """Absolute tail bound for every truncated lattice sum."""

    tail_tol: float = 1e-14

    def __post_init__(self):
        if not self.tail_tol > 0.0:
            raise DomainError("tail_tol must be positive")


@dataclass(frozen=True)
class GridSpec:
    """Extremum search controls over the fundamental cell.

    A ``base_resolution`` x ``base_resolution`` grid is followed by
    ``refine_levels`` zooms, each shrinking the spacing by ``zoom_factor``,
    and a final Newton polish.
    """

    base_resolution: int = 64
    refine_levels: int = 3
    zoom_factor: int = 8

    def __post_init__(self):
        if int(self.base_resolution) != self.base_resolution or self.base_resolution < 8:
            raise DomainError("base_resolution must be an integer >= 8")
        if int(self.refine_levels) != self.refine_levels or self.refine_levels < 0:
            raise DomainError("refine_levels must be an integer >= 0")
        if int(self.zoom_factor) != self.zoom_factor or self.zoom_factor < 2:
            raise DomainError("zoom_factor must be an integer >= 2")


@dataclass(frozen=True)
class FrameBounds:
    lower: float
    upper: float
    cond: float = field(init=False)

    def __post_init__(self):
        if not (0.0 < self.lower <= self.upper):
            raise NumericalConsistencyError(
                f"frame bounds must satisfy 0 < A <= B, got A={self.lower!r}, B={self.upper!r}"
            )
        object.__setattr__(self, "cond", self.upper / self.lower)


def truncation_radius(lat: Lattice2D, a: float, tail_tol: float) -> float:
    """Radius ``R`` with ``sum_{|l| > R} exp(-a |l|^2) < tail_tol``.

    Every lattice point owns a Voronoi cell of area ``1/density`` within the
    covering radius ``rho``, which bounds the tail by the Gaussian integral

        (2 pi density) * int_{R - 2 rho}^inf (s + rho) exp(-a s^2) ds.

    The same bound holds for any translate of the lattice.
    """
    rho = covering_radius_bound(lat)
    dens = lat.density
    sqa = math.sqrt(a)

    def log_excess(r):
        s = r - 2.0 * rho
        tail = math.exp(-a * s * s) / (2.0 * a) + rho * math.sqrt(math.pi / a) / 2.0 * math.erfc(sqa * s)
        return math.log(2.0 * math.pi * dens * tail) - math.log(tail_tol)

    lo = 2.0 * rho
    if log_excess(lo) <= 0.0:
        return lo
    hi = lo + 1.0
    while log_excess(hi) > 0.0:
        hi = lo + 2.0 * (hi - lo)
    return brentq(log_excess, lo, hi, xtol=1e-10)


def stft_gaussian(x, omega):
    """Short-time Fourier transform of ``g0`` against itself."""
    x = np.asarray(x, dtype=float)
    omega = np.asarray(omega, dtype=float)
    out = np.exp(-1j * np.pi * x * omega) * np.exp(-0.5 * np.pi * (x * x + omega * omega))
    return out[()] if out.ndim == 0 else out


def spectrogram_gaussian(x, omega):
    x = np.asarray(x, dtype=float)
    omega = np.asarray(omega, dtype=float)
    out = np.exp(-np.pi * (x * x + omega * omega))
    return out[()] if out.ndim == 0 else out


# -- truncated term sets ----------------------------------------------------

def _janssen_terms(lat: Lattice2D, trunc: TruncationSpec):
    """Frequencies and coefficients of the series, smallest coefficient first.

    ``sigma(l, z) = f . z`` with ``f = (-l_2, l_1)``.
    """
    dual = adjoint(lat)
    delta = lat.density
    radius = truncation_radius(dual, 0.5 * math.pi, trunc.tail_tol / delta)
    pts = points_in_radius(dual, radius)[::-1]
    coeffs = delta * np.exp(-0.5 * math.pi * np.einsum("ij,ij->i", pts, pts))
    freqs = np.column_stack([-pts[:, 1], pts[:, 0]])
    return np.ascontiguousarray(freqs), np.ascontiguousarray(coeffs)


def _wrap_to_cell(basis: np.ndarray, z: np.ndarray) -> np.ndarray:
    u = np.linalg.solve(basis, z.T).T
    u -= np.floor(u)
    return u @ basis.T


def _periodization_points(lat: Lattice2D, trunc: TruncationSpec, margin: float = 0.0):
    """Points covering every ``lambda + z`` term for ``z`` in the reduced cell."""
    basis = reduced_basis(lat.basis)
    radius = truncation_radius(lat, math.pi, trunc.tail_tol)
    corner = max(np.linalg.norm(basis @ c) for c in ((1, 0), (0, 1), (1, 1)))
    pts = points_in_radius(lat, radius + corner + margin)[::-1]
    return basis, np.ascontiguousarray(pts)


def periodization_p(lat: Lattice2D, z, trunc: TruncationSpec = TruncationSpec()):
    """``sum_{l in Lambda} exp(-pi |l + z|^2)``.

    ``z`` may be a single 2-vector or an array of shape ``(k, 2)``.
    """
    z = np.asarray(z, dtype=float)
    single = z.ndim == 1
    basis, pts = _periodization_points(lat, trunc)
    zc = _wrap_to_cell(basis, np.atleast_2d(z))
    out = _accel.gauss_shift_sum(pts, zc, math.pi)
    return float(out[0]) if single else out


def janssen_series(lat: Lattice2D, z, trunc: TruncationSpec = TruncationSpec()):
    """Fourier series with Gaussian coefficients over the adjoint lattice.

    Returns the real part; terms pair ``l`` with ``-l`` so the imaginary part
    of the truncated sum must vanish.

    Raises
    ------
    NumericalConsistencyError
        If the imaginary residue reaches ``1e-12``.
    """
    z = np.asarray(z, dtype=float)
    single = z.ndim == 1
    zz = np.atleast_2d(z)
    freqs, coeffs = _janssen_terms(lat, trunc)
    re = _accel.cos_sum(freqs, coeffs, zz)
    im = _accel.sin_sum(freqs, coeffs, zz)
    worst = float(np.max(np.abs(im)))
    if worst >= IMAG_TOL:
        raise NumericalConsistencyError(f"imaginary residue {worst:.3e} in Janssen-type series")
    return float(re[0]) if single else re


# -- extremum search --------------------------------------------------------

def _janssen_derivs(freqs, coeffs, z):
    ph = 2.0 * math.pi * (freqs @ z)
    c = coeffs * np.cos(ph)
    s = coeffs * np.sin(ph)
    val = c.sum()
    grad = -2.0 * math.pi * (s @ freqs)
    hess = -4.0 * math.pi ** 2 * (freqs.T * c) @ freqs
    return val, grad, hess


def _periodization_derivs(points, z):
    d = points + z
    e = np.exp(-math.pi * np.einsum("ij,ij->i", d, d))
    val = e.sum()
    grad = -2.0 * math.pi * (e @ d)
    hess = 4.0 * math.pi ** 2 * (d.T * e) @ d - 2.0 * math.pi * val * np.eye(2)
    return val, grad, hess


def _local_minima(values: np.ndarray, count: int) -> np.ndarray:
    """Flat indices of the lowest periodic local minima of a square grid."""
    is_min = np.ones(values.shape, dtype=bool)
    for dx in (-1, 0, 1):
        for dy in (-1, 0, 1):
            if dx or dy:
                is_min &= values <= np.roll(np.roll(values, dx, axis=0), dy, axis=1)
    flat = np.flatnonzero(is_min.ravel())
    if flat.size == 0:
        flat = np.array([int(np.argmin(values))])
    order = np.argsort(values.ravel()[flat], kind="stable")
    return flat[order[:count]]


def _minimize_on_cell(evaluate, derivs, basis, grid: GridSpec):
    """Minimum of a ``basis``-periodic function: grid, zoom, Newton polish.

    ``evaluate`` maps an ``(k, 2)`` array of points to values; ``derivs``
    returns value, gradient and Hessian at a single point.
    """
    n = int(grid.base_resolution)
    ticks = np.arange(n) / n
    uu, vv = np.meshgrid(ticks, ticks, indexing="ij")
    u = np.column_stack([uu.ravel(), vv.ravel()])
    values = evaluate(u @ basis.T).reshape(n, n)

    best_z, best_val = None, math.inf
    zoom = int(grid.zoom_factor)
    offsets = np.linspace(-1.0, 1.0, 2 * zoom + 1)
    ou, ov = np.meshgrid(offsets, offsets, indexing="ij")
    local = np.column_stack([ou.ravel(), ov.ravel()])
    for idx in _local_minima(values, _N_CANDIDATES):
        uc = u[idx].copy()
        val = values.ravel()[idx]
        h = 1.0 / n
        for _ in range(int(grid.refine_levels)):
            cand = uc + h * local
            vals = evaluate(cand @ basis.T)
            j = int(np.argmin(vals))
            uc, val = cand[j], vals[j]
            h /= zoom
        z = basis @ uc
        z, val = _newton_polish(derivs, z, val, step_cap=h * float(np.linalg.norm(basis, 2)) * 4.0)
        if val < best_val:
            best_z, best_val = z, val
    return best_z, float(best_val)


def _newton_polish(derivs, z, val, step_cap):
    for _ in range(_NEWTON_STEPS):
        f, g, hmat = derivs(z)
        try:
            eig = np.linalg.eigvalsh(hmat)
        except np.linalg.LinAlgError:
            break
        if eig[0] <= 0.0:
            break
        step = -np.linalg.solve(hmat, g)
        size = float(np.linalg.norm(step))
        if size > step_cap:
            break
        fn = derivs(z + step)[0]
        if fn > f + 1e-15 * abs(f):
            break
        z = z + step
        val = min(val, fn)
        if size < 1e-14:
            break
    return z, val


def locate_janssen_minimum(lat: Lattice2D, grid: GridSpec = GridSpec(), trunc: TruncationSpec = TruncationSpec()):
    """Point of the fundamental cell where the series is smallest, and its value."""
    freqs, coeffs = _janssen_terms(lat, trunc)
    basis = reduced_basis(lat.basis)
    return _minimize_on_cell(
        lambda z: _accel.cos_sum(freqs, coeffs, z),
        lambda z: _janssen_derivs(freqs, coeffs, z),
        basis,
        grid,
    )


def is_even_density(delta: float, tol: float = EVEN_DENSITY_TOL) -> bool:
    k = round(delta)
    return k > 0 and k % 2 == 0 and abs(delta - k) <= tol


def sharp_bounds(lat: Lattice2D, grid: GridSpec = GridSpec(), trunc: TruncationSpec = TruncationSpec()) -> FrameBounds:
    """Sharp frame bounds for an even integer density.

    The upper bound is the series at the origin; the lower bound is its
    minimum over the fundamental cell, found by search.

    Raises
    ------
    UnsupportedDensityError
        Density is not an even integer (use ``heuristic_bounds``).
    NumericalConsistencyError
        The located minimum is not positive.
    """
    if not is_even_density(lat.density):
        raise UnsupportedDensityError(
            f"sharp bounds need an even integer density, got {lat.density:.12g}"
        )
    freqs, coeffs = _janssen_terms(lat, trunc)
    upper = float(_accel.cos_sum(freqs, coeffs, np.zeros((1, 2)))[0])
    basis = reduced_basis(lat.basis)
    _, lower = _minimize_on_cell(
        lambda z: _accel.cos_sum(freqs, coeffs, z),
        lambda z: _janssen_derivs(freqs, coeffs, z),
        basis,
        grid,
    )
    if not lower > 0.0:
        raise NumericalConsistencyError(f"located lower bound {lower!r} is not positive")
    return FrameBounds(lower, upper)


def heuristic_bounds(lat: Lattice2D, grid: GridSpec = GridSpec(), trunc: TruncationSpec = TruncationSpec()):
    """``(min p, max p)`` of the spectrogram periodization over the cell."""
    basis, pts = _periodization_points(lat, trunc, margin=float(np.linalg.norm(lat.basis, 2)))
    _, lo = _minimize_on_cell(
        lambda z: _accel.gauss_shift_sum(pts, z, math.pi),
        lambda z: _periodization_derivs(pts, z),
        basis,
        grid,
    )

    def neg_derivs(z):
        v, g, h = _periodization_derivs(pts, z)
        return -v, -g, -h

    _, neg_hi = _minimize_on_cell(
        lambda z: -_accel.gauss_shift_sum(pts, z, math.pi),
        neg_derivs,
        basis,
        grid,
    )
    return lo, -neg_hi


def condition_number(lat: Lattice2D, grid: GridSpec = GridSpec(), trunc: TruncationSpec = TruncationSpec()) -> float:
    return sharp_bounds(lat, grid, trunc).cond
