"""Independent reference computations used by the tests.

Nothing here imports gaborlab: lattice sums are brute-force double sums over
integer coordinates and Gamma values come from quadrature.
"""
import math

import numpy as np
from scipy.integrate import quad

SQRT3 = math.sqrt(3.0)


def integer_grid(kmax=15):
    r = np.arange(-kmax, kmax + 1)
    k, l = np.meshgrid(r, r, indexing="ij")
    return k.ravel().astype(float), l.ravel().astype(float)


def hexagonal_lower_series(kmax=15):
    """2 sum exp(-pi (2/sqrt3)(k^2+kl+l^2)) exp(2 pi i (k/3 - l/3))."""
    k, l = integer_grid(kmax)
    q = 2.0 / SQRT3 * (k * k + k * l + l * l)
    return 2.0 * np.sum(np.exp(-np.pi * q) * np.exp(2j * np.pi * (k / 3 - l / 3)))


def square_lower_series(kmax=15):
    """2 sum exp(-pi (k^2+l^2)) exp(2 pi i (k/2 - l/2))."""
    k, l = integer_grid(kmax)
    return 2.0 * np.sum(np.exp(-np.pi * (k * k + l * l)) * np.exp(1j * np.pi * (k - l)))


def gaussian_lattice_sum(basis, a, shift=(0.0, 0.0), kmax=25):
    """sum_n exp(-a |M n + shift|^2) by direct enumeration."""
    k, l = integer_grid(kmax)
    m = np.asarray(basis, dtype=float)
    x = m[0, 0] * k + m[0, 1] * l + shift[0]
    y = m[1, 0] * k + m[1, 1] * l + shift[1]
    return float(np.sum(np.exp(-a * (x * x + y * y))))


def janssen_brute(basis, z, kmax=25):
    """delta sum over delta*Lambda of exp(-pi|l|^2/2) exp(2 pi i sigma(l, z))."""
    m = np.asarray(basis, dtype=float)
    delta = 1.0 / abs(np.linalg.det(m))
    k, l = integer_grid(kmax)
    d = delta * m
    x = d[0, 0] * k + d[0, 1] * l
    y = d[1, 0] * k + d[1, 1] * l
    sig = x * z[1] - y * z[0]
    return delta * np.sum(np.exp(-0.5 * np.pi * (x * x + y * y)) * np.exp(2j * np.pi * sig))


def gamma_quad(x):
    """Gamma(x) = (1/x) int_0^inf exp(-u^(1/x)) du, for x > 0."""
    val, _ = quad(lambda u: math.exp(-u ** (1.0 / x)), 0.0, math.inf, epsabs=1e-15, epsrel=1e-13, limit=200)
    return val / x
