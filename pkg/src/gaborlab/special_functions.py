"""Real special functions: Gamma, rising factorial, 2F1 and theta3/theta4.

Theta functions are evaluated on the imaginary axis only, ``tau = i t``.
"""
from __future__ import annotations

import math

from .errors import DomainError, NumericalConsistencyError

__all__ = ["gamma", "rising_factorial", "hyp2f1", "theta3", "theta4"]

# Lanczos approximation, g = 7, nine coefficients (relative error ~1e-15 on x >= 1/2)
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)

_HYP_REL_TOL = 1e-16
_HYP_MAX_TERMS = 10_000
_THETA_TERM_TOL = 1e-17


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


def gamma(x: float) -> float:
    """Gamma function on the real line.

    Raises
    ------
    DomainError
        At the poles ``x = 0, -1, -2, ...``.
    """
    x = float(x)
    if _is_nonpositive_integer(x):
        raise DomainError(f"gamma has a pole at {x}")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    x -= 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    return _SQRT_2PI * t ** (x + 0.5) * math.exp(-t) * acc


def rising_factorial(w: float, k: int) -> float:
    """Pochhammer symbol ``w (w+1) ... (w+k-1)``."""
    if k < 0 or int(k) != k:
        raise DomainError("rising_factorial needs a nonnegative integer k")
    out = 1.0
    for i in range(int(k)):
        out *= w + i
    return out


def hyp2f1(a: float, b: float, c: float, z: float) -> float:
    """Gauss hypergeometric series inside the unit disc.

    Terms are accumulated until one falls below ``1e-16`` times the running
    sum; more than 10000 terms is reported as a failure.
    """
    if not abs(z) < 1.0:
        raise DomainError(f"hyp2f1 series needs |z| < 1, got z={z}")
    if _is_nonpositive_integer(c):
        raise DomainError(f"hyp2f1 undefined for c={c}")
    term = 1.0
    total = 1.0
    for k in range(_HYP_MAX_TERMS):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        total += term
        if term == 0.0 or abs(term) < _HYP_REL_TOL * abs(total):
            return total
    raise NumericalConsistencyError(
        f"hyp2f1({a}, {b}; {c}; {z}) did not converge in {_HYP_MAX_TERMS} terms"
    )


def _theta_sum(t: float, sign: float) -> float:
    t = float(t)
    if not t > 0.0:
        raise DomainError(f"theta argument t must be positive, got {t}")
    terms = []
    k = 1
    coef = sign
    while True:
        term = math.exp(-math.pi * t * k * k)
        if term < _THETA_TERM_TOL:
            break
        terms.append(2.0 * coef * term)
        coef *= sign
        k += 1
    # smallest terms first
    total = 0.0
    for term in reversed(terms):
        total += term
    return 1.0 + total


def theta3(t: float) -> float:
    """``theta3(i t) = sum_k exp(-pi t k^2)``."""
    return _theta_sum(t, 1.0)


def theta4(t: float) -> float:
    """``theta4(i t) = sum_k (-1)^k exp(-pi t k^2)``."""
    return _theta_sum(t, -1.0)
