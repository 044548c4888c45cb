"""Finite Gabor systems on the cyclic group Z_n.

An independent check on the lattice-sum formulas: the window is the
standard Gaussian sampled at step ``1/s`` (``n = s^2``) and periodized, and
a separable lattice ``alpha Z x beta Z`` becomes the time/frequency strides
``(alpha s, beta s)``.  The extreme eigenvalues of the resulting frame
matrix approximate the continuous frame bounds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, NotAFrameError
from .gabor_core import GridSpec, TruncationSpec, sharp_bounds
from .lattice2d import make_rectangular

__all__ = [
    "FiniteGaborSystem",
    "OracleRow",
    "periodized_gaussian_window",
    "translate",
    "modulate",
    "tf_shift",
    "frame_matrix",
    "extreme_eigenvalues",
    "canonical_dual",
    "reconstruct",
    "converge_compare",
]

HERMITIAN_TOL = 1e-12
_WINDOW_TAIL = 1e-17


def _square_root(n: int) -> int:
    s = math.isqrt(n)
    if s * s != n:
        raise DomainError(f"n={n} is not a perfect square")
    return s


def periodized_gaussian_window(n: int) -> np.ndarray:
    """Unit-norm samples of ``sum_m g0((j + m n) / s)``, ``j = 0..n-1``."""
    if int(n) != n or n < 16:
        raise DomainError(f"window length must be an integer >= 16, got {n}")
    n = int(n)
    s = _square_root(n)
    j = np.arange(n, dtype=float)
    w = np.zeros(n)
    t_max = math.sqrt(-math.log(_WINDOW_TAIL) / math.pi)
    m_max = int(math.ceil(t_max * s / n)) + 1
    for m in sorted(range(-m_max, m_max + 1), key=abs, reverse=True):
        w += np.exp(-math.pi * ((j + m * n) / s) ** 2)
    return (w / np.linalg.norm(w)).astype(complex)


@dataclass(frozen=True, eq=False)
class FiniteGaborSystem:
    """Window on ``Z_n`` with time stride ``a_step`` and frequency stride ``b_step``."""

    n: int
    window: np.ndarray
    a_step: int
    b_step: int

    def __post_init__(self):
        n = self.n
        if int(n) != n or n < 4:
            raise DomainError("n must be an integer >= 4")
        w = np.asarray(self.window, dtype=complex)
        if w.shape != (n,):
            raise DomainError(f"window must have length {n}")
        if abs(np.linalg.norm(w) - 1.0) > 1e-12:
            raise DomainError("window must have unit norm")
        for name in ("a_step", "b_step"):
            v = getattr(self, name)
            if int(v) != v or v < 1 or n % v:
                raise DomainError(f"{name}={v} must be a positive divisor of n={n}")
        if self.a_step * self.b_step > n:
            raise DomainError("a_step * b_step must not exceed n")
        w = w.copy()
        w.setflags(write=False)
        object.__setattr__(self, "window", w)

    @classmethod
    def gaussian(cls, n: int, a_step: int, b_step: int) -> "FiniteGaborSystem":
        return cls(n, periodized_gaussian_window(n), a_step, b_step)

    @property
    def lattice_size(self) -> int:
        return (self.n // self.a_step) * (self.n // self.b_step)

    def atoms(self) -> np.ndarray:
        """Columns ``M_{l b} T_{k a} w`` for every lattice point."""
        return _atoms(self.window, self.a_step, self.b_step)


def _atoms(window, a_step, b_step):
    n = window.shape[0]
    j = np.arange(n)
    shifts = np.stack([np.roll(window, k) for k in range(0, n, a_step)])
    freqs = np.arange(0, n, b_step)
    chirps = np.exp(2j * np.pi * np.outer(freqs, j) / n)
    cols = shifts[:, None, :] * chirps[None, :, :]
    return cols.reshape(-1, n).T


def translate(f, a: int) -> np.ndarray:
    """``(T_a f)[j] = f[j - a]``."""
    return np.roll(np.asarray(f), a)


def modulate(f, b: int) -> np.ndarray:
    """``(M_b f)[j] = f[j] exp(2 pi i b j / n)``."""
    f = np.asarray(f)
    n = f.shape[0]
    return f * np.exp(2j * np.pi * b * np.arange(n) / n)


def tf_shift(f, a: int, b: int) -> np.ndarray:
    return modulate(translate(f, a), b)


def frame_matrix(system: FiniteGaborSystem) -> np.ndarray:
    """``S = sum_l pi(l) w (pi(l) w)^*`` as a dense Hermitian matrix."""
    g = system.atoms()
    s = g @ g.conj().T
    return 0.5 * (s + s.conj().T)


def extreme_eigenvalues(h) -> tuple[float, float]:
    """Smallest and largest eigenvalue of a Hermitian matrix."""
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DomainError("expected a square matrix")
    scale = max(1.0, float(np.max(np.abs(h))))
    if np.max(np.abs(h - h.conj().T)) > HERMITIAN_TOL * scale:
        raise DomainError("matrix is not Hermitian")
    ev = np.linalg.eigvalsh(h)
    return float(ev[0]), float(ev[-1])


def canonical_dual(system: FiniteGaborSystem) -> np.ndarray:
    """Solve ``S g = w``.

    Raises
    ------
    NotAFrameError
        If the smallest eigenvalue of ``S`` is below ``1e-10``.
    """
    s = frame_matrix(system)
    lo, _ = extreme_eigenvalues(s)
    if lo <= 1e-10:
        raise NotAFrameError(f"frame operator is singular (smallest eigenvalue {lo:.3e})")
    return np.linalg.solve(s, system.window)


def reconstruct(system: FiniteGaborSystem, dual: np.ndarray, f) -> np.ndarray:
    """``sum_l <f, pi(l) dual> pi(l) w``."""
    dual_atoms = _atoms(np.asarray(dual, dtype=complex), system.a_step, system.b_step)
    coeffs = dual_atoms.conj().T @ np.asarray(f, dtype=complex)
    return system.atoms() @ coeffs


@dataclass(frozen=True)
class OracleRow:
    n: int
    lam_min: float
    lam_max: float
    a_ref: float
    b_ref: float

    @property
    def lower_deviation(self) -> float:
        return abs(self.lam_min - self.a_ref)

    @property
    def upper_deviation(self) -> float:
        return abs(self.lam_max - self.b_ref)

    @property
    def deviation(self) -> float:
        return max(self.lower_deviation, self.upper_deviation)


def _as_fraction(v) -> Fraction:
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, float):
        return Fraction(v).limit_denominator(10 ** 6)
    return Fraction(v)


def converge_compare(
    alpha,
    beta,
    n_list,
    grid: GridSpec = GridSpec(),
    trunc: TruncationSpec = TruncationSpec(),
) -> list[OracleRow]:
    """Discrete extreme eigenvalues next to the continuous sharp bounds of ``rect(alpha, beta)``."""
    a, b = _as_fraction(alpha), _as_fraction(beta)
    if a <= 0 or b <= 0:
        raise DomainError("alpha and beta must be positive")
    steps = []
    for n in n_list:
        s = _square_root(int(n))
        a_step, b_step = a * s, b * s
        if a_step.denominator != 1 or b_step.denominator != 1 or n % a_step.numerator or n % b_step.numerator:
            raise DomainError(
                f"n={n} (s={s}) needs alpha*s and beta*s to be integers dividing n; "
                f"got alpha*s={a_step}, beta*s={b_step}"
            )
        steps.append((int(n), int(a_step), int(b_step)))
    ref = sharp_bounds(make_rectangular(float(a), float(b)), grid, trunc)
    rows = []
    for n, a_step, b_step in steps:
        lo, hi = extreme_eigenvalues(frame_matrix(FiniteGaborSystem.gaussian(n, a_step, b_step)))
        rows.append(OracleRow(n, lo, hi, ref.lower, ref.upper))
    return rows
