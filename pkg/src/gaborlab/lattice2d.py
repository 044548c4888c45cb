"""Planar lattices, their adjoints and the moduli parameterization.

A lattice is stored through a 2x2 basis matrix ``M`` whose columns generate
``Lambda = M Z^2``.  Shapes at fixed density are parameterized, up to
rotation, by a point ``tau = x + iy`` in the upper half-plane.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NumericalConsistencyError

__all__ = [
    "Lattice2D",
    "ModuliPoint",
    "HEXAGONAL_TAU",
    "SQUARE_TAU",
    "make_rectangular",
    "make_hexagonal",
    "make_lattice",
    "from_tau",
    "adjoint",
    "symplectic_form",
    "points_in_radius",
    "reduce_tau",
    "reduced_basis",
    "reduced_gram",
    "same_lattice",
    "covering_radius_bound",
    "in_fundamental_domain",
    "moduli_distance",
    "rotation",
]

_DET_TOL = 1e-300
_REDUCE_MAX_ITER = 64

# sqrt(2/sqrt(3)) * [[1, 1/2], [0, sqrt(3)/2]]
_HEX_SCALE = math.sqrt(2.0 / math.sqrt(3.0))
HEX_MATRIX = _HEX_SCALE * np.array([[1.0, 0.5], [0.0, math.sqrt(3.0) / 2.0]])


@dataclass(frozen=True)
class ModuliPoint:
    """Shape parameter ``tau = x + iy`` of a unimodular lattice."""

    x: float
    y: float

    def __post_init__(self):
        if not (self.y > 0.0 and math.isfinite(self.y) and math.isfinite(self.x)):
            raise DomainError(f"tau must lie in the upper half-plane, got ({self.x}, {self.y})")

    def __iter__(self):
        yield self.x
        yield self.y


HEXAGONAL_TAU = ModuliPoint(0.5, math.sqrt(3.0) / 2.0)
SQUARE_TAU = ModuliPoint(0.0, 1.0)


@dataclass(frozen=True, eq=False)
class Lattice2D:
    """Full-rank lattice ``M Z^2`` in the time-frequency plane.

    Parameters
    ----------
    basis : array_like, shape (2, 2)
        Columns are the generating vectors.
    """

    basis: np.ndarray
    density: float = field(init=False)

    def __post_init__(self):
        m = np.array(self.basis, dtype=float)
        if m.shape != (2, 2) or not np.all(np.isfinite(m)):
            raise DomainError("lattice basis must be a finite 2x2 matrix")
        det = abs(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
        if det <= _DET_TOL:
            raise DomainError("lattice basis is singular")
        m.setflags(write=False)
        object.__setattr__(self, "basis", m)
        object.__setattr__(self, "density", 1.0 / det)

    @property
    def covolume(self) -> float:
        return 1.0 / self.density

    def __repr__(self):
        rows = ", ".join(f"[{r[0]:.6g}, {r[1]:.6g}]" for r in self.basis)
        return f"Lattice2D([{rows}], density={self.density:.6g})"


def _check_positive(name, value):
    if not (value > 0.0 and math.isfinite(value)):
        raise DomainError(f"{name} must be a positive real, got {value!r}")


def make_rectangular(alpha: float, beta: float) -> Lattice2D:
    """Separable lattice ``alpha Z x beta Z``."""
    _check_positive("alpha", alpha)
    _check_positive("beta", beta)
    return Lattice2D(np.diag([float(alpha), float(beta)]))


def make_hexagonal(delta: float) -> Lattice2D:
    """Hexagonal lattice of density ``delta``."""
    _check_positive("delta", delta)
    return Lattice2D(HEX_MATRIX / math.sqrt(delta))


def make_lattice(matrix) -> Lattice2D:
    return Lattice2D(np.asarray(matrix, dtype=float))


def from_tau(tau: ModuliPoint, delta: float) -> Lattice2D:
    """Lattice of density ``delta`` and shape ``tau``.

    The basis is ``(delta * y)^(-1/2) [[1, x], [0, y]]``, so ``tau = i`` gives
    the square lattice and ``tau = 1/2 + i sqrt(3)/2`` the hexagonal one.
    """
    _check_positive("delta", delta)
    x, y = float(tau.x), float(tau.y)
    if not y > 0.0:
        raise DomainError("tau.y must be positive")
    scale = 1.0 / math.sqrt(delta * y)
    return Lattice2D(scale * np.array([[1.0, x], [0.0, y]]))


def adjoint(lat: Lattice2D) -> Lattice2D:
    """Adjoint lattice ``delta * Lambda``; its density is ``1/delta``."""
    return Lattice2D(lat.density * lat.basis)


def symplectic_form(a, b) -> float:
    """``a1 b2 - a2 b1``."""
    return float(a[0]) * float(b[1]) - float(a[1]) * float(b[0])


def rotation(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


def reduced_basis(basis) -> np.ndarray:
    """Lagrange-Gauss reduction: shortest first column, |b1.b2| <= |b1|^2 / 2."""
    m = np.array(basis, dtype=float)
    b1, b2 = m[:, 0].copy(), m[:, 1].copy()
    if b1 @ b1 > b2 @ b2:
        b1, b2 = b2, b1
    for _ in range(10_000):
        mu = round(float(b1 @ b2) / float(b1 @ b1))
        b2 = b2 - mu * b1
        if b2 @ b2 >= b1 @ b1:
            break
        b1, b2 = b2, b1
    else:  # pragma: no cover - reduction always terminates for finite input
        raise NumericalConsistencyError("basis reduction did not terminate")
    return np.column_stack([b1, b2])


def reduced_gram(lat: Lattice2D) -> np.ndarray:
    """Canonical Gram data ``(|b1|^2, |b2|^2, |b1.b2|)`` of a reduced basis."""
    r = reduced_basis(lat.basis)
    g = r.T @ r
    return np.array([g[0, 0], g[1, 1], abs(g[0, 1])])


def same_lattice(first: Lattice2D, second: Lattice2D, tol: float = 1e-10) -> bool:
    """True if the lattices agree up to an orthogonal map of the plane."""
    return bool(np.allclose(reduced_gram(first), reduced_gram(second), rtol=0.0, atol=tol))


def covering_radius_bound(lat: Lattice2D) -> float:
    """Upper bound on the covering radius: half the longer cell diagonal."""
    r = reduced_basis(lat.basis)
    d1 = np.linalg.norm(r[:, 0] + r[:, 1])
    d2 = np.linalg.norm(r[:, 0] - r[:, 1])
    return 0.5 * float(max(d1, d2))


def _integer_coordinates(basis: np.ndarray, radius: float) -> np.ndarray:
    # |n| <= ||M^-1||_2 |Mn| bounds every coordinate of a point within the radius
    inv_norm = np.linalg.norm(np.linalg.inv(basis), 2)
    bound = int(math.floor(inv_norm * radius + 1e-9))
    r = np.arange(-bound, bound + 1)
    k, l = np.meshgrid(r, r, indexing="ij")
    return np.column_stack([k.ravel(), l.ravel()])


def points_in_radius(lat: Lattice2D, radius: float, *, slack: float = 1e-12) -> np.ndarray:
    """All lattice points ``v`` with ``|v| <= radius``.

    Returns
    -------
    ndarray, shape (k, 2)
        Points ordered by increasing length (ties keep enumeration order).
    """
    _check_positive("radius", radius)
    basis = reduced_basis(lat.basis)
    n = _integer_coordinates(basis, radius + slack)
    pts = n @ basis.T
    norms = np.hypot(pts[:, 0], pts[:, 1])
    keep = norms <= radius + slack
    pts, norms = pts[keep], norms[keep]
    order = np.argsort(norms, kind="stable")
    return pts[order]


def reduce_tau(tau: ModuliPoint) -> ModuliPoint:
    """Move ``tau`` into the standard fundamental domain of the modular group.

    Alternates ``tau -> tau - round(x)`` with ``tau -> -1/tau`` until
    ``|x| <= 1/2`` and ``|tau| >= 1``.
    """
    x, y = float(tau.x), float(tau.y)
    for _ in range(_REDUCE_MAX_ITER):
        x -= math.floor(x + 0.5)
        r2 = x * x + y * y
        if r2 >= 1.0 - 1e-15:
            return ModuliPoint(x, y)
        x, y = -x / r2, y / r2
    raise NumericalConsistencyError(f"tau reduction did not converge for {tau}")


def in_fundamental_domain(tau: ModuliPoint, tol: float = 1e-12) -> bool:
    return abs(tau.x) <= 0.5 + tol and tau.x * tau.x + tau.y * tau.y >= 1.0 - tol


def moduli_distance(a: ModuliPoint, b: ModuliPoint) -> float:
    """Euclidean distance between shape parameters, modulo ``x -> x + 1``.

    Identifies the two boundary copies ``x = -1/2`` and ``x = 1/2`` of the
    fundamental domain.
    """
    dy = a.y - b.y
    dx = (a.x - b.x) - round(a.x - b.x)
    return math.hypot(dx, dy)
