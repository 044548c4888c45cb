"""Scans over lattice shapes at fixed density.

Shapes are points ``tau`` of the modular fundamental domain
``|x| <= 1/2, x^2 + y^2 >= 1``; every scan evaluates ``from_tau(tau, delta)``.
"""
from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _accel
from .errors import DomainError, UnsupportedDensityError
from .gabor_core import FrameBounds, GridSpec, TruncationSpec, is_even_density, sharp_bounds, truncation_radius
from .lattice2d import Lattice2D, ModuliPoint, from_tau, in_fundamental_domain, make_rectangular, points_in_radius

__all__ = [
    "LandscapeSample",
    "ScanRegion",
    "OBJECTIVES",
    "scan_landscape",
    "argmin_condition",
    "rect_sweep",
    "lattice_theta",
    "montgomery_argmin",
    "scan_threads",
]

log = logging.getLogger(__name__)

_Y_FLOOR = math.sqrt(3.0) / 2.0 - 1e-12
_EDGE_TOL = 1e-12

OBJECTIVES = {
    "cond": lambda b: b.cond,
    "upper": lambda b: b.upper,
    "lower": lambda b: -b.lower,
}


@dataclass(frozen=True)
class LandscapeSample:
    tau: ModuliPoint
    bounds: FrameBounds


@dataclass(frozen=True)
class ScanRegion:
    """Rectangular window ``[x_min, x_max] x [y_min, y_max]`` with an ``nx`` x ``ny`` grid.

    An axis with a single node must have equal endpoints.
    """

    x_min: float = -0.5
    x_max: float = 0.5
    y_min: float = math.sqrt(3.0) / 2.0
    y_max: float = 2.0
    nx: int = 40
    ny: int = 40

    def __post_init__(self):
        if not (-0.5 - _EDGE_TOL <= self.x_min and self.x_max <= 0.5 + _EDGE_TOL):
            raise DomainError("x range must lie in [-1/2, 1/2]")
        if self.y_min < _Y_FLOOR:
            raise DomainError("y_min must be at least sqrt(3)/2")
        for lo, hi, n, axis in ((self.x_min, self.x_max, self.nx, "x"), (self.y_min, self.y_max, self.ny, "y")):
            if int(n) != n or n < 1:
                raise DomainError(f"n{axis} must be a positive integer")
            if n == 1 and lo != hi:
                raise DomainError(f"a single {axis} node needs {axis}_min == {axis}_max")
            if n >= 2 and not lo < hi:
                raise DomainError(f"{axis}_min must be below {axis}_max")

    def axes(self):
        return np.linspace(self.x_min, self.x_max, self.nx), np.linspace(self.y_min, self.y_max, self.ny)

    def spacing(self):
        hx = (self.x_max - self.x_min) / (self.nx - 1) if self.nx > 1 else 0.0
        hy = (self.y_max - self.y_min) / (self.ny - 1) if self.ny > 1 else 0.0
        return hx, hy

    def nodes(self):
        """Grid nodes in index order: ``y`` outer, ``x`` inner."""
        xs, ys = self.axes()
        return [(float(x), float(y)) for y in ys for x in xs]


def scan_threads() -> int:
    raw = os.environ.get("GABORLAB_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise DomainError(f"GABORLAB_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise DomainError(f"GABORLAB_THREADS must be a positive integer, got {raw!r}")
    return n


def _ordered_map(fn, items):
    items = list(items)
    workers = min(scan_threads(), len(items))
    if workers <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _check_even(delta):
    if not is_even_density(delta):
        raise UnsupportedDensityError(f"shape scans use sharp bounds and need an even integer density, got {delta}")


def _domain_points(nodes, skipped=None):
    keep = []
    for x, y in nodes:
        tau = ModuliPoint(x, y)
        if in_fundamental_domain(tau):
            keep.append(tau)
        elif skipped is not None:
            skipped.append(tau)
    return keep


def scan_landscape(
    delta: float,
    region: ScanRegion = ScanRegion(),
    grid: GridSpec = GridSpec(),
    trunc: TruncationSpec = TruncationSpec(),
    skipped: list | None = None,
):
    """Sharp bounds at every grid node inside the fundamental domain.

    Nodes with ``x^2 + y^2 < 1`` are left out; pass a list as ``skipped`` to
    collect them.
    """
    _check_even(delta)
    out_of_domain = []
    taus = _domain_points(region.nodes(), out_of_domain)
    if out_of_domain:
        log.info("skipped %d nodes outside the fundamental domain", len(out_of_domain))
        if skipped is not None:
            skipped.extend(out_of_domain)

    def one(tau):
        return LandscapeSample(tau, sharp_bounds(from_tau(tau, delta), grid, trunc))

    return _ordered_map(one, taus)


def _refine(evaluate, key, start, start_val, region: ScanRegion, rounds: int, zoom: int):
    """Coarse-to-fine search around ``start``; each round cuts the spacing by ``zoom``."""
    best, best_val = start, start_val
    hx, hy = region.spacing()
    offsets = np.linspace(-1.0, 1.0, 2 * zoom + 1)
    for _ in range(rounds):
        pts = []
        for dy in (offsets if hy > 0 else (0.0,)):
            for dx in (offsets if hx > 0 else (0.0,)):
                x = min(max(best.x + dx * hx, region.x_min), region.x_max)
                y = min(max(best.y + dy * hy, region.y_min), region.y_max)
                pts.append((x, y))
        taus = [t for t in _domain_points(dict.fromkeys(pts)) if (t.x, t.y) != (best.x, best.y)]
        results = _ordered_map(evaluate, taus)
        for tau, res in zip(taus, results):
            v = key(res)
            if v < best_val:
                best, best_val = tau, v
        hx /= zoom
        hy /= zoom
    return best, best_val


def argmin_condition(
    delta: float,
    region: ScanRegion = ScanRegion(),
    grid: GridSpec = GridSpec(),
    trunc: TruncationSpec = TruncationSpec(),
    objective: str = "cond",
    samples: list | None = None,
    rounds: int = 3,
    zoom: int = 4,
) -> LandscapeSample:
    """Shape minimizing an objective of the sharp bounds.

    ``objective`` is ``"cond"`` (B/A), ``"upper"`` (B) or ``"lower"``
    (maximizes A).  A precomputed coarse scan may be passed as ``samples``.
    """
    if objective not in OBJECTIVES:
        raise DomainError(f"unknown objective {objective!r}; choose from {sorted(OBJECTIVES)}")
    _check_even(delta)
    key = OBJECTIVES[objective]
    if samples is None:
        samples = scan_landscape(delta, region, grid, trunc)
    if not samples:
        raise DomainError("scan region contains no point of the fundamental domain")
    coarse = min(samples, key=lambda s: key(s.bounds))

    def evaluate(tau):
        return sharp_bounds(from_tau(tau, delta), grid, trunc)

    tau, _ = _refine(evaluate, key, coarse.tau, key(coarse.bounds), region, rounds, zoom)
    if tau == coarse.tau:
        return coarse
    return LandscapeSample(tau, evaluate(tau))


def rect_sweep(
    delta: float,
    alpha_min: float,
    alpha_max: float,
    n: int,
    grid: GridSpec = GridSpec(),
    trunc: TruncationSpec = TruncationSpec(),
):
    """Sharp bounds of ``alpha Z x beta Z`` with ``beta = 1/(delta alpha)``."""
    _check_even(delta)
    if not (0.0 < alpha_min < alpha_max):
        raise DomainError("need 0 < alpha_min < alpha_max")
    if int(n) != n or n < 2:
        raise DomainError("n must be an integer >= 2")
    alphas = [float(a) for a in np.linspace(alpha_min, alpha_max, int(n))]

    def one(alpha):
        return alpha, sharp_bounds(make_rectangular(alpha, 1.0 / (delta * alpha)), grid, trunc)

    return _ordered_map(one, alphas)


def lattice_theta(lat: Lattice2D, t: float, trunc: TruncationSpec = TruncationSpec()) -> float:
    """``sum_{l in Lambda} exp(-pi t |l|^2)``."""
    if not t > 0.0:
        raise DomainError(f"t must be positive, got {t}")
    radius = truncation_radius(lat, math.pi * t, trunc.tail_tol)
    pts = points_in_radius(lat, radius)[::-1]
    return float(_accel.gauss_shift_sum(pts, np.zeros((1, 2)), math.pi * t)[0])


def montgomery_argmin(
    t: float,
    delta: float,
    region: ScanRegion = ScanRegion(),
    trunc: TruncationSpec = TruncationSpec(),
    rounds: int = 3,
    zoom: int = 4,
) -> ModuliPoint:
    """Shape minimizing the lattice theta sum at fixed density."""
    if not t > 0.0:
        raise DomainError(f"t must be positive, got {t}")
    if not delta > 0.0:
        raise DomainError(f"delta must be positive, got {delta}")
    taus = _domain_points(region.nodes())
    if not taus:
        raise DomainError("scan region contains no point of the fundamental domain")

    def evaluate(tau):
        return lattice_theta(from_tau(tau, delta), t, trunc)

    values = _ordered_map(evaluate, taus)
    i = int(np.argmin(values))
    tau, _ = _refine(evaluate, lambda v: v, taus[i], values[i], region, rounds, zoom)
    return tau
