"""Landau's constants and their link to Gaussian frame bounds at density 2.

Two Gamma quotients are known from geometric function theory:

* ``L_hex = Gamma(1/3) Gamma(5/6) / Gamma(1/6)``, an upper estimate of the
  true Landau constant ``L`` (the infimum over normalized holomorphic maps,
  which has no closed form and no operation here).
* ``L_square = Gamma(1/2) Gamma(3/4) / Gamma(1/4)``, the conjectured value
  of the rectangular Landau constant.

Their reciprocals equal the sharp lower frame bounds of the hexagonal and
square lattices of density 2.  Both sides of every identity are computed
here; printed decimals are never used as inputs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .gabor_core import GridSpec, TruncationSpec, sharp_bounds
from .lattice2d import make_hexagonal, make_rectangular
from .special_functions import gamma, hyp2f1, theta3, theta4

__all__ = [
    "IdentityReport",
    "landau_hex",
    "landau_square",
    "verify_constants_link",
    "verify_proof_chain",
]


@dataclass(frozen=True)
class IdentityReport:
    name: str
    lhs: float
    rhs: float
    residual: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "residual", abs(self.lhs - self.rhs))


def landau_hex() -> float:
    return gamma(1.0 / 3.0) * gamma(5.0 / 6.0) / gamma(1.0 / 6.0)


def landau_square() -> float:
    return gamma(0.5) * gamma(0.75) / gamma(0.25)


def verify_constants_link(grid: GridSpec = GridSpec(), trunc: TruncationSpec = TruncationSpec()):
    """Compare ``A * L`` with 1 for the square and hexagonal lattices of density 2."""
    a_square = sharp_bounds(make_rectangular(math.sqrt(0.5), math.sqrt(0.5)), grid, trunc).lower
    a_hex = sharp_bounds(make_hexagonal(2.0), grid, trunc).lower
    return [
        IdentityReport("square lower bound * L_square", a_square * landau_square(), 1.0),
        IdentityReport("hexagonal lower bound * L_hex", a_hex * landau_hex(), 1.0),
    ]


def verify_proof_chain(grid: GridSpec = GridSpec(), trunc: TruncationSpec = TruncationSpec()):
    """The chain of theta/hypergeometric identities behind ``A_square = 1/L_square``.

    1. ``2 theta4(i)^2`` equals the square lattice's sharp lower bound.
    2. ``theta4(i)^4 / theta3(i)^4 = 1/2``.
    3. Gauss' value of ``2F1(a, b; (1+a+b)/2; 1/2)`` at ``a = b = 1/2``.
    4. ``2F1(1/2, 1/2; 1; 1 - theta4^4/theta3^4) = theta3^2`` at ``tau = i``.
    """
    t3, t4 = theta3(1.0), theta4(1.0)
    a_square = sharp_bounds(make_rectangular(math.sqrt(0.5), math.sqrt(0.5)), grid, trunc).lower
    a = b = 0.5
    c = 0.5 * (1.0 + a + b)
    gauss_rhs = gamma(0.5) * gamma(c) / (gamma(0.5 * (1.0 + a)) * gamma(0.5 * (1.0 + b)))
    modulus = t4 ** 4 / t3 ** 4
    return [
        IdentityReport("2 theta4(i)^2 vs square lower bound", 2.0 * t4 * t4, a_square),
        IdentityReport("theta4(i)^4 / theta3(i)^4 vs 1/2", modulus, 0.5),
        IdentityReport("Gauss 2F1(1/2,1/2;1;1/2)", hyp2f1(a, b, c, 0.5), gauss_rhs),
        IdentityReport("Ramanujan 2F1 vs theta3(i)^2", hyp2f1(0.5, 0.5, 1.0, 1.0 - modulus), t3 * t3),
    ]
