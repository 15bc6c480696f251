"""Parameter quadruples for the jump functional and the homothety normalization.

The 1D energy is  alpha * sum |jump|^theta  +  beta * integral (u - M x)^2 dx,
with theta in [0,1), alpha, beta > 0 and forcing slope M != 0.  In 2D the
forcing is the linear function <xi, x>.  A homothety maps any admissible
parameter set onto the normalized quadruple (theta, alpha_theta, 3, 1), where
alpha_theta = 2^(2-theta)/(1-theta); in normalized form the optimal step
length and rise are both 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "Params1D",
    "Params2D",
    "Normalization",
    "alpha_theta",
    "sigma_theta",
    "rho_theta",
    "canonical_h_v",
    "unit_energy_density",
    "normalize_params",
]


def alpha_theta(theta: float) -> float:
    """Normalized jump weight 2^(2-theta)/(1-theta)."""
    return 2.0 ** (2.0 - theta) / (1.0 - theta)


def sigma_theta(theta: float) -> float:
    """Stationary point sqrt((3-theta)/(3(1-theta))) of the calibration cubic."""
    return math.sqrt((3.0 - theta) / (3.0 * (1.0 - theta)))


def rho_theta(theta: float) -> float:
    """Range endpoint of the truncated cubic: its value at sigma_theta."""
    s = sigma_theta(theta)
    return (3.0 - theta) * s - (1.0 - theta) * s ** 3


def _check_common(theta: float, alpha: float, beta: float) -> None:
    if not 0.0 <= theta < 1.0:
        raise ValueError(f"theta must lie in [0, 1), got {theta}")
    if not alpha > 0.0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if not beta > 0.0:
        raise ValueError(f"beta must be positive, got {beta}")


@dataclass(frozen=True)
class Params1D:
    """Energy parameters (theta, alpha, beta, m) for the 1D functional."""

    theta: float
    alpha: float
    beta: float
    m: float

    def __post_init__(self) -> None:
        _check_common(self.theta, self.alpha, self.beta)
        if self.m == 0.0:
            raise ValueError("forcing slope m must be nonzero")

    @classmethod
    def normalized(cls, theta: float) -> "Params1D":
        """The normalized quadruple (theta, alpha_theta, 3, 1)."""
        return cls(theta, alpha_theta(theta), 3.0, 1.0)


@dataclass(frozen=True)
class Params2D:
    """Energy parameters (theta, alpha, beta, xi) for the 2D functional."""

    theta: float
    alpha: float
    beta: float
    xi: tuple[float, float]

    def __post_init__(self) -> None:
        _check_common(self.theta, self.alpha, self.beta)
        xi = (float(self.xi[0]), float(self.xi[1]))
        object.__setattr__(self, "xi", xi)
        if math.hypot(*xi) == 0.0:
            raise ValueError("forcing gradient xi must be nonzero")

    @classmethod
    def normalized(cls, theta: float, xi: tuple[float, float] = (1.0, 0.0)) -> "Params2D":
        return cls(theta, alpha_theta(theta), 3.0, xi)


def canonical_h_v(p: Params1D) -> tuple[float, float]:
    """Optimal step length H and rise V = M*H for parameters p.

    H minimizes the per-unit-length energy density of an (H, M*H)-staircase,
    balancing jump cost against fidelity cost.
    """
    th, al, be, m = p.theta, p.alpha, p.beta, p.m
    h = (3.0 * (1.0 - th) * al / ((2.0 * abs(m)) ** (2.0 - th) * be)) ** (1.0 / (3.0 - th))
    return h, m * h


def unit_energy_density(h: float, p: Params1D) -> float:
    """Average energy per unit length of the (h, M*h)-staircase.

    One period of length 2h carries one jump of height 2|M|h and a fidelity
    contribution beta*M^2*(2h)^3/12; dividing by 2h gives the density below.
    """
    if not h > 0.0:
        raise ValueError("step length h must be positive")
    th = p.theta
    # one period of length 2h carries one jump of height 2|M|h
    jump = p.alpha * (2.0 * abs(p.m) * h) ** th / (2.0 * h)
    fidelity = p.beta * p.m ** 2 * h ** 2 / 3.0
    return jump + fidelity


@dataclass(frozen=True)
class Normalization:
    """Homothety taking parameters p onto (theta, alpha_theta, 3, 1).

    The underlying change of variables is u_A(x) = (A/M) u(x/A) with A = 1/H.
    Energies transform as

        JF_p(window, u) = scale * JF_norm(A * window, u_A),

    with scale = beta*M^2/(3*A^3).  ``transform_*`` maps objects from the
    original frame into the normalized frame.
    """

    original: Params1D
    params: Params1D
    scale: float
    a: float

    def transform_window(self, window: tuple[float, float]) -> tuple[float, float]:
        return (self.a * window[0], self.a * window[1])

    def transform_point(self, x: float) -> float:
        return self.a * x

    def transform_value(self, value: float) -> float:
        return (self.a / self.original.m) * value


def normalize_params(p: Params1D) -> Normalization:
    """Build the homothety normalizing p to (theta, alpha_theta, 3, 1).

    A is chosen so the transformed jump weight (3 alpha / beta) A^(3-theta)
    / |M|^(2-theta) equals alpha_theta; that A is exactly 1/H for the
    canonical step length H.
    """
    th = p.theta
    h, _ = canonical_h_v(p)
    a = 1.0 / h
    alpha_hat = (3.0 * p.alpha / p.beta) * a ** (3.0 - th) / abs(p.m) ** (2.0 - th)
    scale = p.beta * p.m ** 2 / (3.0 * a ** 3)
    p_norm = Params1D(th, alpha_hat, 3.0, 1.0)
    return Normalization(original=p, params=p_norm, scale=scale, a=a)
