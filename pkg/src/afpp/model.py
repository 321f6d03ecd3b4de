"""Core definitions for a predator-prey system with predator intra-specific
competition and an additional food source for the predator.

The nondimensional state is (x, y) with x the prey (pest) density and y the
predator density.  The vector field is

    dx/dt = x (1 - x/gamma) - x^2 y / (1 + x^2 + alpha*xi)
    dy/dt = delta (x^2 + xi) y / (1 + x^2 + alpha*xi) - m y - eps y^2

where gamma is the prey carrying capacity, alpha the additional-food quality,
xi its quantity, eps the predator competition strength, m the predator
mortality and delta the conversion efficiency.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DimensionalParams",
    "ModelParams",
    "State",
    "nondimensionalize",
    "denominator",
    "rhs",
    "jacobian",
    "prey_nullcline_y",
    "predator_nullcline_y",
    "nullcline_discriminant",
]


@dataclass(frozen=True)
class DimensionalParams:
    """Parameters of the dimensional model.

    Parameters
    ----------
    r : float
        Prey intrinsic growth rate (1/time).
    K : float
        Prey carrying capacity (biomass).
    c : float
        Predation rate (1/time).
    a : float
        Predator half-saturation prey density (biomass).
    delta1 : float
        Conversion efficiency (1/time).
    m1 : float
        Predator mortality in the absence of prey (1/time).
    d : float
        Predator intra-specific competition (1/(biomass*time)).
    alpha : float
        Additional-food quality (dimensionless).
    A : float
        Additional-food biomass; zero means no additional food.
    eta : float
        Ratio of predator search rates for additional food vs prey.
    """

    r: float
    K: float
    c: float
    a: float
    delta1: float
    m1: float
    d: float
    alpha: float
    A: float
    eta: float

    def __post_init__(self) -> None:
        for name in ("r", "K", "c", "a", "delta1", "m1", "d"):
            v = getattr(self, name)
            if not np.isfinite(v) or v <= 0:
                raise ValueError(f"{name} must be strictly positive, got {v}")
        # quality/quantity fields may be zero (no additional food)
        for name in ("alpha", "A", "eta"):
            v = getattr(self, name)
            if not np.isfinite(v) or v < 0:
                raise ValueError(f"{name} must be non-negative, got {v}")


@dataclass(frozen=True)
class ModelParams:
    """Nondimensional parameter set (gamma, alpha, xi, epsilon, m, delta).

    The feasibility constraint delta > m is enforced unless
    ``allow_nonfeasible=True`` is passed, which permits exploration at and
    beyond the boundary.  alpha and xi may be zero, the no-additional-food
    configuration.
    """

    gamma: float
    alpha: float
    xi: float
    epsilon: float
    m: float
    delta: float
    allow_nonfeasible: bool = False

    def __post_init__(self) -> None:
        for name in ("gamma", "epsilon", "m", "delta"):
            v = getattr(self, name)
            if not np.isfinite(v) or v <= 0:
                raise ValueError(f"{name} must be strictly positive, got {v}")
        for name in ("alpha", "xi"):
            v = getattr(self, name)
            if not np.isfinite(v) or v < 0:
                raise ValueError(f"{name} must be non-negative, got {v}")
        if not self.allow_nonfeasible and self.delta <= self.m:
            raise ValueError(
                f"feasibility requires delta > m (got delta={self.delta}, "
                f"m={self.m}); pass allow_nonfeasible=True to override"
            )

    def with_updates(self, **changes: float) -> "ModelParams":
        """Return a copy with the given fields replaced."""
        from dataclasses import replace

        return replace(self, **changes)


@dataclass(frozen=True)
class State:
    """A prey/predator pair in nondimensional units."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.x) and np.isfinite(self.y)):
            raise ValueError(f"state must be finite, got ({self.x}, {self.y})")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y], dtype=float)


def nondimensionalize(p: DimensionalParams) -> ModelParams:
    """Map dimensional parameters to the six nondimensional groups.

    Returns (gamma, alpha, xi, epsilon, m, delta) =
    (K/a, alpha, eta*(A/a)^2, d*a/c, m1/r, delta1/r).
    """
    return ModelParams(
        gamma=p.K / p.a,
        alpha=p.alpha,
        xi=p.eta * (p.A / p.a) ** 2,
        epsilon=p.d * p.a / p.c,
        m=p.m1 / p.r,
        delta=p.delta1 / p.r,
        allow_nonfeasible=True,
    )


def denominator(p: ModelParams, x: float | np.ndarray) -> float | np.ndarray:
    """Shared functional-response denominator 1 + x^2 + alpha*xi."""
    return 1.0 + np.asarray(x, dtype=float) ** 2 + p.alpha * p.xi


def rhs(p: ModelParams, s, eps: float | None = None) -> np.ndarray:
    """Vector field (dx/dt, dy/dt) at state ``s``.

    ``eps`` overrides p.epsilon when given, which supports time-varying
    competition schedules.  Both axes are invariant: the returned dx/dt is
    exactly 0 when x = 0 and dy/dt is exactly 0 when y = 0, because every
    term carries the corresponding factor.
    """
    x, y = float(s[0]), float(s[1])
    e = p.epsilon if eps is None else eps
    D = 1.0 + x * x + p.alpha * p.xi
    dx = x * (1.0 - x / p.gamma) - x * x * y / D
    dy = p.delta * (x * x + p.xi) * y / D - p.m * y - e * y * y
    return np.array([dx, dy])


def jacobian(p: ModelParams, s, eps: float | None = None) -> np.ndarray:
    """Jacobian matrix of the vector field at state ``s``."""
    x, y = float(s[0]), float(s[1])
    e = p.epsilon if eps is None else eps
    axi = p.alpha * p.xi
    D = 1.0 + x * x + axi
    j11 = 1.0 - 2.0 * x / p.gamma - 2.0 * x * y * (1.0 + axi) / D**2
    j12 = -x * x / D
    j21 = 2.0 * p.delta * x * y * (1.0 + axi - p.xi) / D**2
    j22 = p.delta * (x * x + p.xi) / D - p.m - 2.0 * e * y
    return np.array([[j11, j12], [j21, j22]])


def prey_nullcline_y(p: ModelParams, x: float) -> float:
    """Nontrivial prey nullcline y(x) = (1 - x/gamma)(1 + x^2 + alpha*xi)/x.

    Positive exactly for 0 < x < gamma; the y-axis is a vertical asymptote.

    Raises
    ------
    ValueError
        If x <= 0.
    """
    if x <= 0:
        raise ValueError(f"prey nullcline requires x > 0, got {x}")
    return (1.0 - x / p.gamma) * (1.0 + x * x + p.alpha * p.xi) / x


def predator_nullcline_y(p: ModelParams, x: float) -> float:
    """Nontrivial predator nullcline.

    y(x) = ((delta - m) x^2 + delta*xi - m(1 + alpha*xi)) / (eps (1 + x^2 + alpha*xi)).
    Total on x >= 0 and may be negative; callers filter for biological
    relevance.  At x = 0 the value is (delta*xi - m(1+alpha*xi))/(eps(1+alpha*xi)),
    which is negative when xi = 0.
    """
    axi = p.alpha * p.xi
    num = (p.delta - p.m) * x * x + p.delta * p.xi - p.m * (1.0 + axi)
    return num / (p.epsilon * (1.0 + x * x + axi))


def nullcline_discriminant(p: ModelParams) -> float:
    """Shape discriminant of the prey nullcline.

    Delta = (4/gamma^2)(1 + alpha*xi)(gamma^2 - 27(1 + alpha*xi)).
    Positive means the nullcline has a crest and a trough on (0, gamma);
    negative means it is monotone.
    """
    w = 1.0 + p.alpha * p.xi
    return 4.0 / p.gamma**2 * w * (p.gamma**2 - 27.0 * w)
