"""Equilibrium location and stability classification.

The system always has the origin E0 = (0, 0) and the predator-free point
E1 = (gamma, 0).  A prey-free point E2 = (0, y2) exists exactly when
delta*xi - m(1 + alpha*xi) > 0.  Coexistence (interior) equilibria are the
real roots in (0, gamma] of a degree-5 polynomial in x, paired with

    y* = ((delta - m) x*^2 + delta*xi - m(1 + alpha*xi))
         / (eps (1 + x*^2 + alpha*xi)).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .model import ModelParams, jacobian, predator_nullcline_y, rhs

__all__ = [
    "StabilityClass",
    "Equilibrium",
    "QuinticCoefficients",
    "TOL_HYP",
    "interior_quintic",
    "find_interior_equilibria",
    "find_all_equilibria",
    "classify",
    "interior_trace_det",
    "stability_window",
    "pest_floor",
]

# |Re(lambda)| at or below this is treated as non-hyperbolic; classification
# near bifurcations is ill-posed and refined by the continuation tooling.
TOL_HYP = 1e-7

# focus/node split on the eigenvalue imaginary part, relative to spectral radius
_FOCUS_IM_REL = 1e-9

# accept polished roots as real when |Im| <= this * (1 + |root|)
_REAL_IM_TOL = 1e-8


class StabilityClass(enum.Enum):
    STABLE_NODE = "StableNode"
    STABLE_FOCUS = "StableFocus"
    UNSTABLE_NODE = "UnstableNode"
    UNSTABLE_FOCUS = "UnstableFocus"
    SADDLE = "Saddle"
    CENTER_AMBIGUOUS = "CenterAmbiguous"
    NON_HYPERBOLIC = "NonHyperbolic"

    def __str__(self) -> str:  # CSV-friendly
        return self.value


@dataclass(frozen=True)
class Equilibrium:
    """An equilibrium point with eigenvalue data and closed-form flags.

    ``kind`` is one of "E0", "E1", "E2", "interior".  ``flags`` records the
    sign quantities used by the closed-form stability criteria so callers can
    compare them against the numeric class.
    """

    x: float
    y: float
    kind: str
    eigenvalues: tuple[complex, complex] = (complex("nan"), complex("nan"))
    stability: StabilityClass | None = None
    flags: dict = field(default_factory=dict)
    residual: float = float("nan")

    @property
    def location(self) -> np.ndarray:
        return np.array([self.x, self.y])

    def is_stable(self) -> bool:
        return self.stability in (StabilityClass.STABLE_NODE, StabilityClass.STABLE_FOCUS)


@dataclass(frozen=True)
class QuinticCoefficients:
    """Degree-5 polynomial coefficients for interior x*, constant term first."""

    c: tuple[float, float, float, float, float, float]

    def __post_init__(self) -> None:
        if len(self.c) != 6:
            raise ValueError("expected 6 coefficients (degrees 0..5)")

    def highest_first(self) -> np.ndarray:
        """Coefficient array ordered for numpy.roots / polyval."""
        return np.asarray(self.c[::-1], dtype=float)

    def __call__(self, x: float | np.ndarray) -> float | np.ndarray:
        return np.polyval(self.highest_first(), x)

    def derivative(self, x: float) -> float:
        return float(np.polyval(np.polyder(self.highest_first()), x))


def interior_quintic(p: ModelParams) -> QuinticCoefficients:
    """Coefficients of the interior-equilibrium polynomial in x*.

    Constant-first ordering (c0, c1, c2, c3, c4, c5):

        c0 = -eps (1 + alpha*xi)^2
        c1 = eps (1 + alpha*xi)^2 / gamma + delta*xi - m (1 + alpha*xi)
        c2 = -2 eps (1 + alpha*xi)
        c3 = delta - m + 2 eps (1 + alpha*xi) / gamma
        c4 = -eps
        c5 = eps / gamma

    The polynomial equals eps * (1 + x^2 + alpha*xi) * x * (y_pred(x) - y_prey(x)),
    so its roots in (0, gamma) with positive y* are exactly the nullcline
    intersections.
    """
    A = 1.0 + p.alpha * p.xi
    e = p.epsilon
    return QuinticCoefficients(
        c=(
            -e * A * A,
            e * A * A / p.gamma + p.delta * p.xi - p.m * A,
            -2.0 * e * A,
            p.delta - p.m + 2.0 * e * A / p.gamma,
            -e,
            e / p.gamma,
        )
    )


def _polish_root(q: QuinticCoefficients, x0: float, iters: int = 8) -> float:
    """Newton refinement of a quintic root."""
    x = float(x0)
    for _ in range(iters):
        f = float(q(x))
        df = q.derivative(x)
        if df == 0.0:
            break
        step = f / df
        x -= step
        if abs(step) <= 1e-15 * (1.0 + abs(x)):
            break
    return x


def find_interior_equilibria(p: ModelParams, classify_points: bool = True,
                             tol_hyp: float = TOL_HYP) -> list[Equilibrium]:
    """All coexistence equilibria, sorted ascending in x.

    Roots come from the companion-matrix solve of the quintic, are Newton
    polished, accepted as real when |Im| <= 1e-8 (1 + |root|), kept for
    x in (0, gamma] with y* >= 0, and deduplicated (double roots at folds
    polish to one point).  At most five are returned.
    """
    q = interior_quintic(p)
    roots = np.roots(q.highest_first())
    accepted: list[float] = []
    for z in roots:
        if abs(z.imag) > _REAL_IM_TOL * (1.0 + abs(z)):
            continue
        x = _polish_root(q, z.real)
        if not (x > 1e-14 and x <= p.gamma * (1.0 + 1e-10)):
            continue
        x = min(x, p.gamma)
        if any(abs(x - u) <= 1e-7 * (1.0 + abs(u)) for u in accepted):
            continue
        accepted.append(x)

    out: list[Equilibrium] = []
    for x in sorted(accepted):
        y = predator_nullcline_y(p, x)
        if y < -1e-12:
            continue
        y = max(y, 0.0)
        e = Equilibrium(x=x, y=y, kind="interior",
                        residual=float(np.max(np.abs(rhs(p, (x, y))))))
        out.append(classify(p, e, tol_hyp=tol_hyp) if classify_points else e)
    return out


def _phi_flags(p: ModelParams) -> dict:
    A = 1.0 + p.alpha * p.xi
    phi1 = p.delta * p.xi - p.m * A
    return {
        "phi1": phi1,
        "phi2": phi1 + (p.delta - p.m) * p.gamma**2,
        "phi3": 1.0 + p.alpha * p.xi - p.xi,
    }


def find_all_equilibria(p: ModelParams, tol_hyp: float = TOL_HYP) -> list[Equilibrium]:
    """E0, E1, E2 (when it exists) and every interior equilibrium, classified."""
    flags = _phi_flags(p)
    out = [
        classify(p, Equilibrium(x=0.0, y=0.0, kind="E0", residual=0.0), tol_hyp=tol_hyp),
        classify(p, Equilibrium(x=p.gamma, y=0.0, kind="E1", residual=0.0), tol_hyp=tol_hyp),
    ]
    if flags["phi1"] > 0:
        A = 1.0 + p.alpha * p.xi
        y2 = flags["phi1"] / (p.epsilon * A)
        out.append(classify(p, Equilibrium(
            x=0.0, y=y2, kind="E2",
            residual=float(np.max(np.abs(rhs(p, (0.0, y2)))))), tol_hyp=tol_hyp))
    out.extend(find_interior_equilibria(p, tol_hyp=tol_hyp))
    return out


def classify(p: ModelParams, e: Equilibrium, tol_hyp: float = TOL_HYP) -> Equilibrium:
    """Return ``e`` with eigenvalues, stability class and flags filled in.

    The class follows the eigenvalues of the Jacobian under the documented
    tolerance policy: NonHyperbolic when some |Re| <= 1e-7 (CenterAmbiguous
    when that happens on a complex pair), focus vs node split at
    |Im| > 1e-9 * spectral radius.  Closed-form sign quantities are recorded
    in ``flags`` for comparison, never used to decide the class.
    """
    J = jacobian(p, (e.x, e.y))
    lam = np.linalg.eigvals(J)
    lam = lam[np.argsort(lam.real)]
    specrad = max(np.max(np.abs(lam)), 1e-300)
    is_complex = abs(lam[0].imag) > _FOCUS_IM_REL * specrad

    if min(abs(lam[0].real), abs(lam[1].real)) <= tol_hyp:
        cls = StabilityClass.CENTER_AMBIGUOUS if is_complex else StabilityClass.NON_HYPERBOLIC
    elif is_complex:
        cls = StabilityClass.STABLE_FOCUS if lam[0].real < 0 else StabilityClass.UNSTABLE_FOCUS
    elif lam[0].real < 0 < lam[1].real:
        cls = StabilityClass.SADDLE
    elif lam[1].real < 0:
        cls = StabilityClass.STABLE_NODE
    else:
        cls = StabilityClass.UNSTABLE_NODE

    flags = _phi_flags(p)
    if e.kind == "interior":
        axi = p.alpha * p.xi
        lo, hi = stability_window(p)
        flags.update({
            "x_sq_minus_1_alpha_xi": e.x**2 - (1.0 + axi),
            "window_lo": lo,
            "window_hi": hi,
            "in_stability_window": bool(flags["phi3"] > 0 and lo < e.x < hi),
            "above_pest_floor": bool(e.x > pest_floor(p)),
        })

    residual = e.residual
    if np.isnan(residual):
        residual = float(np.max(np.abs(rhs(p, (e.x, e.y)))))

    return Equilibrium(
        x=e.x, y=e.y, kind=e.kind,
        eigenvalues=(complex(lam[0]), complex(lam[1])),
        stability=cls, flags=flags, residual=residual,
    )


def interior_trace_det(p: ModelParams, x: float, y: float) -> tuple[float, float]:
    """Simplified trace and determinant valid at interior equilibria.

    These closed forms use the equilibrium substitutions
    1 - x/gamma = x y / D and delta (x^2 + xi)/D = m + eps y, so they agree
    with the unsimplified Jacobian only where both nullclines hold:

        tr  = -eps y - x/gamma + x y (x^2 - 1 - alpha*xi) / D^2
        det = 2 delta x^3 y (1 + alpha*xi - xi) / D^3
              + eps x y (1/gamma + (1 + alpha*xi - x^2) y / D^2)
    """
    axi = p.alpha * p.xi
    D = 1.0 + x * x + axi
    tr = -p.epsilon * y - x / p.gamma + x * y * (x * x - 1.0 - axi) / D**2
    det = (2.0 * p.delta * x**3 * y * (1.0 + axi - p.xi) / D**3
           + p.epsilon * x * y * (1.0 / p.gamma + (1.0 + axi - x * x) * y / D**2))
    return tr, det


def stability_window(p: ModelParams) -> tuple[float, float]:
    """Sufficient-condition window (lo, hi) for interior stability.

    An interior equilibrium with 1 + alpha*xi - xi > 0 and
    lo < x* < hi, where lo = eps/(1 + eps/gamma) and
    hi = min(sqrt(1 + alpha*xi), gamma), is asymptotically stable.  The
    converse does not hold; numeric eigenvalues take precedence.
    """
    lo = p.epsilon / (1.0 + p.epsilon / p.gamma)
    hi = min(np.sqrt(1.0 + p.alpha * p.xi), p.gamma)
    return lo, hi


def pest_floor(p: ModelParams) -> float:
    """Claimed lower bound eps/(1 + eps/gamma) on coexistence prey levels.

    Surfaced as a diagnostic; roots below it are never discarded.
    """
    return p.epsilon / (1.0 + p.epsilon / p.gamma)
