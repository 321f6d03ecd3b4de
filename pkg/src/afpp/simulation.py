"""Time integration with positivity and boundedness monitors.

Integration uses an adaptive 4th/5th-order Runge-Kutta pair with defaults
rtol=1e-8, atol=1e-10.  Monitors cover two invariants of the model: state
components never drop below -1e-10 (tiny undershoots are clamped to zero and
recorded as events), and the weighted total W = x + y/delta stays under an
exponential-relaxation envelope determined by a constant M.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp

from .model import ModelParams, denominator, rhs

__all__ = [
    "Trajectory",
    "BoundEnvelope",
    "IntegrationError",
    "TOL_POS",
    "integrate",
    "integrate_nonautonomous",
    "hermite_eval",
    "bound_envelope",
    "gronwall_envelope",
    "weighted_total",
    "check_positivity",
    "check_boundedness",
    "certified_supremum",
    "rk4_fixed",
    "sine_eps_schedule",
]

TOL_POS = 1e-10


class IntegrationError(RuntimeError):
    """Integration failed; carries the partial trajectory."""

    def __init__(self, message: str, partial: "Trajectory"):
        super().__init__(message)
        self.partial = partial


@dataclass
class Trajectory:
    """Solution samples with stored derivatives for dense interpolation.

    ``events`` collects monitor records such as positivity clamps and
    integrator warnings.  ``eps_values`` holds the effective competition
    strength at each sample, which differs from the parameter value only
    for non-autonomous runs.
    """

    times: np.ndarray
    states: np.ndarray
    derivs: np.ndarray
    eps_values: np.ndarray
    events: list = field(default_factory=list)

    def final_state(self) -> np.ndarray:
        return self.states[-1].copy()


def _integrate_impl(p: ModelParams, eps_fn, initial, t_end: float,
                    rtol: float, atol: float, t_eval, max_step: float) -> Trajectory:
    w0 = np.asarray(initial, dtype=float)
    if w0.shape != (2,):
        raise ValueError(f"initial state must have two components, got {w0!r}")
    if np.any(w0 < -TOL_POS):
        raise ValueError(f"initial state must be non-negative, got {w0}")
    if t_end <= 0:
        raise ValueError(f"t_end must be positive, got {t_end}")

    def f(t, w):
        return rhs(p, w, eps=eps_fn(t))

    sol = solve_ivp(f, (0.0, float(t_end)), w0, method="RK45",
                    rtol=rtol, atol=atol, t_eval=t_eval,
                    max_step=max_step, dense_output=False)

    times = sol.t
    states = sol.y.T.copy()
    eps_vals = np.array([eps_fn(t) for t in times])

    events: list = []
    for i, t in enumerate(times):
        for j, name in enumerate(("x", "y")):
            v = states[i, j]
            if v < 0.0:
                if v < -TOL_POS:
                    events.append({"time": float(t), "kind": "positivity_clamp",
                                   "component": name, "value": float(v)})
                states[i, j] = 0.0

    derivs = np.array([rhs(p, states[i], eps=eps_vals[i]) for i in range(len(times))])
    traj = Trajectory(times=times, states=states, derivs=derivs,
                      eps_values=eps_vals, events=events)

    if not sol.success:
        traj.events.append({"time": float(times[-1]) if len(times) else 0.0,
                            "kind": "integration_failure", "message": sol.message})
        raise IntegrationError(sol.message, traj)
    return traj


def integrate(p: ModelParams, initial, t_end: float, rtol: float = 1e-8,
              atol: float = 1e-10, t_eval=None, max_step: float = np.inf) -> Trajectory:
    """Integrate the autonomous system from ``initial`` over [0, t_end]."""
    return _integrate_impl(p, lambda t: p.epsilon, initial, t_end,
                           rtol, atol, t_eval, max_step)


def integrate_nonautonomous(p: ModelParams, eps_fn: Callable[[float], float],
                            initial, t_end: float, rtol: float = 1e-8,
                            atol: float = 1e-10, t_eval=None,
                            max_step: float = np.inf) -> Trajectory:
    """Integrate with the competition strength replaced by eps_fn(t).

    The schedule is substituted at every integrator stage evaluation, and
    must be positive on [0, t_end].
    """
    return _integrate_impl(p, eps_fn, initial, t_end, rtol, atol, t_eval, max_step)


def hermite_eval(traj: Trajectory, t: float | np.ndarray) -> np.ndarray:
    """Cubic Hermite interpolation of a trajectory at times ``t``.

    Uses the stored states and derivatives at the integration knots; no
    re-integration happens.
    """
    tq = np.atleast_1d(np.asarray(t, dtype=float))
    ts = traj.times
    if np.any(tq < ts[0] - 1e-12) or np.any(tq > ts[-1] + 1e-12):
        raise ValueError("interpolation time outside trajectory range")
    idx = np.clip(np.searchsorted(ts, tq, side="right") - 1, 0, len(ts) - 2)
    h = ts[idx + 1] - ts[idx]
    s = (tq - ts[idx]) / h
    h00 = 2 * s**3 - 3 * s**2 + 1
    h10 = s**3 - 2 * s**2 + s
    h01 = -2 * s**3 + 3 * s**2
    h11 = s**3 - s**2
    y0, y1 = traj.states[idx], traj.states[idx + 1]
    f0, f1 = traj.derivs[idx], traj.derivs[idx + 1]
    out = (h00[:, None] * y0 + h10[:, None] * (h[:, None] * f0)
           + h01[:, None] * y1 + h11[:, None] * (h[:, None] * f1))
    return out[0] if np.isscalar(t) or np.ndim(t) == 0 else out


@dataclass(frozen=True)
class BoundEnvelope:
    """Relaxation-envelope constants for the weighted total W = x + y/delta.

    M = gamma (1+K)^2 / 4 + xi/eps + (K-m)^2 / (4 eps) for the chosen K, and
    the asymptotic bound is M/K.
    """

    K_choice: float
    M: float

    @property
    def asymptotic_bound(self) -> float:
        return self.M / self.K_choice


def bound_envelope(p: ModelParams, K_choice: float | None = None) -> BoundEnvelope:
    """Envelope constants at K (default K = m, which zeroes the (K-m)^2 term)."""
    K = p.m if K_choice is None else float(K_choice)
    if K <= 0:
        raise ValueError(f"K_choice must be positive, got {K}")
    M = (p.gamma * (1.0 + K) ** 2 / 4.0 + p.xi / p.epsilon
         + (K - p.m) ** 2 / (4.0 * p.epsilon))
    return BoundEnvelope(K_choice=K, M=M)


def gronwall_envelope(env: BoundEnvelope, W0: float, t: np.ndarray) -> np.ndarray:
    """Envelope value (M/K)(1 - e^{-Kt}) + W0 e^{-Kt} at times t."""
    decay = np.exp(-env.K_choice * np.asarray(t, dtype=float))
    return env.M / env.K_choice * (1.0 - decay) + W0 * decay


def weighted_total(p: ModelParams, states: np.ndarray) -> np.ndarray:
    """W = x + y/delta along a state array of shape (n, 2)."""
    s = np.atleast_2d(states)
    return s[:, 0] + s[:, 1] / p.delta


def check_positivity(traj: Trajectory, tol: float = TOL_POS) -> dict:
    """Report the worst negative excursion over the recorded samples."""
    clamps = [e for e in traj.events if e["kind"] == "positivity_clamp"]
    worst = min((e["value"] for e in clamps), default=0.0)
    return {"ok": worst >= -tol, "worst_value": worst, "n_clamps": len(clamps)}


def check_boundedness(p: ModelParams, traj: Trajectory,
                      env: BoundEnvelope | None = None,
                      tol: float = 1e-6) -> dict:
    """Check W(t) against the envelope at every output time.

    Returns the largest violation W(t) - envelope(t); ``ok`` means no output
    time exceeds the envelope by more than ``tol``.  The default envelope is
    built from p.epsilon; callers checking a non-autonomous run should pass
    an envelope built from the smallest epsilon the schedule visits.
    """
    if env is None:
        env = bound_envelope(p)
    W = weighted_total(p, traj.states)
    bound = gronwall_envelope(env, W[0], traj.times)
    gap = W - bound
    i = int(np.argmax(gap))
    return {"ok": bool(gap[i] <= tol), "worst_violation": float(gap[i]),
            "t_worst": float(traj.times[i]), "envelope": env}


def certified_supremum(p: ModelParams, K: float, n_grid: int = 2001) -> float:
    """Numerically certified upper bound for dW/dt + K W over the quadrant.

    For fixed x the expression (1+K)x - x^2/gamma + a(x) y - (eps/delta) y^2
    with a(x) = xi/(1+x^2+alpha*xi) + (K-m)/delta is a downward parabola in y,
    so the exact y-maximum is closed-form; the x-maximum is then located by a
    dense grid plus parabolic refinement.  A 1e-9 relative safety margin is
    added.  Useful as an integrator-validation envelope when the closed-form
    M above is not an upper bound (it is not, for large delta*xi).
    """
    b = p.epsilon / p.delta

    def s_max(x: np.ndarray) -> np.ndarray:
        g = (1.0 + K) * x - x * x / p.gamma
        a = p.xi / denominator(p, x) + (K - p.m) / p.delta
        return g + np.where(a > 0, a * a / (4.0 * b), 0.0)

    x_hi = max(p.gamma * (1.0 + K) / 2.0, p.gamma) * 1.5
    xs = np.linspace(0.0, x_hi, n_grid)
    vals = s_max(xs)
    i = int(np.argmax(vals))
    lo = xs[max(i - 1, 0)]
    hi = xs[min(i + 1, n_grid - 1)]
    from scipy.optimize import minimize_scalar

    res = minimize_scalar(lambda x: -s_max(np.asarray(x)), bounds=(lo, hi),
                          method="bounded", options={"xatol": 1e-12})
    best = max(float(vals[i]), float(-res.fun))
    return best + 1e-9 * (1.0 + abs(best))


def rk4_fixed(f: Callable[[float, np.ndarray], np.ndarray], w0, t0: float,
              t1: float, n_steps: int) -> tuple[np.ndarray, np.ndarray]:
    """Classical fixed-step RK4 over [t0, t1]; returns (times, states).

    Serves the h^4 order audit and any caller needing a deterministic
    fixed-grid integration.
    """
    w = np.asarray(w0, dtype=float).copy()
    h = (t1 - t0) / n_steps
    times = t0 + h * np.arange(n_steps + 1)
    out = np.empty((n_steps + 1, w.size))
    out[0] = w
    for i in range(n_steps):
        t = times[i]
        k1 = f(t, w)
        k2 = f(t + 0.5 * h, w + 0.5 * h * k1)
        k3 = f(t + 0.5 * h, w + 0.5 * h * k2)
        k4 = f(t + h, w + h * k3)
        w = w + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[i + 1] = w
    return times, out


def sine_eps_schedule(eps_min: float, eps_max: float, period: float) -> Callable[[float], float]:
    """Smooth periodic schedule eps(t) = mid + half * sin(2 pi t / period).

    Equal endpoints give the constant schedule (zero-amplitude sweep).
    """
    if not (0 < eps_min <= eps_max):
        raise ValueError("need 0 < eps_min <= eps_max")
    mid = 0.5 * (eps_min + eps_max)
    half = 0.5 * (eps_max - eps_min)

    def eps_fn(t: float) -> float:
        return mid + half * np.sin(2.0 * np.pi * t / period)

    return eps_fn
