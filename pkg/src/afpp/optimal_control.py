"""Time-optimal steering of the system by the additional-food knobs.

Two problems are posed: drive the state from an initial point to a target in
minimum time using either the food quality (alpha) or the food quantity (xi)
as a bounded control.  Both are solved after the time reparameterization
dt = (1 + alpha*xi + x^2) ds, which makes the s-domain dynamics polynomial
and the problem control-affine:

    quality  (u = alpha): x' = x(1-x/gamma) D - x^2 y
                          y' = delta (x^2 + xi) y - D (m y + eps y^2)
                          with D = 1 + x^2 + u xi
    quantity (u = xi):    same with D = 1 + x^2 + alpha u and xi -> u in the
                          conversion term

The transformed duration S is minimized by direct multiple shooting with a
piecewise-constant control per interval and RK4 integration inside each
interval; the physical duration T is recovered by quadrature of D along the
solution.  The Pontryagin apparatus (Hamiltonian, adjoints, switching
function, singular-arc ratio diagnostics) is exposed for verification, with
costates reconstructed from the discrete optimality system of the converged
NLP.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .model import ModelParams

__all__ = [
    "QUALITY",
    "QUANTITY",
    "ControlProblem",
    "Costate",
    "ControlSolution",
    "InfeasibleControlError",
    "transformed_rhs",
    "physical_rhs",
    "hamiltonian",
    "adjoint_rhs",
    "switching_function",
    "singular_arc_ratios",
    "is_singular_candidate",
    "solve",
    "verify_pmp",
    "resimulate_physical",
    "constant_control_solution",
    "calibrate_bounds",
]

QUALITY = "Quality"
QUANTITY = "Quantity"

_DEFECT_TOL = 1e-7
_ENDPOINT_TOL = 1e-6
_MAX_ITER = 500


class InfeasibleControlError(RuntimeError):
    """Raised when no control within bounds reaches the target.

    Carries the best residual and iterate found across restarts in
    ``diagnostics``.
    """

    def __init__(self, message: str, diagnostics: dict):
        super().__init__(message)
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class ControlProblem:
    params: ModelParams
    control: str
    bounds: tuple[float, float]
    initial: tuple[float, float]
    target: tuple[float, float]
    mesh_size: int = 20
    in_transformed_time: bool = True

    def __post_init__(self) -> None:
        if self.control not in (QUALITY, QUANTITY):
            raise ValueError(f"control must be {QUALITY!r} or {QUANTITY!r}")
        lo, hi = self.bounds
        if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
            raise ValueError(f"need u_min < u_max, got {self.bounds}")
        for name, pt in (("initial", self.initial), ("target", self.target)):
            if len(pt) != 2 or not all(np.isfinite(v) and v > 0 for v in pt):
                raise ValueError(f"{name} must lie in the open positive quadrant, got {pt}")


@dataclass(frozen=True)
class Costate:
    p: float
    q: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.p) and np.isfinite(self.q)):
            raise ValueError("costates must be finite")


@dataclass
class ControlSolution:
    s_grid: np.ndarray
    t_grid: np.ndarray
    states: np.ndarray
    controls: np.ndarray
    switching_times: list
    S_opt: float
    T_opt: float
    nlp_stats: dict
    costates: np.ndarray | None = None


def _kind_terms(p: ModelParams, x: float, u: float, kind: str) -> tuple[float, float]:
    """Transformed denominator D and the effective conversion quantity."""
    if kind == QUALITY:
        return 1.0 + x * x + u * p.xi, p.xi
    if kind == QUANTITY:
        return 1.0 + x * x + p.alpha * u, u
    raise ValueError(f"unknown control kind {kind!r}")


def transformed_rhs(p: ModelParams, s, u: float, kind: str) -> np.ndarray:
    """s-domain vector field with the control substituted per kind."""
    x, y = float(s[0]), float(s[1])
    D, xi_eff = _kind_terms(p, x, u, kind)
    return np.array([
        x * (1.0 - x / p.gamma) * D - x * x * y,
        p.delta * (x * x + xi_eff) * y - D * (p.m * y + p.epsilon * y * y),
    ])


def physical_rhs(p: ModelParams, s, u: float, kind: str) -> np.ndarray:
    """t-domain vector field with the control substituted per kind."""
    x, y = float(s[0]), float(s[1])
    D, xi_eff = _kind_terms(p, x, u, kind)
    return np.array([
        x * (1.0 - x / p.gamma) - x * x * y / D,
        p.delta * (x * x + xi_eff) * y / D - p.m * y - p.epsilon * y * y,
    ])


def hamiltonian(p: ModelParams, s, c: Costate, u: float, kind: str) -> float:
    """H = 1 + p x' + q y' in the transformed domain; affine in u."""
    f = transformed_rhs(p, s, u, kind)
    return 1.0 + c.p * f[0] + c.q * f[1]


def adjoint_rhs(p: ModelParams, s, c: Costate, u: float, kind: str) -> tuple[float, float]:
    """Costate s-derivatives (-dH/dx, -dH/dy) with the control substituted.

    For the quality problem this coincides term-for-term with the displayed
    adjoint system; the quantity problem reuses the same display with the
    control value substituted into the conversion and denominator terms.
    """
    x, y = float(s[0]), float(s[1])
    D, xi_eff = _kind_terms(p, x, u, kind)
    df1dx = (1.0 - 2.0 * x / p.gamma) * D + 2.0 * x * x * (1.0 - x / p.gamma) - 2.0 * x * y
    df1dy = -x * x
    df2dx = 2.0 * p.delta * x * y - 2.0 * x * (p.m * y + p.epsilon * y * y)
    df2dy = p.delta * (x * x + xi_eff) - D * (p.m + 2.0 * p.epsilon * y)
    return (-(c.p * df1dx + c.q * df2dx), -(c.p * df1dy + c.q * df2dy))


def switching_function(p: ModelParams, s, c: Costate, kind: str) -> float:
    """dH/du; u_max is optimal where it is negative, u_min where positive."""
    x, y = float(s[0]), float(s[1])
    if kind == QUALITY:
        return p.xi * (c.p * x * (1.0 - x / p.gamma)
                       - c.q * (p.m * y + p.epsilon * y * y))
    return (c.p * x * p.alpha * (1.0 - x / p.gamma)
            + p.delta * c.q * y - c.q * p.alpha * y * (p.m + p.epsilon * y))


def singular_arc_ratios(p: ModelParams, s, u: float, kind: str) -> tuple[float, float]:
    """The two costate-ratio expressions that coincide on a singular arc.

    Ratio one comes from dH/du = 0, ratio two from d(dH/du)/ds = 0.  Both
    are homogeneous of degree zero in the costate, so they are state-only
    diagnostics.  A vanishing denominator yields NaN for that ratio
    (excluded point).
    """
    x, y = float(s[0]), float(s[1])
    g = p.gamma
    slope = x * (1.0 - x / g)

    def safe_div(num: float, den: float) -> float:
        return num / den if abs(den) > 1e-12 * (1.0 + abs(num)) else float("nan")

    if kind == QUALITY:
        a, xi = u, p.xi
        r1 = safe_div(p.m * y + p.epsilon * y * y, slope)
        axi = 1.0 + a * xi
        num2 = (y / x if x != 0 else float("nan")) * (
            2.0 * x * x * (1.0 - x / g) * (p.delta - p.m - 2.0 * p.epsilon)
            + p.delta * p.epsilon * y * (x * x + xi)) if x != 0 else float("nan")
        den2 = (-axi / g + axi * x / g + x * y - 2.0 * x * x
                + 4.0 * x**3 / g - 2.0 * x**4 / g**2
                - x * y * (p.m + p.epsilon * y))
        r2 = safe_div(num2, den2) if np.isfinite(num2) else float("nan")
        return (r1, r2)

    a, xi = p.alpha, u
    r1 = safe_div(y * (a * (p.m + p.epsilon * y) - p.delta), a * slope)
    num2 = (y / (x * x) if x != 0 else float("nan")) * (
        p.delta * p.epsilon * y * (1.0 + x * x - a * x * x)
        - 2.0 * a * x * x * (p.delta - p.m - p.epsilon * y) * (1.0 - x / g)) \
        if x != 0 else float("nan")
    den2 = (2.0 * a * x * (1.0 - x / g) ** 2
            - (a + p.delta - a * (p.m + p.epsilon * y)) * y)
    r2 = safe_div(num2, den2) if np.isfinite(num2) else float("nan")
    return (r1, r2)


def is_singular_candidate(p: ModelParams, s, u: float, kind: str,
                          tol: float = 1e-3) -> bool:
    r1, r2 = singular_arc_ratios(p, s, u, kind)
    if not (np.isfinite(r1) and np.isfinite(r2)):
        return False
    return abs(r1 - r2) <= tol * (1.0 + abs(r1) + abs(r2))


# ---------------------------------------------------------------------------
# RK4 interval maps


def _rk4_map(p: ModelParams, kind: str, w0: np.ndarray, u: float, h_total: float,
             nsteps: int, transformed: bool, clock: bool = False):
    """Integrate one shooting interval with a frozen control.

    With ``clock=True`` also accumulates the companion time variable by the
    matching RK4 quadrature: dt = D ds in the transformed domain, ds = dt/D
    in the physical domain.
    """
    f = transformed_rhs if transformed else physical_rhs
    w = np.asarray(w0, dtype=float).copy()
    h = h_total / nsteps
    t_inc = 0.0

    def integrand(ww: np.ndarray) -> float:
        D = _kind_terms(p, ww[0], u, kind)[0]
        return D if transformed else 1.0 / D

    for _ in range(nsteps):
        k1 = f(p, w, u, kind)
        k2 = f(p, w + 0.5 * h * k1, u, kind)
        k3 = f(p, w + 0.5 * h * k2, u, kind)
        k4 = f(p, w + h * k3, u, kind)
        if clock:
            t_inc += (h / 6.0) * (integrand(w)
                                  + 2.0 * integrand(w + 0.5 * h * k1)
                                  + 2.0 * integrand(w + 0.5 * h * k2)
                                  + integrand(w + h * k3))
        w = w + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return (w, t_inc) if clock else w


_NSTEPS = 8


def _seed_candidates(problem: ControlProblem, n_controls: int = 7,
                     s_span: float = 8.0, n_dense: int = 1600) -> list[dict]:
    """Constant-control flows ranked by closest approach to the target."""
    p = problem.params
    lo, hi = problem.bounds
    target = np.asarray(problem.target, dtype=float)
    out = []
    for u0 in np.linspace(lo, hi, n_controls):
        w = np.asarray(problem.initial, dtype=float).copy()
        h = s_span / n_dense
        path = [w.copy()]
        for _ in range(n_dense):
            w = _rk4_map(p, problem.control, w, u0, h, 1, problem.in_transformed_time)
            if not np.all(np.isfinite(w)) or np.max(np.abs(w)) > 1e6:
                break
            path.append(w.copy())
        path = np.asarray(path)
        d = np.linalg.norm(path - target, axis=1)
        k = int(np.argmin(d))
        out.append({"u0": float(u0), "dist": float(d[k]),
                    "S0": max(float(k * h), 10.0 * h), "path": path, "h": h})
    out.sort(key=lambda r: r["dist"])
    return out


def _assemble(problem: ControlProblem, z: np.ndarray):
    N = problem.mesh_size
    S = z[0]
    X = np.empty((N + 1, 2))
    X[0] = problem.initial
    X[N] = problem.target
    X[1:N] = z[1:1 + 2 * (N - 1)].reshape(N - 1, 2)
    U = z[1 + 2 * (N - 1):]
    return S, X, U


def _defects(problem: ControlProblem, z: np.ndarray) -> np.ndarray:
    S, X, U = _assemble(problem, z)
    N = problem.mesh_size
    h = S / N
    out = np.empty(2 * N)
    for k in range(N):
        w_end = _rk4_map(problem.params, problem.control, X[k], U[k], h,
                         _NSTEPS, problem.in_transformed_time)
        out[2 * k: 2 * k + 2] = w_end - X[k + 1]
    return out


def solve(problem: ControlProblem) -> ControlSolution:
    """Minimize the transformed duration by direct multiple shooting.

    Decision vector: the duration S, the interior node states, and one
    control value per interval.  Shooting defects are equality constraints;
    the endpoint condition is built in by pinning the last node to the
    target.  Seeds come from constant-control flows ranked by closest
    approach, with restarts across seeds on failure.

    Raises
    ------
    InfeasibleControlError
        If no restart reaches defect norm 1e-7 and endpoint error 1e-6.
    """
    if problem.mesh_size < 20:
        raise ValueError(f"mesh_size must be at least 20, got {problem.mesh_size}")
    N = problem.mesh_size
    p = problem.params
    initial = np.asarray(problem.initial, dtype=float)
    target = np.asarray(problem.target, dtype=float)

    if np.allclose(initial, target, rtol=0.0, atol=1e-12):
        grid = np.zeros(N + 1)
        states = np.tile(initial, (N + 1, 1))
        return ControlSolution(
            s_grid=grid, t_grid=grid.copy(), states=states,
            controls=np.full(N, problem.bounds[0]), switching_times=[],
            S_opt=0.0, T_opt=0.0,
            nlp_stats={"status": "degenerate", "message": "initial equals target",
                       "n_iter": 0, "max_defect": 0.0, "endpoint_err": 0.0})

    lo, hi = problem.bounds
    scale = max(np.max(initial), np.max(target), p.gamma)
    state_hi = 4.0 * scale + 10.0
    bounds = ([(1e-3, 60.0)] + [(0.0, state_hi)] * (2 * (N - 1)) + [(lo, hi)] * N)

    candidates = _seed_candidates(problem)
    best = {"residual": np.inf, "z": None, "res": None}
    tried = 0
    for cand in candidates[:5]:
        tried += 1
        S0 = cand["S0"]
        n_path = len(cand["path"]) - 1
        idx = np.minimum((np.arange(N + 1) * (S0 / cand["h"]) / N).astype(int), n_path)
        X0 = cand["path"][idx]
        z0 = np.concatenate([[S0], X0[1:N].ravel(), np.full(N, cand["u0"])])
        grad = np.zeros(z0.size)
        grad[0] = 1.0
        with warnings.catch_warnings():
            # SLSQP emits clip warnings while probing infeasible corners
            warnings.simplefilter("ignore", RuntimeWarning)
            res = minimize(lambda z: z[0], z0, jac=lambda z: grad,
                           bounds=bounds, method="SLSQP",
                           constraints=[{"type": "eq",
                                         "fun": lambda z: _defects(problem, z)}],
                           options={"maxiter": _MAX_ITER, "ftol": 1e-12})
        max_defect = float(np.max(np.abs(_defects(problem, res.x))))
        if max_defect < best["residual"]:
            best = {"residual": max_defect, "z": res.x.copy(), "res": res}
        if max_defect <= _DEFECT_TOL:
            break
    else:
        raise InfeasibleControlError(
            "no seed produced a feasible multiple-shooting solution; the "
            "target may be unreachable within the control bounds",
            diagnostics={"best_defect": best["residual"],
                         "seeds_tried": tried,
                         "best_endpoint_gap": (None if best["z"] is None else
                                               _endpoint_gap(problem, best["z"])),
                         "closest_approach": candidates[0]["dist"]})

    res = best["res"]
    z = best["z"]
    S, X, U = _assemble(problem, z)
    max_defect = best["residual"]
    endpoint_err = _endpoint_gap(problem, z)
    if endpoint_err > _ENDPOINT_TOL:
        raise InfeasibleControlError(
            "endpoint equality not met at the converged iterate",
            diagnostics={"best_defect": max_defect, "endpoint_err": endpoint_err,
                         "seeds_tried": tried})

    h = S / N
    s_grid = np.linspace(0.0, S, N + 1)
    t_grid = np.zeros(N + 1)
    if problem.in_transformed_time:
        for k in range(N):
            _, t_inc = _rk4_map(p, problem.control, X[k], U[k], h, _NSTEPS,
                                True, clock=True)
            t_grid[k + 1] = t_grid[k] + t_inc
        S_opt, T_opt = float(S), float(t_grid[-1])
    else:
        # physical-time mesh: the decision variable is already the duration
        t_grid = s_grid.copy()
        s_acc = np.zeros(N + 1)
        for k in range(N):
            _, s_inc = _rk4_map(p, problem.control, X[k], U[k], h, _NSTEPS,
                                False, clock=True)
            s_acc[k + 1] = s_acc[k] + s_inc
        s_grid = s_acc
        S_opt, T_opt = float(s_acc[-1]), float(S)

    switches = []
    for k in range(1, N):
        if abs(U[k] - U[k - 1]) > 0.25 * (hi - lo):
            switches.append(float(s_grid[k]))

    notes = []
    if res is not None and res.status not in (0,):
        notes.append(f"optimizer stopped with status {res.status}: {res.message}")
    stats = {"status": "converged", "n_iter": int(getattr(res, "nit", -1)),
             "objective": S_opt, "max_defect": max_defect,
             "endpoint_err": endpoint_err, "seeds_tried": tried,
             "slsqp_status": int(res.status), "warnings": notes,
             "bounds": [lo, hi], "mesh_size": N}
    return ControlSolution(s_grid=s_grid, t_grid=t_grid, states=X, controls=U,
                           switching_times=switches, S_opt=S_opt, T_opt=T_opt,
                           nlp_stats=stats)


def _endpoint_gap(problem: ControlProblem, z: np.ndarray) -> float:
    S, X, U = _assemble(problem, z)
    w_end = _rk4_map(problem.params, problem.control, X[problem.mesh_size - 1],
                     U[-1], S / problem.mesh_size, _NSTEPS,
                     problem.in_transformed_time)
    return float(np.linalg.norm(w_end - np.asarray(problem.target)))


# ---------------------------------------------------------------------------
# optimality verification


def _fd_jac(fun, x0: np.ndarray, scale: float = 1e-6) -> np.ndarray:
    f0 = np.atleast_1d(fun(x0))
    J = np.empty((f0.size, x0.size))
    for j in range(x0.size):
        h = scale * (1.0 + abs(x0[j]))
        xp, xm = x0.copy(), x0.copy()
        xp[j] += h
        xm[j] -= h
        J[:, j] = (np.atleast_1d(fun(xp)) - np.atleast_1d(fun(xm))) / (2.0 * h)
    return J


def _reconstruct_costates(problem: ControlProblem, sol: ControlSolution):
    """Costates from the discrete optimality system of the shooting NLP.

    Unknowns are the multipliers of the defect constraints, one 2-vector per
    interval; by the discrete adjoint recursion the multiplier of interval k
    is the costate at node k+1.  Rows: stationarity w.r.t. interior node
    states, w.r.t. S (which carries the unit objective gradient), and
    w.r.t. every control strictly inside its bounds.  Solved by least
    squares; the residual is the KKT stationarity error.
    """
    p = problem.params
    N = problem.mesh_size
    S, X, U = sol.S_opt, sol.states, sol.controls
    h = S / N
    lo, hi = problem.bounds
    transformed = problem.in_transformed_time

    A = [_fd_jac(lambda w, k=k: _rk4_map(p, problem.control, w, U[k], h,
                                         _NSTEPS, transformed), X[k].copy())
         for k in range(N)]
    B = [_fd_jac(lambda u, k=k: _rk4_map(p, problem.control, X[k], u[0], h,
                                         _NSTEPS, transformed),
                 np.array([U[k]])).ravel() for k in range(N)]
    C = [_fd_jac(lambda ss, k=k: _rk4_map(p, problem.control, X[k], U[k],
                                          ss[0] / N, _NSTEPS, transformed),
                 np.array([S])).ravel() for k in range(N)]

    n = 2 * N
    rows, rhs = [], []
    for k in range(1, N):
        for comp in range(2):
            row = np.zeros(n)
            row[2 * k: 2 * k + 2] = A[k][:, comp]
            row[2 * (k - 1) + comp] -= 1.0
            rows.append(row)
            rhs.append(0.0)
    row = np.zeros(n)
    for k in range(N):
        row[2 * k: 2 * k + 2] = C[k]
    rows.append(row)
    rhs.append(-1.0)
    interior = 0
    for k in range(N):
        if U[k] - lo > 1e-6 * (hi - lo) and hi - U[k] > 1e-6 * (hi - lo):
            row = np.zeros(n)
            row[2 * k: 2 * k + 2] = B[k]
            rows.append(row)
            rhs.append(0.0)
            interior += 1

    M = np.asarray(rows)
    b = np.asarray(rhs)
    lam_flat, *_ = np.linalg.lstsq(M, b, rcond=None)
    residual = float(np.max(np.abs(M @ lam_flat - b)))
    lam = lam_flat.reshape(N, 2)
    costates = np.empty((N + 1, 2))
    costates[1:] = lam
    costates[0] = A[0].T @ lam[0]
    return costates, residual, interior


def verify_pmp(solution: ControlSolution, problem: ControlProblem,
               sigma_tol: float = 1e-4) -> dict:
    """Check the bang-bang law of the minimum principle on a solution.

    Reconstructs costates from the converged NLP, evaluates the switching
    function per interval, and scores consistency: u at its upper bound
    where sigma < -tol, at its lower bound where sigma > +tol.  The strict
    fraction counts every interval with |sigma| > tol; the reported fraction
    additionally excludes intervals adjacent to a detected switch, where the
    frozen-control discretization cannot resolve the crossing.  Also reports
    the terminal Hamiltonian (zero for a free-horizon optimum), the minimum
    costate norm, and a finite-difference audit of the adjoint equations
    along the arc.
    """
    p = problem.params
    N = problem.mesh_size
    lo, hi = problem.bounds
    if solution.S_opt == 0.0:
        return {"consistency_fraction": 1.0, "strict_fraction": 1.0,
                "n_checked": 0, "warnings": ["degenerate zero-duration solution"],
                "costate_norm_min": 0.0, "kkt_residual": 0.0}

    costates, kkt_residual, n_interior = _reconstruct_costates(problem, solution)
    solution.costates = costates
    X, U = solution.states, solution.controls

    sigma = np.array([switching_function(p, X[k], Costate(*costates[k + 1]),
                                         problem.control) for k in range(N)])
    scale = max(float(np.max(np.abs(sigma))), 1e-30)
    tol = sigma_tol * scale

    near_switch = np.zeros(N, dtype=bool)
    for k in range(1, N):
        if abs(U[k] - U[k - 1]) > 0.25 * (hi - lo):
            near_switch[max(k - 1, 0)] = near_switch[min(k, N - 1)] = True
    for k in range(N - 1):
        if sigma[k] * sigma[k + 1] < 0:
            near_switch[k] = near_switch[k + 1] = True

    def consistent(k: int) -> bool | None:
        if sigma[k] < -tol:
            return abs(U[k] - hi) <= 1e-6 * (hi - lo) + 1e-12
        if sigma[k] > tol:
            return abs(U[k] - lo) <= 1e-6 * (hi - lo) + 1e-12
        return None

    strict_hits, strict_n, hits, n_checked = 0, 0, 0, 0
    for k in range(N):
        ok = consistent(k)
        if ok is None:
            continue
        strict_n += 1
        strict_hits += ok
        if not near_switch[k]:
            n_checked += 1
            hits += ok

    fd_err = 0.0
    for k in range(0, N, max(N // 10, 1)):
        c = Costate(*costates[k + 1])
        analytic = np.array(adjoint_rhs(p, X[k], c, U[k], problem.control))

        def negH(w):
            return -hamiltonian(p, w, c, U[k], problem.control)

        fd = _fd_jac(negH, X[k].copy()).ravel()
        denom = max(float(np.max(np.abs(analytic))), 1e-12)
        fd_err = max(fd_err, float(np.max(np.abs(analytic - fd))) / denom)

    H_end = hamiltonian(p, X[N], Costate(*costates[N]), U[N - 1], problem.control)
    warnings = []
    if n_interior == 0 and not solution.switching_times:
        warnings.append("no interior controls and no switches: costate scale "
                        "fixed only by the duration row")
    return {
        "consistency_fraction": hits / n_checked if n_checked else 1.0,
        "strict_fraction": strict_hits / strict_n if strict_n else 1.0,
        "n_checked": n_checked,
        "n_strict": strict_n,
        "kkt_residual": kkt_residual,
        "costate_norm_min": float(np.min(np.linalg.norm(costates, axis=1))),
        "hamiltonian_end": float(H_end),
        "adjoint_fd_max_rel_err": fd_err,
        "sigma": sigma,
        "warnings": warnings,
    }


def resimulate_physical(problem: ControlProblem, solution: ControlSolution,
                        nsteps_per_interval: int = 200) -> dict:
    """Re-run the solved control in physical time and measure target error.

    The piecewise-constant schedule is mapped through t(s): interval k is
    applied on [t_k, t_{k+1}).  Agreement certifies the time
    reparameterization round trip.
    """
    p = problem.params
    w = np.asarray(problem.initial, dtype=float).copy()
    for k in range(problem.mesh_size):
        dt = solution.t_grid[k + 1] - solution.t_grid[k]
        if dt <= 0:
            continue
        w = _rk4_map(p, problem.control, w, solution.controls[k], dt,
                     nsteps_per_interval, transformed=False)
    err = float(np.linalg.norm(w - np.asarray(problem.target)))
    return {"final_state": w, "target_error": err, "T": float(solution.t_grid[-1])}


def constant_control_solution(problem: ControlProblem, u_value: float,
                              S: float | None = None) -> ControlSolution:
    """Feasible-by-construction arc with a frozen control, for negative tests.

    Integrates from the initial point for the duration that comes closest to
    the target (or a given S) and packages the trajectory in solution form.
    Endpoint error is recorded in ``nlp_stats``; no optimality is claimed.
    """
    p = problem.params
    N = problem.mesh_size
    if S is None:
        cands = _seed_candidates(problem, n_controls=1, s_span=8.0)
        path, h = cands[0]["path"], cands[0]["h"]
        w0 = np.asarray(problem.initial, dtype=float)
        w = w0.copy()
        best_k, best_d = 1, np.inf
        for k in range(1, len(path)):
            d = float(np.linalg.norm(path[k] - np.asarray(problem.target)))
            if d < best_d:
                best_k, best_d = k, d
        S = max(best_k * h, 10 * h)
    X = np.empty((N + 1, 2))
    X[0] = problem.initial
    t_grid = np.zeros(N + 1)
    h = S / N
    for k in range(N):
        X[k + 1], t_inc = _rk4_map(p, problem.control, X[k], u_value, h,
                                   _NSTEPS, problem.in_transformed_time, clock=True)
        t_grid[k + 1] = t_grid[k] + t_inc
    err = float(np.linalg.norm(X[N] - np.asarray(problem.target)))
    return ControlSolution(
        s_grid=np.linspace(0.0, S, N + 1), t_grid=t_grid, states=X,
        controls=np.full(N, float(u_value)), switching_times=[],
        S_opt=float(S), T_opt=float(t_grid[-1]),
        nlp_stats={"status": "constant-control", "endpoint_err": err,
                   "max_defect": 0.0})


def calibrate_bounds(problem: ControlProblem, target_T: float,
                     rel_tol: float = 0.1,
                     candidates: list[tuple[float, float]] | None = None) -> dict:
    """Search a small set of bound choices for one matching a reported time.

    Solves the problem under each candidate bound pair in order and returns
    the first whose physical time lands within ``rel_tol`` of ``target_T``,
    together with the full attempt log.
    """
    lo, hi = problem.bounds
    if candidates is None:
        candidates = [(lo, hi), (lo, 1.5 * hi), (lo, 2.0 * hi),
                      (0.5 * lo, hi), (0.25 * lo, 2.0 * hi)]
    attempts = []
    for blo, bhi in candidates:
        trial = ControlProblem(params=problem.params, control=problem.control,
                               bounds=(blo, bhi), initial=problem.initial,
                               target=problem.target, mesh_size=problem.mesh_size,
                               in_transformed_time=problem.in_transformed_time)
        try:
            sol = solve(trial)
        except InfeasibleControlError as exc:
            attempts.append({"bounds": [blo, bhi], "status": "infeasible",
                             "diagnostics": exc.diagnostics})
            continue
        rel = abs(sol.T_opt - target_T) / abs(target_T)
        attempts.append({"bounds": [blo, bhi], "T_opt": sol.T_opt, "rel_err": rel})
        if rel <= rel_tol:
            return {"bounds": (blo, bhi), "solution": sol, "rel_err": rel,
                    "attempts": attempts}
    return {"bounds": None, "solution": None, "attempts": attempts}
