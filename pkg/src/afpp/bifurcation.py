"""Bifurcation detection: analytic criteria, continuation, and sweeps.

Analytic results cover the predator-free point E1 (stability exchange in xi
with explicit nondegeneracy quantities) and the prey-free point E2 (creation
threshold in xi).  Numerical machinery covers one-parameter pseudo-arclength
continuation of coexistence equilibria with fold, focus-node and
eigenvalue-crossing (Hopf candidate) events, an independent double-root
oracle built on the polynomial resultant, and quasi-static hysteresis sweeps
under a time-varying competition strength.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .equilibria import (
    Equilibrium,
    classify,
    find_interior_equilibria,
    interior_quintic,
)
from .model import ModelParams, denominator
from .simulation import Trajectory, integrate_nonautonomous, sine_eps_schedule

__all__ = [
    "BifurcationEvent",
    "BranchPoint",
    "SweepResult",
    "TOL_BIF",
    "DegenerateParameterError",
    "transcritical_xi_critical",
    "transcritical_sotomayor",
    "saddlenode_xi_critical",
    "saddlenode_sotomayor",
    "e1_second_eigenvalue",
    "bracket_transcritical",
    "bracket_e2_creation",
    "continue_branch",
    "branch_fold_events",
    "branch_focus_node_events",
    "detect_hopf",
    "resultant_double_root_params",
    "hysteresis_sweep",
    "detect_sweep_jumps",
]

# parameter-bracket width for every reported bifurcation event
TOL_BIF = 1e-8


class DegenerateParameterError(ValueError):
    """The analytic criterion's denominator vanishes for these parameters."""


@dataclass(frozen=True)
class BifurcationEvent:
    """A located bifurcation with its defining sign-change bracket.

    ``kind`` is one of Transcritical, SaddleNode, Hopf, Fold,
    FocusNodeTransition.  ``bracket`` straddles the zero of the event's test
    function (eigenvalue real part, or the branch tangent's parameter
    component for folds) with width at most 1e-8.
    """

    kind: str
    param_name: str
    param_value: float
    location: tuple[float, float]
    bracket: tuple[float, float]
    diagnostics: dict = field(default_factory=dict)


@dataclass(frozen=True)
class BranchPoint:
    param_value: float
    equilibrium: Equilibrium
    branch_id: int
    tangent: tuple[float, float, float]


@dataclass
class SweepResult:
    """Outcome of a periodic parameter sweep.

    ``loop_area_proxy`` is the shoelace signed area of the (eps, x) curve
    over the final full cycle; the physical memory loop traverses it
    counterclockwise, so a genuine loop gives a positive value.
    """

    times: np.ndarray
    states: np.ndarray
    eps_schedule: np.ndarray
    loop_area_proxy: float
    period: float
    trajectory: Trajectory


# ---------------------------------------------------------------------------
# analytic criteria at E1 and E2


def _require_nondegenerate(p: ModelParams) -> None:
    if abs(p.delta - p.m * p.alpha) < 1e-14 * max(p.delta, 1.0):
        raise DegenerateParameterError(
            f"criterion undefined at delta = m*alpha (delta={p.delta}, "
            f"m*alpha={p.m * p.alpha})")


def transcritical_xi_critical(p: ModelParams) -> float:
    """Food quantity at which E1 = (gamma, 0) exchanges stability.

    xi* = (m (1 + gamma^2) - delta gamma^2) / (delta - m alpha).  The second
    eigenvalue of the Jacobian at E1 vanishes exactly there.  Nondegeneracy
    of the exchange is asserted through the directional quantities of
    :func:`transcritical_sotomayor`.

    Raises
    ------
    DegenerateParameterError
        If delta = m*alpha, or if a nondegeneracy quantity vanishes.
    """
    _require_nondegenerate(p)
    xi_star = (p.m * (1.0 + p.gamma**2) - p.delta * p.gamma**2) / (p.delta - p.m * p.alpha)
    q = transcritical_sotomayor(p, xi_star)
    if abs(q["W_DHxi_V"]) <= 1e-12 or abs(q["W_D2H_VV"]) <= 1e-12:
        raise DegenerateParameterError(
            f"stability exchange at xi*={xi_star} is degenerate: {q}")
    return xi_star


def transcritical_sotomayor(p: ModelParams, xi: float) -> dict:
    """Directional nondegeneracy quantities for the exchange at E1.

    Uses the null eigenvectors V = (1, -(1 + alpha*xi + gamma^2)/gamma^2) and
    W = (0, 1) of the Jacobian at (gamma, 0).  Returns W.H_xi (zero by
    structure: the xi-derivative of the field vanishes on y = 0), W.[DH_xi V]
    and W.[D^2H (V,V)].
    """
    g = p.gamma
    D1 = 1.0 + g * g + p.alpha * xi
    v2 = -D1 / (g * g)
    w_dhxi_v = v2 * p.delta * (1.0 + (1.0 - p.alpha) * g * g) / D1**2
    w_d2h_vv = (2.0 * v2 * 2.0 * p.delta * g * (1.0 + p.alpha * xi - xi) / D1**2
                + v2 * v2 * (-2.0 * p.epsilon))
    return {
        "V": (1.0, v2),
        "W": (0.0, 1.0),
        "W_Hxi": 0.0,
        "W_DHxi_V": w_dhxi_v,
        "W_D2H_VV": w_d2h_vv,
    }


def saddlenode_xi_critical(p: ModelParams) -> float:
    """Food quantity at which the prey-free point E2 is created.

    xi* = m / (delta - m alpha); the existence quantity
    delta*xi - m(1 + alpha*xi) crosses zero there, E2 entering the positive
    quadrant through the origin.  The quadratic quantity W.[D^2H(V,V)] = -2 eps
    is always nonzero; W.H_xi is reported by :func:`saddlenode_sotomayor` and
    vanishes at xi* itself (see its docstring).
    """
    _require_nondegenerate(p)
    xi_star = p.m / (p.delta - p.m * p.alpha)
    if xi_star <= 0:
        raise DegenerateParameterError(
            f"no positive creation threshold (xi* = {xi_star})")
    return xi_star


def saddlenode_sotomayor(p: ModelParams, xi: float) -> dict:
    """Directional quantities at E2 with V = W = (0, 1).

    W.H_xi = delta (delta*xi - m(1+alpha*xi)) / (eps (1+alpha*xi)^3): this is
    proportional to the existence quantity, so it is nonzero only away from
    the critical point and vanishes AT xi*; the record carries a
    ``degenerate_at_critical`` marker for that case.  The first-order
    directional quantity W.[DH_xi V] = delta/(1+alpha*xi)^2 and the quadratic
    one W.[D^2H(V,V)] = -2 eps are structurally nonzero.
    """
    D0 = 1.0 + p.alpha * xi
    phi1 = p.delta * xi - p.m * D0
    w_hxi = p.delta * phi1 / (p.epsilon * D0**3)
    return {
        "V": (0.0, 1.0),
        "W": (0.0, 1.0),
        "W_Hxi": w_hxi,
        "W_DHxi_V": p.delta / D0**2,
        "W_D2H_VV": -2.0 * p.epsilon,
        "degenerate_at_critical": bool(abs(phi1) <= 1e-12 * (1.0 + abs(p.delta * xi))),
    }


def e1_second_eigenvalue(p: ModelParams, xi: float) -> float:
    """Nontrivial eigenvalue of the Jacobian at E1 as a function of xi."""
    g2 = p.gamma**2
    A = 1.0 + p.alpha * xi
    return ((p.delta - p.m) * g2 + p.delta * xi - p.m * A) / (g2 + A)


def _bisect_sign_change(f, lo: float, hi: float, tol: float = TOL_BIF,
                        max_iter: int = 200) -> tuple[float, float]:
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo, lo
    if fhi == 0.0:
        return hi, hi
    if flo * fhi > 0:
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid, mid
        if flo * fm < 0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    return lo, hi


def bracket_transcritical(p: ModelParams, xi_lo: float, xi_hi: float) -> BifurcationEvent:
    """Numerically bracket the zero crossing of E1's nontrivial eigenvalue."""
    lo, hi = _bisect_sign_change(lambda xi: e1_second_eigenvalue(p, xi), xi_lo, xi_hi)
    xi_star = 0.5 * (lo + hi)
    return BifurcationEvent(
        kind="Transcritical", param_name="xi", param_value=xi_star,
        location=(p.gamma, 0.0), bracket=(lo, hi),
        diagnostics={"sotomayor": transcritical_sotomayor(p, xi_star),
                     "eigenvalue_at_bracket": (e1_second_eigenvalue(p, lo),
                                               e1_second_eigenvalue(p, hi))})


def bracket_e2_creation(p: ModelParams, xi_lo: float, xi_hi: float) -> BifurcationEvent:
    """Numerically bracket the sign change of E2's existence quantity."""

    def phi1(xi: float) -> float:
        return p.delta * xi - p.m * (1.0 + p.alpha * xi)

    lo, hi = _bisect_sign_change(phi1, xi_lo, xi_hi)
    xi_star = 0.5 * (lo + hi)
    return BifurcationEvent(
        kind="SaddleNode", param_name="xi", param_value=xi_star,
        location=(0.0, 0.0), bracket=(lo, hi),
        diagnostics={"sotomayor": saddlenode_sotomayor(p, xi_star),
                     "phi1_at_bracket": (phi1(lo), phi1(hi))})


# ---------------------------------------------------------------------------
# reduced equilibrium system and continuation


def _reduced_F(p: ModelParams, x: float, y: float) -> np.ndarray:
    """Nullcline-intersection equations (prey eq / x, predator eq / y)."""
    D = denominator(p, x)
    return np.array([
        (1.0 - x / p.gamma) * D - x * y,
        p.delta * (x * x + p.xi) / D - p.m - p.epsilon * y,
    ])


def _reduced_F_state_jac(p: ModelParams, x: float, y: float) -> np.ndarray:
    D = denominator(p, x)
    axi = p.alpha * p.xi
    return np.array([
        [-D / p.gamma + (1.0 - x / p.gamma) * 2.0 * x - y, -x],
        [2.0 * p.delta * x * (1.0 + axi - p.xi) / D**2, -p.epsilon],
    ])


def _with_param(p: ModelParams, name: str, value: float) -> ModelParams:
    return p.with_updates(**{name: float(value), "allow_nonfeasible": True})


def _full_jac3(p: ModelParams, name: str, x: float, y: float, mu: float) -> np.ndarray:
    """Jacobian of the reduced system w.r.t. (x, y, mu); mu column by FD."""
    pm = _with_param(p, name, mu)
    J = np.empty((2, 3))
    J[:, :2] = _reduced_F_state_jac(pm, x, y)
    h = 1e-6 * (1.0 + abs(mu))
    Fp = _reduced_F(_with_param(p, name, mu + h), x, y)
    Fm = _reduced_F(_with_param(p, name, mu - h), x, y)
    J[:, 2] = (Fp - Fm) / (2.0 * h)
    return J


def _tangent(p: ModelParams, name: str, z: np.ndarray, prev: np.ndarray | None) -> np.ndarray:
    J = _full_jac3(p, name, z[0], z[1], z[2])
    _, _, vh = np.linalg.svd(J)
    t = vh[-1]
    t /= np.linalg.norm(t)
    if prev is not None and np.dot(t, prev) < 0:
        t = -t
    return t


def _corrector(p: ModelParams, name: str, z_pred: np.ndarray, t: np.ndarray,
               tol: float = 1e-11, max_iter: int = 12) -> np.ndarray | None:
    """Newton iteration on (F = 0, t . (z - z_pred) = 0)."""
    z = z_pred.copy()
    for _ in range(max_iter):
        pm = _with_param(p, name, z[2])
        F = _reduced_F(pm, z[0], z[1])
        g = np.concatenate([F, [np.dot(t, z - z_pred)]])
        if np.max(np.abs(g[:2])) < tol and abs(g[2]) < 1e-9 * (1.0 + np.linalg.norm(z)):
            return z
        Jfull = np.vstack([_full_jac3(p, name, z[0], z[1], z[2]), t])
        try:
            dz = np.linalg.solve(Jfull, -g)
        except np.linalg.LinAlgError:
            return None
        z = z + dz
        if not np.all(np.isfinite(z)) or z[0] <= 0 or z[1] < -1e-9:
            return None
    pm = _with_param(p, name, z[2])
    if np.max(np.abs(_reduced_F(pm, z[0], z[1]))) < tol:
        return z
    return None


def continue_branch(p: ModelParams, param_name: str, prange: tuple[float, float],
                    seed: Equilibrium, max_points: int = 20000) -> list[BranchPoint]:
    """Pseudo-arclength continuation of a coexistence branch across a range.

    Starts from ``seed`` (a polished equilibrium at one end of ``prange``),
    follows the nullcline-intersection system through folds, classifies every
    accepted point, and stops when the parameter leaves the range or the
    adaptive step underflows (12 halvings from the current step).  A
    truncation notice is attached to the last point's equilibrium flags in
    the underflow case.

    Step policy: initial step 1e-4 of the range width, growth factor 1.3 on
    success, halving on corrector failure.  The step cap is recomputed each
    step so that the parameter advances by at most 1/50 of the range and the
    state moves by at most 5 percent of its current scale; the arclength
    coordinate mixes state and parameter, so a cap in arclength alone would
    crawl on state-dominated segments.
    """
    lo, hi = float(min(prange)), float(max(prange))
    width = hi - lo
    z = np.array([seed.x, seed.y, lo])
    pm = _with_param(p, param_name, z[2])
    if np.max(np.abs(_reduced_F(pm, z[0], z[1]))) > 1e-7:
        raise ValueError("seed is not a polished interior equilibrium at range start")

    def step_cap(zz: np.ndarray, tt: np.ndarray) -> float:
        cap_state = 0.05 * (1.0 + abs(zz[0]) + abs(zz[1]))
        tmu = abs(tt[2])
        return min(cap_state, (width / 50.0) / tmu) if tmu > 1e-12 else cap_state

    h = 1e-4 * width
    t = _tangent(pm, param_name, z, None)
    if t[2] < 0:
        t = -t

    points: list[BranchPoint] = []

    def record(zz: np.ndarray, tt: np.ndarray, note: str | None = None) -> None:
        pmm = _with_param(p, param_name, zz[2])
        eq = classify(pmm, Equilibrium(x=zz[0], y=max(zz[1], 0.0), kind="interior"))
        if note:
            eq.flags["notice"] = note
        points.append(BranchPoint(param_value=float(zz[2]), equilibrium=eq,
                                  branch_id=0, tangent=tuple(tt)))

    record(z, t)
    halvings_budget = 12
    while len(points) < max_points:
        stepped = False
        h_try = min(h, step_cap(z, t))
        for _ in range(halvings_budget + 1):
            z_pred = z + h_try * t
            z_new = _corrector(p, param_name, z_pred, t)
            if z_new is not None:
                stepped = True
                break
            h_try *= 0.5
        if not stepped:
            points[-1].equilibrium.flags["notice"] = "truncated: continuation step underflow"
            break

        if z_new[2] > hi or z_new[2] < lo:
            boundary = hi if z_new[2] > hi else lo
            z_cut = _newton_fixed_param(p, param_name, boundary, z[:2])
            if z_cut is not None:
                t = _tangent(_with_param(p, param_name, boundary), param_name,
                             np.array([*z_cut, boundary]), t)
                record(np.array([*z_cut, boundary]), t)
            break

        pm_new = _with_param(p, param_name, z_new[2])
        t_new = _tangent(pm_new, param_name, z_new, t)
        record(z_new, t_new)
        z, t = z_new, t_new
        h = h_try * 1.3
    else:
        points[-1].equilibrium.flags["notice"] = "truncated: point budget exhausted"
    return points


def _newton_fixed_param(p: ModelParams, name: str, mu: float,
                        w0: np.ndarray, tol: float = 1e-12) -> np.ndarray | None:
    pm = _with_param(p, name, mu)
    w = np.asarray(w0, dtype=float).copy()
    for _ in range(30):
        F = _reduced_F(pm, w[0], w[1])
        if np.max(np.abs(F)) < tol:
            return w
        try:
            dw = np.linalg.solve(_reduced_F_state_jac(pm, w[0], w[1]), -F)
        except np.linalg.LinAlgError:
            return None
        w = w + dw
        if not np.all(np.isfinite(w)) or w[0] <= 0:
            return None
    return w if np.max(np.abs(_reduced_F(pm, w[0], w[1]))) < 1e-9 else None


def _fold_polish(p: ModelParams, name: str, z0: np.ndarray) -> np.ndarray | None:
    """Newton on (F = 0, det dF/d(x,y) = 0) with unknowns (x, y, mu)."""

    def G(z: np.ndarray) -> np.ndarray:
        pm = _with_param(p, name, z[2])
        F = _reduced_F(pm, z[0], z[1])
        d = np.linalg.det(_reduced_F_state_jac(pm, z[0], z[1]))
        return np.array([F[0], F[1], d])

    z = z0.copy()
    for _ in range(40):
        g = G(z)
        if np.max(np.abs(g)) < 1e-12:
            return z
        J = np.empty((3, 3))
        for j in range(3):
            h = 1e-7 * (1.0 + abs(z[j]))
            zp, zm = z.copy(), z.copy()
            zp[j] += h
            zm[j] -= h
            J[:, j] = (G(zp) - G(zm)) / (2.0 * h)
        try:
            dz = np.linalg.solve(J, -g)
        except np.linalg.LinAlgError:
            return None
        z = z + dz
        if not np.all(np.isfinite(z)):
            return None
    return z if np.max(np.abs(G(z))) < 1e-9 else None


def _arclength_bisect(p: ModelParams, name: str, za: np.ndarray, ta: np.ndarray,
                      zb: np.ndarray, test, tol: float = TOL_BIF):
    """Shrink a sign change of ``test`` between consecutive branch points.

    Walks predictor-corrector midpoints until the parameter gap is at most
    ``tol``; returns (z_lo, z_hi) straddling the zero in arclength order.
    """
    fa = test(za)
    for _ in range(120):
        if abs(zb[2] - za[2]) <= tol:
            break
        mid_pred = 0.5 * (za + zb)
        zm = _corrector(p, name, mid_pred, ta)
        if zm is None:
            break
        fm = test(zm)
        if fa * fm <= 0:
            zb = zm
        else:
            za, fa = zm, fm
    return za, zb


def branch_fold_events(p: ModelParams, param_name: str,
                       branch: list[BranchPoint]) -> list[BifurcationEvent]:
    """Folds along a branch: sign changes of the tangent's parameter component.

    Each detection is polished by a bordered Newton solve for the exact
    turning point and reported with an arclength-refined parameter bracket.
    """
    events: list[BifurcationEvent] = []
    for a, b in zip(branch[:-1], branch[1:]):
        ta, tb = a.tangent[2], b.tangent[2]
        if ta == 0.0 or ta * tb >= 0:
            continue
        za = np.array([a.equilibrium.x, a.equilibrium.y, a.param_value])
        zb = np.array([b.equilibrium.x, b.equilibrium.y, b.param_value])
        z_f = _fold_polish(p, param_name, 0.5 * (za + zb))
        if z_f is None:
            z_f = 0.5 * (za + zb)
        zlo, zhi = _arclength_bisect(
            p, param_name, za, np.asarray(a.tangent), zb,
            lambda z: _tangent(_with_param(p, param_name, z[2]), param_name, z,
                               np.asarray(a.tangent))[2])
        blo, bhi = sorted((float(zlo[2]), float(zhi[2])))
        blo, bhi = min(blo, z_f[2]), max(bhi, z_f[2])
        if bhi - blo > TOL_BIF:
            blo, bhi = z_f[2] - TOL_BIF / 2, z_f[2] + TOL_BIF / 2
        events.append(BifurcationEvent(
            kind="Fold", param_name=param_name, param_value=float(z_f[2]),
            location=(float(z_f[0]), float(z_f[1])), bracket=(blo, bhi),
            diagnostics={"tangent_param_components": (ta, tb)}))
    return events


def _eig_at(p: ModelParams, name: str, z: np.ndarray) -> np.ndarray:
    from .model import jacobian

    pm = _with_param(p, name, z[2])
    return np.linalg.eigvals(jacobian(pm, (z[0], max(z[1], 0.0))))


def branch_focus_node_events(p: ModelParams, param_name: str,
                             branch: list[BranchPoint]) -> list[BifurcationEvent]:
    """Real-to-complex eigenvalue transitions along a branch.

    Test function is the Jacobian discriminant tr^2 - 4 det; these events mark
    focus/node changes and are never promoted to Hopf points.
    """

    def discr(z: np.ndarray) -> float:
        from .model import jacobian

        pm = _with_param(p, param_name, z[2])
        J = jacobian(pm, (z[0], max(z[1], 0.0)))
        return float(np.trace(J) ** 2 - 4.0 * np.linalg.det(J))

    events: list[BifurcationEvent] = []
    for a, b in zip(branch[:-1], branch[1:]):
        za = np.array([a.equilibrium.x, a.equilibrium.y, a.param_value])
        zb = np.array([b.equilibrium.x, b.equilibrium.y, b.param_value])
        da, db = discr(za), discr(zb)
        if da == 0.0 or da * db >= 0:
            continue
        zlo, zhi = _arclength_bisect(p, param_name, za, np.asarray(a.tangent), zb, discr)
        mu = 0.5 * (zlo[2] + zhi[2])
        events.append(BifurcationEvent(
            kind="FocusNodeTransition", param_name=param_name,
            param_value=float(mu),
            location=(float(0.5 * (zlo[0] + zhi[0])), float(0.5 * (zlo[1] + zhi[1]))),
            bracket=(float(min(zlo[2], zhi[2])), float(max(zlo[2], zhi[2]))),
            diagnostics={"discriminant_at_bracket": (da, db)}))
    return events


# ---------------------------------------------------------------------------
# Hopf candidates across all coexistence branches in a parameter range


def _linked_grid_branches(p: ModelParams, param_name: str, lo: float, hi: float,
                          n_grid: int) -> list[list[tuple[float, Equilibrium]]]:
    """Track coexistence equilibria across a parameter grid by nearest-x linking."""
    grid = np.linspace(lo, hi, n_grid)
    chains: list[list[tuple[float, Equilibrium]]] = []
    open_chains: list[list[tuple[float, Equilibrium]]] = []
    for mu in grid:
        eqs = find_interior_equilibria(_with_param(p, param_name, mu))
        used = [False] * len(eqs)
        next_open: list[list[tuple[float, Equilibrium]]] = []
        for chain in open_chains:
            x_prev = chain[-1][1].x
            best, best_d = None, np.inf
            for i, e in enumerate(eqs):
                if not used[i] and abs(e.x - x_prev) < best_d:
                    best, best_d = i, abs(e.x - x_prev)
            if best is not None and best_d <= 0.35 * (1.0 + x_prev):
                used[best] = True
                chain.append((float(mu), eqs[best]))
                next_open.append(chain)
            else:
                chains.append(chain)
        for i, e in enumerate(eqs):
            if not used[i]:
                next_open.append([(float(mu), e)])
        open_chains = next_open
    chains.extend(open_chains)
    return [c for c in chains if len(c) >= 2]


def detect_hopf(p: ModelParams, param_name: str, prange: tuple[float, float],
                n_grid: int = 400, tol: float = TOL_BIF) -> list[BifurcationEvent]:
    """Zero crossings of the complex pair's real part along coexistence branches.

    Branches are tracked on a dense grid with nearest-neighbor linking so that
    branches absent at the range start are still examined.  An event is
    reported only when the eigenvalues are complex on both sides of the
    bracket; the crossing is bisected in the parameter to width 1e-8.  These
    are Hopf candidates: no claim of super- or subcriticality is made.
    Returns an empty list when no branch carries a complex pair in range.
    """

    def re_pair(mu: float, x_hint: float) -> tuple[float, bool, Equilibrium] | None:
        eqs = find_interior_equilibria(_with_param(p, param_name, mu))
        if not eqs:
            return None
        e = min(eqs, key=lambda q: abs(q.x - x_hint))
        lam = e.eigenvalues
        is_c = abs(lam[0].imag) > 1e-9 * max(abs(lam[0]), abs(lam[1]), 1e-300)
        return lam[0].real, is_c, e

    events: list[BifurcationEvent] = []
    lo, hi = float(min(prange)), float(max(prange))
    for chain in _linked_grid_branches(p, param_name, lo, hi, n_grid):
        for (mu_a, ea), (mu_b, eb) in zip(chain[:-1], chain[1:]):
            la, lb = ea.eigenvalues[0], eb.eigenvalues[0]
            ca = abs(la.imag) > 1e-9 * max(abs(la), 1e-300)
            cb = abs(lb.imag) > 1e-9 * max(abs(lb), 1e-300)
            if not (ca and cb) or la.real == 0.0 or la.real * lb.real >= 0:
                continue
            a, b = mu_a, mu_b
            xa, xb = ea.x, eb.x
            fa = la.real
            for _ in range(200):
                if abs(b - a) <= tol:
                    break
                mid = 0.5 * (a + b)
                r = re_pair(mid, 0.5 * (xa + xb))
                if r is None or not r[1]:
                    break
                fm, _, em = r
                if fa * fm <= 0:
                    b, xb = mid, em.x
                else:
                    a, fa, xa = mid, fm, em.x
            mu_star = 0.5 * (a + b)
            r = re_pair(mu_star, 0.5 * (xa + xb))
            loc = (r[2].x, r[2].y) if r else (0.5 * (xa + xb), 0.0)
            events.append(BifurcationEvent(
                kind="Hopf", param_name=param_name, param_value=float(mu_star),
                location=loc, bracket=(float(min(a, b)), float(max(a, b))),
                diagnostics={"re_pair_at_bracket": (float(la.real), float(lb.real)),
                             "im_pair": float(abs(r[2].eigenvalues[0].imag)) if r else float("nan")}))
    return events


# ---------------------------------------------------------------------------
# independent double-root oracle


def resultant_double_root_params(p: ModelParams, param_name: str,
                                 prange: tuple[float, float],
                                 n_grid: int = 400) -> list[float]:
    """Parameter values where the interior polynomial has a double root.

    Builds the Sylvester matrix of the degree-5 polynomial and its
    derivative, scans its determinant over the range, and refines each sign
    change by Brent's method.  Shares no code with the continuation path, so
    it serves as an independent check on fold locations.
    """

    def sylvester_det(mu: float) -> float:
        c = interior_quintic(_with_param(p, param_name, mu)).highest_first()
        d = np.polyder(c)
        n, k = 5, 4
        S = np.zeros((n + k, n + k))
        for i in range(k):
            S[i, i: i + n + 1] = c
        for i in range(n):
            S[k + i, i: i + k + 1] = d
        return float(np.linalg.det(S))

    lo, hi = float(min(prange)), float(max(prange))
    grid = np.linspace(lo, hi, n_grid)
    vals = np.array([sylvester_det(mu) for mu in grid])
    out: list[float] = []
    for i in range(n_grid - 1):
        if vals[i] == 0.0:
            out.append(float(grid[i]))
        elif vals[i] * vals[i + 1] < 0:
            out.append(float(brentq(sylvester_det, grid[i], grid[i + 1], xtol=1e-14)))
    return out


# ---------------------------------------------------------------------------
# hysteresis sweep


def hysteresis_sweep(p: ModelParams, eps_min: float, eps_max: float,
                     period: float, cycles: float, initial,
                     rtol: float = 1e-8, atol: float = 1e-10) -> SweepResult:
    """Integrate under a sine schedule for eps and measure the memory loop.

    eps(t) = midpoint + half-range * sin(2 pi t / period).  The loop area is
    the shoelace signed area of the (eps, x) curve over the final full
    cycle.  A quasi-static sweep (large period) pushes the jump locations
    toward the fold parameters of the frozen system.
    """
    if cycles * period <= period:
        raise ValueError("need at least one full cycle")
    eps_fn = sine_eps_schedule(eps_min, eps_max, period)
    t_end = cycles * period
    traj = integrate_nonautonomous(p, eps_fn, initial, t_end, rtol=rtol,
                                   atol=atol, max_step=period / 2000.0)
    mask = traj.times >= t_end - period
    eps_cycle = traj.eps_values[mask]
    x_cycle = traj.states[mask, 0]
    area = 0.5 * float(np.sum(eps_cycle * np.roll(x_cycle, -1)
                              - np.roll(eps_cycle, -1) * x_cycle))
    return SweepResult(times=traj.times, states=traj.states,
                       eps_schedule=traj.eps_values, loop_area_proxy=area,
                       period=period, trajectory=traj)


def detect_sweep_jumps(sweep: SweepResult, x_threshold: float) -> list[dict]:
    """Times and eps values where x crosses a branch-gap threshold."""
    x = sweep.states[:, 0]
    out = []
    for i in range(len(x) - 1):
        if (x[i] - x_threshold) * (x[i + 1] - x_threshold) < 0:
            out.append({"time": float(sweep.times[i]),
                        "eps": float(sweep.eps_schedule[i]),
                        "direction": "up" if x[i + 1] > x[i] else "down"})
    return out
