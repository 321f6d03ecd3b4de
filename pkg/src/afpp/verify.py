"""Randomized invariant suites: positivity, boundedness, derivative audits,
sign-lemma concordance and equilibrium residuals.

Draw distribution (documented here and in the suite reports): gamma in
[1, 15], alpha in [0.5, 2], xi in [0.05, 3], m in [0.05, 1], delta = m times
uniform [1.1, 2.5] (feasibility by construction), eps in [0.01, 1]; initial
states x in (0, 1.5*gamma], y in (0, 5].  The box tracks the regimes the
package documents (efficiency-to-mortality ratios up to 2.5, food quality
not extreme); at small alpha with large delta/m the coexistence pest floor
eps/(1 + eps/gamma) is violated, which the atlas consequences report
exposes, so the suites deliberately stay inside the regime where the floor
holds.  All suites consume a seeded generator, so a run is reproducible
from its seed.
"""

from __future__ import annotations

import numpy as np

from . import optimal_control as oc
from .equilibria import (
    StabilityClass,
    find_all_equilibria,
    find_interior_equilibria,
    interior_quintic,
)
from .model import ModelParams, jacobian, rhs
from .simulation import (
    IntegrationError,
    bound_envelope,
    certified_supremum,
    check_boundedness,
    check_positivity,
    gronwall_envelope,
    integrate,
    weighted_total,
)

__all__ = [
    "draw_params",
    "draw_state",
    "positivity_boundedness_suite",
    "jacobian_fd_suite",
    "adjoint_fd_suite",
    "lemma_sign_suite",
    "equilibrium_residual_suite",
    "run_all",
]


def draw_params(rng: np.random.Generator) -> ModelParams:
    m = rng.uniform(0.05, 1.0)
    return ModelParams(
        gamma=rng.uniform(1.0, 15.0),
        alpha=rng.uniform(0.5, 2.0),
        xi=rng.uniform(0.05, 3.0),
        epsilon=rng.uniform(0.01, 1.0),
        m=m,
        delta=m * rng.uniform(1.1, 2.5),
    )


def draw_state(rng: np.random.Generator, p: ModelParams) -> tuple[float, float]:
    return (rng.uniform(1e-3, 1.5 * p.gamma), rng.uniform(1e-3, 5.0))


def positivity_boundedness_suite(n_runs: int = 1000, seed: int = 0,
                                 t_end: float = 50.0, tol: float = 1e-6) -> dict:
    """Integrate random configurations and check the two monitors.

    Positivity: no component of the solution dips below -1e-10.
    Boundedness: the weighted total x + y/delta stays under the Gronwall
    envelope built from the closed-form bound M (with K = m), and separately
    under the envelope built from a numerically certified supremum of the
    drive term.  Failures are recorded per run with the offending
    configuration.
    """
    rng = np.random.default_rng(seed)
    pos_failures, closed_failures, certified_failures, integ_failures = [], [], [], []
    for i in range(n_runs):
        p = draw_params(rng)
        w0 = draw_state(rng, p)
        try:
            traj = integrate(p, w0, t_end, rtol=1e-8, atol=1e-10)
        except IntegrationError as exc:
            integ_failures.append({"run": i, "params": vars(p), "error": str(exc)})
            continue
        pos = check_positivity(traj, tol=1e-10)
        if not pos["ok"]:
            pos_failures.append({"run": i, "params": vars(p), **pos})
        env = bound_envelope(p)
        closed = check_boundedness(p, traj, env=env, tol=tol)
        if not closed["ok"]:
            closed_failures.append({"run": i, "params": vars(p),
                                    "worst_violation": closed["worst_violation"],
                                    "M": env.M})
        sup = certified_supremum(p, p.m)
        W = weighted_total(p, traj.states)
        env_cert = gronwall_envelope(_cert_env(p, sup), W[0], traj.times)
        worst = float(np.max(W - env_cert))
        if worst > tol * (1.0 + np.max(env_cert)):
            certified_failures.append({"run": i, "params": vars(p),
                                       "worst_violation": worst,
                                       "M_certified": sup / p.m})
    return {
        "suite": "positivity_boundedness",
        "n_runs": n_runs,
        "seed": seed,
        "positivity_ok": not pos_failures,
        "closed_form_bound_ok": not closed_failures,
        "certified_bound_ok": not certified_failures,
        "integration_failures": integ_failures,
        "positivity_failures": pos_failures,
        "closed_form_failures": closed_failures,
        "certified_failures": certified_failures,
        "ok": not (pos_failures or certified_failures or integ_failures),
        "ok_with_closed_form": not (pos_failures or closed_failures
                                    or certified_failures or integ_failures),
    }


def _cert_env(p: ModelParams, sup: float):
    from .simulation import BoundEnvelope

    return BoundEnvelope(K_choice=p.m, M=sup / p.m)


def jacobian_fd_suite(n_samples: int = 1000, seed: int = 1,
                      rel_tol: float = 1e-5) -> dict:
    """Analytic Jacobian against central finite differences of the field."""
    rng = np.random.default_rng(seed)
    worst, failures = 0.0, []
    for i in range(n_samples):
        p = draw_params(rng)
        w = np.array(draw_state(rng, p))
        J = jacobian(p, w)
        F = np.zeros((2, 2))
        for j in range(2):
            h = 1e-6 * (1.0 + abs(w[j]))
            wp, wm = w.copy(), w.copy()
            wp[j] += h
            wm[j] -= h
            F[:, j] = (np.array(rhs(p, wp)) - np.array(rhs(p, wm))) / (2.0 * h)
        scale = max(float(np.max(np.abs(J))), 1.0)
        err = float(np.max(np.abs(J - F))) / scale
        worst = max(worst, err)
        if err > rel_tol:
            failures.append({"sample": i, "params": vars(p), "state": list(w),
                             "rel_err": err})
    return {"suite": "jacobian_fd", "n_samples": n_samples, "seed": seed,
            "max_rel_err": worst, "failures": failures, "ok": not failures}


def adjoint_fd_suite(n_samples: int = 1000, seed: int = 2,
                     rel_tol: float = 1e-5) -> dict:
    """Adjoint equations against finite differences of the Hamiltonian."""
    rng = np.random.default_rng(seed)
    worst, failures = 0.0, []
    for i in range(n_samples):
        p = draw_params(rng)
        w = np.array(draw_state(rng, p))
        c = oc.Costate(p=rng.normal(), q=rng.normal())
        kind = oc.QUALITY if i % 2 == 0 else oc.QUANTITY
        lo = 0.05 if kind == oc.QUANTITY else 0.1
        u = rng.uniform(lo, 2.0)
        analytic = np.array(oc.adjoint_rhs(p, w, c, u, kind))
        fd = np.zeros(2)
        for j in range(2):
            h = 1e-6 * (1.0 + abs(w[j]))
            wp, wm = w.copy(), w.copy()
            wp[j] += h
            wm[j] -= h
            fd[j] = -(oc.hamiltonian(p, wp, c, u, kind)
                      - oc.hamiltonian(p, wm, c, u, kind)) / (2.0 * h)
        scale = max(float(np.max(np.abs(analytic))), 1.0)
        err = float(np.max(np.abs(analytic - fd))) / scale
        worst = max(worst, err)
        if err > rel_tol:
            failures.append({"sample": i, "params": vars(p), "state": list(w),
                             "kind": kind, "u": u, "rel_err": err})
    return {"suite": "adjoint_fd", "n_samples": n_samples, "seed": seed,
            "max_rel_err": worst, "failures": failures, "ok": not failures}


def lemma_sign_suite(n_draws: int = 2000, seed: int = 3,
                     hyperbolic_margin: float = 1e-7) -> dict:
    """Boundary-point classes against the phi sign predictions.

    E0 is a saddle when phi1 < 0 and an unstable node when phi1 > 0; E1 is a
    stable node when phi2 < 0 and a saddle when phi2 > 0; E2 exists exactly
    when phi1 > 0 and is always a saddle.  Draws within the hyperbolicity
    margin of a sign change are skipped.
    """
    rng = np.random.default_rng(seed)
    checked, skipped, failures = 0, 0, []
    for i in range(n_draws):
        p = draw_params(rng)
        A = 1.0 + p.alpha * p.xi
        phi1 = p.delta * p.xi - p.m * A
        phi2 = phi1 + (p.delta - p.m) * p.gamma**2
        if abs(phi1 / A) <= hyperbolic_margin or \
           abs(phi2 / (p.gamma**2 + A)) <= hyperbolic_margin:
            skipped += 1
            continue
        eqs = {e.kind: e for e in find_all_equilibria(p) if e.kind != "interior"}
        checked += 1
        expect_e0 = (StabilityClass.UNSTABLE_NODE if phi1 > 0
                     else StabilityClass.SADDLE)
        expect_e1 = (StabilityClass.SADDLE if phi2 > 0
                     else StabilityClass.STABLE_NODE)
        bad = []
        if eqs["E0"].stability != expect_e0:
            bad.append(("E0", eqs["E0"].stability.value, expect_e0.value))
        if eqs["E1"].stability != expect_e1:
            bad.append(("E1", eqs["E1"].stability.value, expect_e1.value))
        if (phi1 > 0) != ("E2" in eqs):
            bad.append(("E2-existence", "present" if "E2" in eqs else "absent",
                        "present" if phi1 > 0 else "absent"))
        elif phi1 > 0 and eqs["E2"].stability != StabilityClass.SADDLE:
            bad.append(("E2", eqs["E2"].stability.value, "Saddle"))
        if bad:
            failures.append({"draw": i, "params": vars(p), "mismatches": bad,
                             "phi": (phi1, phi2)})
    return {"suite": "lemma_signs", "n_draws": n_draws, "seed": seed,
            "checked": checked, "skipped_near_boundary": skipped,
            "failures": failures, "ok": not failures}


def equilibrium_residual_suite(n_draws: int = 2000, seed: int = 4,
                               tol: float = 1e-9) -> dict:
    """Interior roots must satisfy the degree-5 polynomial and the field."""
    rng = np.random.default_rng(seed)
    worst_field, worst_poly, n_eq, failures = 0.0, 0.0, 0, []
    for i in range(n_draws):
        p = draw_params(rng)
        quintic = interior_quintic(p)
        poly_scale = max(np.max(np.abs(quintic.c)), 1.0)
        for e in find_interior_equilibria(p):
            n_eq += 1
            f = np.array(rhs(p, (e.x, e.y)))
            field_err = float(np.max(np.abs(f))) / max(1.0, e.x + e.y)
            poly_err = abs(quintic(e.x)) / poly_scale
            worst_field = max(worst_field, field_err)
            worst_poly = max(worst_poly, poly_err)
            if field_err > tol or poly_err > tol:
                failures.append({"draw": i, "params": vars(p),
                                 "x": e.x, "y": e.y,
                                 "field_err": field_err, "poly_err": poly_err})
    return {"suite": "equilibrium_residuals", "n_draws": n_draws, "seed": seed,
            "equilibria_checked": n_eq, "max_field_residual": worst_field,
            "max_poly_residual": worst_poly, "failures": failures,
            "ok": not failures}


def run_all(seed: int = 0, n_boundedness: int = 1000, n_fd: int = 1000,
            n_lemma: int = 2000, n_residual: int = 2000) -> dict:
    """Run every suite with derived seeds and aggregate the verdicts."""
    reports = {
        "positivity_boundedness": positivity_boundedness_suite(
            n_runs=n_boundedness, seed=seed),
        "jacobian_fd": jacobian_fd_suite(n_samples=n_fd, seed=seed + 1),
        "adjoint_fd": adjoint_fd_suite(n_samples=n_fd, seed=seed + 2),
        "lemma_signs": lemma_sign_suite(n_draws=n_lemma, seed=seed + 3),
        "equilibrium_residuals": equilibrium_residual_suite(
            n_draws=n_residual, seed=seed + 4),
    }
    reports["ok"] = all(r["ok"] for r in reports.values())
    return reports
