"""Bifurcation tests: analytic thresholds, continuation, sweeps.

Fold locations are checked against an independently coded resultant oracle;
the frozen constants below were produced by that oracle (Sylvester matrix of
the interior quintic and its derivative, Brent-refined) and agree with the
continuation machinery to well below the reporting tolerance.
"""

from __future__ import annotations

import numpy as np
import pytest
from scipy.optimize import brentq

from afpp.bifurcation import (
    BifurcationEvent,
    DegenerateParameterError,
    SweepResult,
    bracket_e2_creation,
    bracket_transcritical,
    branch_focus_node_events,
    branch_fold_events,
    continue_branch,
    detect_hopf,
    detect_sweep_jumps,
    e1_second_eigenvalue,
    hysteresis_sweep,
    resultant_double_root_params,
    saddlenode_sotomayor,
    saddlenode_xi_critical,
    transcritical_sotomayor,
    transcritical_xi_critical,
)
from afpp.equilibria import find_all_equilibria, find_interior_equilibria, interior_quintic
from afpp.model import ModelParams, jacobian, rhs

SCURVE = ModelParams(gamma=15.0, alpha=0.1, xi=1.0, epsilon=0.01, m=0.258, delta=0.3)
SCURVE_RANGE = (0.002, 0.02)

# double roots of the interior quintic in epsilon over SCURVE_RANGE,
# from the resultant oracle
FOLD_EPS_LO = 0.010836406105985647
FOLD_EPS_HI = 0.016569260146590145

# real-part zero crossings of the interior complex pair, from direct
# root bracketing on the classified eigenvalues
HOPF_EPS_SCURVE = 0.015401401146910246
HOPF_EPS_TRUE = 0.032305261614744854


def _seed_at(p: ModelParams, eps: float):
    eqs = find_interior_equilibria(p.with_updates(epsilon=eps))
    assert eqs, "no interior equilibrium at range start"
    return min(eqs, key=lambda e: e.x)


@pytest.fixture(scope="module")
def scurve_branch():
    return continue_branch(SCURVE, "epsilon", SCURVE_RANGE,
                           _seed_at(SCURVE, SCURVE_RANGE[0]))


@pytest.fixture(scope="module")
def scurve_folds(scurve_branch):
    return branch_fold_events(SCURVE, "epsilon", scurve_branch)


# ---------------------------------------------------------------------------
# analytic thresholds at E1 and E2


def test_transcritical_threshold_worked_value(transcritical_params):
    p = transcritical_params
    xi_star = transcritical_xi_critical(p)
    assert xi_star == pytest.approx(2.0, abs=1e-14)
    formula = (p.m * (1 + p.gamma**2) - p.delta * p.gamma**2) / (p.delta - p.m * p.alpha)
    assert xi_star == pytest.approx(formula, rel=1e-15)


def test_e1_second_eigenvalue_matches_jacobian(transcritical_params):
    p = transcritical_params
    assert e1_second_eigenvalue(p, 2.0) == pytest.approx(0.0, abs=1e-14)
    for xi in (0.5, 2.0, 3.7):
        pm = p.with_updates(xi=xi)
        J = jacobian(pm, (p.gamma, 0.0))
        assert J[1, 0] == 0.0
        assert e1_second_eigenvalue(p, xi) == pytest.approx(J[1, 1], rel=1e-12)


def test_e1_stability_flips_across_threshold(transcritical_params):
    p = transcritical_params
    below = e1_second_eigenvalue(p, 2.0 - 1e-3)
    above = e1_second_eigenvalue(p, 2.0 + 1e-3)
    assert below < 0 < above
    for xi, expect_stable in ((2.0 - 1e-3, True), (2.0 + 1e-3, False)):
        eqs = find_all_equilibria(p.with_updates(xi=xi))
        e1 = next(e for e in eqs if e.kind == "E1")
        assert e1.is_stable() is expect_stable


def test_degenerate_denominator_raises():
    p = ModelParams(gamma=1.0, alpha=4.0 / 3.0, xi=2.0, epsilon=0.5, m=6.0, delta=8.0)
    with pytest.raises(DegenerateParameterError, match="delta = m\\*alpha"):
        transcritical_xi_critical(p)
    with pytest.raises(DegenerateParameterError, match="delta = m\\*alpha"):
        saddlenode_xi_critical(p)


def test_negative_creation_threshold_raises():
    p = ModelParams(gamma=1.0, alpha=2.0, xi=2.0, epsilon=0.5, m=6.0, delta=8.0)
    with pytest.raises(DegenerateParameterError, match="no positive creation"):
        saddlenode_xi_critical(p)


def test_bracket_transcritical(transcritical_params):
    ev = bracket_transcritical(transcritical_params, 1.5, 2.5)
    assert ev.kind == "Transcritical"
    assert ev.bracket[1] - ev.bracket[0] <= 1e-8
    assert ev.bracket[0] <= 2.0 <= ev.bracket[1]
    assert ev.param_value == pytest.approx(2.0, abs=1e-8)
    # the bisection may land on the zero exactly, collapsing the bracket
    lo_val, hi_val = ev.diagnostics["eigenvalue_at_bracket"]
    assert lo_val * hi_val <= 0
    q = ev.diagnostics["sotomayor"]
    assert q["W_Hxi"] == 0.0
    assert abs(q["W_DHxi_V"]) > 1e-6
    assert abs(q["W_D2H_VV"]) > 1e-6


def test_transcritical_sotomayor_matches_finite_differences(transcritical_params):
    p = transcritical_params
    xi_star = 2.0
    q = transcritical_sotomayor(p, xi_star)
    z = np.array([p.gamma, 0.0])
    V = np.array(q["V"])

    h = 1e-5
    f_hi = rhs(p.with_updates(xi=xi_star + h), z)
    f_lo = rhs(p.with_updates(xi=xi_star - h), z)
    assert (f_hi[1] - f_lo[1]) / (2 * h) == pytest.approx(0.0, abs=1e-12)

    J_hi = jacobian(p.with_updates(xi=xi_star + h), z)
    J_lo = jacobian(p.with_updates(xi=xi_star - h), z)
    dJ_V = (J_hi - J_lo) / (2 * h) @ V
    assert q["W_DHxi_V"] == pytest.approx(dJ_V[1], rel=1e-5)

    pm = p.with_updates(xi=xi_star)
    h = 1e-3
    d2 = (rhs(pm, z + h * V) - 2 * rhs(pm, z) + rhs(pm, z - h * V)) / h**2
    assert q["W_D2H_VV"] == pytest.approx(d2[1], rel=1e-4)


def test_saddlenode_threshold_and_e2_presence(transcritical_params):
    p = transcritical_params
    xi_star = saddlenode_xi_critical(p)
    assert xi_star == pytest.approx(3.0, abs=1e-14)
    assert xi_star == pytest.approx(p.m / (p.delta - p.m * p.alpha), rel=1e-15)
    kinds_below = {e.kind for e in find_all_equilibria(p.with_updates(xi=3.0 - 1e-3))}
    kinds_above = {e.kind for e in find_all_equilibria(p.with_updates(xi=3.0 + 1e-3))}
    assert "E2" not in kinds_below
    assert "E2" in kinds_above
    e2 = next(e for e in find_all_equilibria(p.with_updates(xi=3.0 + 1e-3))
              if e.kind == "E2")
    assert 0 < e2.y < 1e-2


def test_saddlenode_sotomayor_quantities(transcritical_params):
    p = transcritical_params
    at_crit = saddlenode_sotomayor(p, 3.0)
    assert at_crit["degenerate_at_critical"]
    assert at_crit["W_Hxi"] == pytest.approx(0.0, abs=1e-12)
    assert at_crit["W_D2H_VV"] == pytest.approx(-2 * p.epsilon, rel=1e-15)
    away = saddlenode_sotomayor(p, 3.5)
    assert not away["degenerate_at_critical"]
    assert away["W_Hxi"] > 0
    A = 1.0 + p.alpha * 3.5
    assert away["W_DHxi_V"] == pytest.approx(p.delta / A**2, rel=1e-15)


def test_bracket_e2_creation(transcritical_params):
    ev = bracket_e2_creation(transcritical_params, 2.0, 4.0)
    assert ev.kind == "SaddleNode"
    assert ev.bracket[1] - ev.bracket[0] <= 1e-8
    assert ev.param_value == pytest.approx(3.0, abs=1e-8)
    lo_val, hi_val = ev.diagnostics["phi1_at_bracket"]
    assert lo_val * hi_val <= 0
    assert ev.diagnostics["sotomayor"]["degenerate_at_critical"]


# ---------------------------------------------------------------------------
# continuation on the s-shaped coexistence curve


def test_branch_spans_range_without_truncation(scurve_branch):
    assert len(scurve_branch) >= 100
    assert scurve_branch[0].param_value == pytest.approx(SCURVE_RANGE[0], abs=1e-12)
    assert scurve_branch[-1].param_value == pytest.approx(SCURVE_RANGE[1], abs=1e-9)
    assert "notice" not in scurve_branch[-1].equilibrium.flags


def test_branch_points_are_classified_equilibria(scurve_branch):
    for bp in scurve_branch[::12]:
        pm = SCURVE.with_updates(epsilon=bp.param_value)
        resid = np.max(np.abs(rhs(pm, (bp.equilibrium.x, bp.equilibrium.y))))
        assert resid <= 1e-8
        assert SCURVE_RANGE[0] - 1e-12 <= bp.param_value <= SCURVE_RANGE[1] + 1e-12
    classes = {bp.equilibrium.stability.value for bp in scurve_branch}
    assert "Saddle" in classes
    assert len(classes) >= 3


def test_exactly_two_folds_matching_resultant_oracle(scurve_folds):
    assert len(scurve_folds) == 2
    found = sorted(ev.param_value for ev in scurve_folds)
    assert found[0] == pytest.approx(FOLD_EPS_LO, abs=1e-9)
    assert found[1] == pytest.approx(FOLD_EPS_HI, abs=1e-9)

    oracle = resultant_double_root_params(SCURVE, "epsilon", SCURVE_RANGE)
    assert len(oracle) == 2
    assert sorted(oracle)[0] == pytest.approx(FOLD_EPS_LO, abs=1e-12)
    assert sorted(oracle)[1] == pytest.approx(FOLD_EPS_HI, abs=1e-12)
    for f, o in zip(found, sorted(oracle)):
        assert abs(f - o) <= 1e-8


def test_fold_events_report_brackets_and_locations(scurve_folds):
    by_param = sorted(scurve_folds, key=lambda ev: ev.param_value)
    for ev in by_param:
        assert ev.kind == "Fold"
        assert ev.bracket[1] - ev.bracket[0] <= 1.1e-8
        assert ev.bracket[0] <= ev.param_value <= ev.bracket[1]
        ta, tb = ev.diagnostics["tangent_param_components"]
        assert ta * tb < 0
    assert by_param[0].location[0] == pytest.approx(7.2374, rel=1e-3)
    assert by_param[1].location[0] == pytest.approx(1.6920, rel=1e-3)


def test_focus_node_transitions_on_branch(scurve_branch):
    events = branch_focus_node_events(SCURVE, "epsilon", scurve_branch)
    assert len(events) >= 2
    for ev in events:
        assert ev.kind == "FocusNodeTransition"
        assert ev.bracket[1] - ev.bracket[0] <= 1.1e-8
        da, db = ev.diagnostics["discriminant_at_bracket"]
        assert da * db < 0


def test_monotone_branch_has_no_folds():
    # negative nullcline discriminant: single crossing for every epsilon
    p = ModelParams(gamma=2.0, alpha=1.0, xi=1.0, epsilon=0.5, m=0.5, delta=2.0)
    lo, hi = 0.1, 1.0
    for eps in np.linspace(lo, hi, 200):
        coeffs = interior_quintic(p.with_updates(epsilon=eps)).highest_first()
        roots = np.roots(coeffs)
        positive = [z for z in roots
                    if abs(z.imag) < 1e-9 * max(1.0, abs(z)) and z.real > 1e-12]
        assert len(positive) == 1
    branch = continue_branch(p, "epsilon", (lo, hi), _seed_at(p, lo))
    assert branch[-1].param_value == pytest.approx(hi, abs=1e-9)
    assert branch_fold_events(p, "epsilon", branch) == []


def test_continue_branch_rejects_bad_seed():
    bad = _seed_at(SCURVE, 0.013)
    with pytest.raises(ValueError, match="polished interior equilibrium"):
        continue_branch(SCURVE, "epsilon", SCURVE_RANGE, bad)


# ---------------------------------------------------------------------------
# eigenvalue crossings (Hopf candidates)


def test_detect_hopf_on_scurve_low_branch():
    events = detect_hopf(SCURVE, "epsilon", SCURVE_RANGE)
    assert events
    best = min(events, key=lambda ev: abs(ev.param_value - HOPF_EPS_SCURVE))
    assert best.kind == "Hopf"
    assert best.param_value == pytest.approx(HOPF_EPS_SCURVE, abs=2e-8)
    assert best.bracket[1] - best.bracket[0] <= 1.1e-8
    ra, rb = best.diagnostics["re_pair_at_bracket"]
    assert ra * rb < 0
    assert best.diagnostics["im_pair"] > 1e-3

    # independent flank check: the linked equilibrium is a stable focus just
    # below the crossing and an unstable focus just above
    for eps, expect_stable in ((best.param_value - 2e-4, True),
                               (best.param_value + 2e-4, False)):
        eqs = find_interior_equilibria(SCURVE.with_updates(epsilon=eps))
        e = min(eqs, key=lambda q: abs(q.x - best.location[0]))
        assert e.is_stable() is expect_stable
        assert abs(e.eigenvalues[0].imag) > 1e-3


def test_detect_hopf_crossing_matches_direct_bracketing(hopf_params):
    p = hopf_params

    def re_part(eps: float) -> float:
        eqs = find_interior_equilibria(p.with_updates(epsilon=eps))
        e = max(eqs, key=lambda q: abs(q.eigenvalues[0].imag))
        assert abs(e.eigenvalues[0].imag) > 1e-6
        return e.eigenvalues[0].real

    direct = brentq(re_part, 0.03, 0.035, xtol=1e-13)
    assert direct == pytest.approx(HOPF_EPS_TRUE, abs=1e-11)

    events = detect_hopf(p, "epsilon", (0.02, 0.05))
    assert events
    best = min(events, key=lambda ev: abs(ev.param_value - direct))
    assert best.param_value == pytest.approx(direct, abs=2e-8)
    assert not [ev for ev in events if 0.035 <= ev.param_value <= 0.045]


# ---------------------------------------------------------------------------
# hysteresis sweeps


def test_hysteresis_loop_area_and_jump_structure():
    initial = _seed_at(SCURVE, 0.011)
    sweep = hysteresis_sweep(SCURVE, 0.002, 0.02, period=2000.0, cycles=1.25,
                             initial=(initial.x, initial.y))
    assert sweep.loop_area_proxy > 0.01
    jumps = detect_sweep_jumps(sweep, x_threshold=4.0)
    ups = [j for j in jumps if j["direction"] == "up"]
    downs = [j for j in jumps if j["direction"] == "down"]
    assert ups and downs
    assert abs(ups[0]["eps"] - FOLD_EPS_HI) / FOLD_EPS_HI < 0.05
    assert abs(downs[0]["eps"] - FOLD_EPS_LO) / FOLD_EPS_LO < 0.15
    assert ups[0]["eps"] > downs[0]["eps"]


def test_hysteresis_zero_amplitude_loop_vanishes():
    initial = _seed_at(SCURVE, 0.013)
    sweep = hysteresis_sweep(SCURVE, 0.013, 0.013, period=200.0, cycles=1.25,
                             initial=(initial.x, initial.y))
    assert abs(sweep.loop_area_proxy) < 1e-8
    assert detect_sweep_jumps(sweep, x_threshold=4.0) == []


def test_hysteresis_requires_full_cycle():
    with pytest.raises(ValueError, match="full cycle"):
        hysteresis_sweep(SCURVE, 0.002, 0.02, period=100.0, cycles=1.0,
                         initial=(1.0, 1.0))


def test_detect_sweep_jumps_synthetic():
    x = np.array([1.0, 1.0, 1.0, 9.0, 9.0, 9.0, 1.0, 1.0, 9.0, 9.0])
    times = np.arange(10.0)
    eps = 0.01 * np.arange(10.0)
    sweep = SweepResult(times=times, states=np.column_stack([x, np.zeros(10)]),
                        eps_schedule=eps, loop_area_proxy=0.0, period=1.0,
                        trajectory=None)
    jumps = detect_sweep_jumps(sweep, x_threshold=5.0)
    assert [(j["direction"], j["time"]) for j in jumps] == [
        ("up", 2.0), ("down", 5.0), ("up", 7.0)]
    assert jumps[0]["eps"] == pytest.approx(0.02)
