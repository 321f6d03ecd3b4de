import numpy as np
import pytest

from afpp.equilibria import find_interior_equilibria
from afpp.model import ModelParams, rhs
from afpp.simulation import (
    BoundEnvelope,
    Trajectory,
    bound_envelope,
    certified_supremum,
    check_boundedness,
    check_positivity,
    gronwall_envelope,
    hermite_eval,
    integrate,
    integrate_nonautonomous,
    rk4_fixed,
    sine_eps_schedule,
    weighted_total,
)


def test_equilibrium_is_stationary(scurve_params):
    p = scurve_params
    e = find_interior_equilibria(p)[0]
    traj = integrate(p, (e.x, e.y), 100.0)
    drift = np.max(np.abs(traj.states - traj.states[0]), axis=0)
    assert np.max(drift) <= 1e-7


def test_prey_axis_invariant(transcritical_params):
    p = transcritical_params.with_updates(xi=4.0)
    traj = integrate(p, (0.0, 1.7), 50.0)
    assert np.all(traj.states[:, 0] == 0.0)
    # predator settles to the prey-free level
    y2 = 0.8
    assert traj.final_state()[1] == pytest.approx(y2, abs=1e-6)


def test_predator_axis_invariant(scurve_params):
    traj = integrate(scurve_params, (2.5, 0.0), 50.0)
    assert np.all(traj.states[:, 1] == 0.0)
    assert traj.final_state()[0] == pytest.approx(scurve_params.gamma, abs=1e-6)


def test_sustained_oscillation_below_hopf(hopf_params):
    p = hopf_params.with_updates(epsilon=0.035)
    e = find_interior_equilibria(p)[0]
    traj = integrate(p, (e.x * 1.05, e.y * 1.05), 2000.0)
    x_tail = traj.states[traj.times >= 1000.0, 0]
    assert x_tail.max() - x_tail.min() > 0.1


def test_decay_above_hopf(hopf_params):
    p = hopf_params.with_updates(epsilon=0.045)
    e = find_interior_equilibria(p)[0]
    traj = integrate(p, (e.x * 1.05, e.y * 1.05), 2000.0)
    x_tail = traj.states[traj.times >= 1000.0, 0]
    assert x_tail.max() - x_tail.min() < 1e-3


def test_constant_schedule_matches_autonomous(scurve_params):
    p = scurve_params
    t_eval = np.linspace(0.0, 40.0, 81)
    a = integrate(p, (1.0, 1.0), 40.0, t_eval=t_eval)
    b = integrate_nonautonomous(p, lambda t: p.epsilon, (1.0, 1.0), 40.0,
                                t_eval=t_eval)
    assert np.max(np.abs(a.states - b.states)) <= 1e-7


def test_nonautonomous_records_effective_eps(scurve_params):
    eps_fn = sine_eps_schedule(0.005, 0.015, 10.0)
    traj = integrate_nonautonomous(scurve_params, eps_fn, (1.0, 1.0), 20.0)
    expect = np.array([eps_fn(t) for t in traj.times])
    assert np.max(np.abs(traj.eps_values - expect)) == 0.0
    assert traj.eps_values.min() >= 0.005 - 1e-12
    assert traj.eps_values.max() <= 0.015 + 1e-12


def test_self_convergence_under_tolerance_refinement(scurve_params):
    p = scurve_params
    kw = {"t_eval": np.array([30.0])}
    coarse = integrate(p, (1.0, 1.0), 30.0, rtol=1e-6, atol=1e-8, **kw)
    fine = integrate(p, (1.0, 1.0), 30.0, rtol=5e-7, atol=5e-9, **kw)
    gap = np.max(np.abs(coarse.final_state() - fine.final_state()))
    assert gap < 10 * 1e-6


def test_positivity_monitor_clean_run(scurve_params):
    traj = integrate(scurve_params, (1.0, 1.0), 50.0)
    rep = check_positivity(traj)
    assert rep["ok"]
    assert np.all(traj.states >= 0.0)


def test_input_validation(scurve_params):
    with pytest.raises(ValueError):
        integrate(scurve_params, (-1.0, 1.0), 10.0)
    with pytest.raises(ValueError):
        integrate(scurve_params, (1.0, 1.0), -5.0)
    with pytest.raises(ValueError):
        integrate(scurve_params, (1.0, 1.0, 1.0), 10.0)
    with pytest.raises(ValueError):
        sine_eps_schedule(0.02, 0.01, 10.0)


def test_envelope_worked_example():
    # gamma=1, xi=2, eps=0.5, m=6, K=6: M = 49/4 + 4 + 0 = 16.25
    p = ModelParams(gamma=1.0, alpha=1.0, xi=2.0, epsilon=0.5, m=6.0, delta=8.0)
    env = bound_envelope(p, K_choice=6.0)
    assert env.M == pytest.approx(16.25)
    assert env.asymptotic_bound == pytest.approx(16.25 / 6.0)
    assert bound_envelope(p).K_choice == p.m


def test_envelope_xi_structure():
    p = ModelParams(gamma=2.0, alpha=0.5, xi=1.5, epsilon=0.3, m=0.4, delta=0.9)
    with_food = bound_envelope(p).M
    without = bound_envelope(p.with_updates(xi=0.0)).M
    assert with_food - without == pytest.approx(p.xi / p.epsilon)


def test_gronwall_envelope_monotone_approach():
    env = BoundEnvelope(K_choice=2.0, M=6.0)
    t = np.linspace(0.0, 10.0, 101)
    from_below = gronwall_envelope(env, 0.5, t)
    from_above = gronwall_envelope(env, 9.0, t)
    assert from_below[0] == 0.5 and from_above[0] == 9.0
    assert np.all(np.diff(from_below) >= 0)
    assert np.all(np.diff(from_above) <= 0)
    assert from_below[-1] == pytest.approx(3.0, abs=1e-2)


def test_certified_envelope_holds_along_trajectories(rng):
    # the certified supremum makes W' <= sup - K W rigorous on the quadrant,
    # so the Gronwall envelope built from it must dominate every run
    for _ in range(25):
        m = rng.uniform(0.1, 1.0)
        p = ModelParams(gamma=rng.uniform(1, 10), alpha=rng.uniform(0, 2),
                        xi=rng.uniform(0, 3), epsilon=rng.uniform(0.05, 1),
                        m=m, delta=m * rng.uniform(1.1, 2.5))
        sup = certified_supremum(p, p.m)
        env = BoundEnvelope(K_choice=p.m, M=sup)
        w0 = (rng.uniform(0.1, 1.2 * p.gamma), rng.uniform(0.1, 4.0))
        traj = integrate(p, w0, 40.0)
        rep = check_boundedness(p, traj, env=env)
        assert rep["ok"], (p, rep)


def test_weighted_total_shape(scurve_params):
    states = np.array([[1.0, 2.0], [0.5, 0.3]])
    W = weighted_total(scurve_params, states)
    assert W == pytest.approx([1 + 2 / 0.3, 0.5 + 0.3 / 0.3])


def test_hermite_eval_matches_knots_and_interpolates(scurve_params):
    traj = integrate(scurve_params, (1.0, 1.0), 10.0)
    at_knots = hermite_eval(traj, traj.times)
    assert np.max(np.abs(at_knots - traj.states)) <= 1e-12
    mid = 0.5 * (traj.times[3] + traj.times[4])
    v = hermite_eval(traj, mid)
    dense = integrate(scurve_params, (1.0, 1.0), mid).final_state()
    assert v == pytest.approx(dense, abs=1e-5)
    with pytest.raises(ValueError):
        hermite_eval(traj, traj.times[-1] + 1.0)


def test_rk4_fixed_order():
    p = ModelParams(gamma=4.0, alpha=1.0, xi=0.5, epsilon=0.5, m=1.0, delta=2.0)

    def f(t, w):
        return rhs(p, w)

    ref = integrate(p, (2.0, 1.0), 5.0, rtol=1e-12, atol=1e-14,
                    t_eval=np.array([5.0])).final_state()
    errs = []
    for n in (40, 80, 160):
        _, out = rk4_fixed(f, (2.0, 1.0), 0.0, 5.0, n)
        errs.append(np.max(np.abs(out[-1] - ref)))
    rate1 = np.log2(errs[0] / errs[1])
    rate2 = np.log2(errs[1] / errs[2])
    assert 3.5 < rate1 < 4.5
    assert 3.5 < rate2 < 4.5


def test_zero_amplitude_schedule_is_constant():
    eps_fn = sine_eps_schedule(0.01, 0.01, 100.0)
    assert {eps_fn(t) for t in (0.0, 17.3, 50.0)} == {0.01}
