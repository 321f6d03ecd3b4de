"""Solve-path tests for the time-optimal steering problems.

The quality scenario is solved once (module scope) and inspected by several
tests.  Mesh-doubling agreement is exercised by the acceptance suite, where
the larger runtime budget lives.
"""

from __future__ import annotations

import numpy as np
import pytest

from afpp.optimal_control import (
    InfeasibleControlError,
    calibrate_bounds,
    constant_control_solution,
    resimulate_physical,
    solve,
    verify_pmp,
)

# frozen from this solver configuration; the reference transfer time for
# the scenario is 2.1, reached within 0.8 percent
QUALITY_T_OPT = 2.084728
QUALITY_S_OPT = 0.298384


@pytest.fixture(scope="module")
def quality_solution(quality_problem_module):
    return solve(quality_problem_module)


@pytest.fixture(scope="module")
def quality_pmp(quality_solution, quality_problem_module):
    return verify_pmp(quality_solution, quality_problem_module)


def test_quality_solution_converges(quality_solution):
    sol = quality_solution
    assert sol.nlp_stats["status"] == "converged"
    assert sol.nlp_stats["max_defect"] <= 1e-9
    assert sol.nlp_stats["endpoint_err"] <= 1e-6
    assert sol.T_opt == pytest.approx(QUALITY_T_OPT, rel=1e-4)
    assert sol.S_opt == pytest.approx(QUALITY_S_OPT, rel=1e-4)
    assert abs(sol.T_opt - 2.1) / 2.1 < 0.10


def test_quality_solution_structure(quality_solution, quality_problem_module):
    sol = quality_solution
    prob = quality_problem_module
    lo, hi = prob.bounds
    assert sol.states.shape == (prob.mesh_size + 1, 2)
    assert sol.controls.shape == (prob.mesh_size,)
    assert np.all(sol.controls >= lo - 1e-9)
    assert np.all(sol.controls <= hi + 1e-9)
    assert sol.states[0] == pytest.approx(prob.initial)
    assert sol.states[-1] == pytest.approx(prob.target)
    assert np.all(np.diff(sol.t_grid) > 0)
    assert sol.t_grid[-1] == pytest.approx(sol.T_opt)
    assert sol.switching_times
    assert all(0 < s < sol.S_opt for s in sol.switching_times)


def test_quality_minimum_principle(quality_pmp, quality_solution):
    pmp = quality_pmp
    assert pmp["consistency_fraction"] >= 0.95
    assert pmp["strict_fraction"] >= 0.90
    assert pmp["kkt_residual"] <= 1e-6
    assert abs(pmp["hamiltonian_end"]) <= 5e-3
    assert pmp["adjoint_fd_max_rel_err"] <= 1e-5
    assert pmp["costate_norm_min"] > 0
    assert quality_solution.costates is not None
    assert quality_solution.costates.shape == (len(quality_solution.s_grid), 2)


def test_sigma_changes_sign_near_each_switch(quality_pmp, quality_solution):
    sigma = quality_pmp["sigma"]
    N = len(sigma)
    h = quality_solution.S_opt / N
    for s_star in quality_solution.switching_times:
        k = int(round(s_star / h))
        window = range(max(k - 2, 0), min(k + 2, N - 1))
        assert any(sigma[j] * sigma[j + 1] <= 0 for j in window), s_star


def test_quality_resimulation_round_trip(quality_solution, quality_problem_module):
    report = resimulate_physical(quality_problem_module, quality_solution)
    assert report["target_error"] <= 1e-5
    assert report["T"] == pytest.approx(quality_solution.T_opt, rel=1e-12)
    assert report["final_state"] == pytest.approx(
        np.asarray(quality_problem_module.target), abs=1e-5)


def test_constant_control_fails_the_consistency_check(quality_problem_module):
    arc = constant_control_solution(quality_problem_module, 1.25)
    assert arc.nlp_stats["endpoint_err"] > 1e-2
    pmp = verify_pmp(arc, quality_problem_module)
    assert pmp["strict_fraction"] < 0.5
    assert pmp["consistency_fraction"] < 0.5


def test_degenerate_problem_solves_to_zero_time(quality_problem_module):
    import dataclasses

    prob = dataclasses.replace(quality_problem_module, target=quality_problem_module.initial)
    sol = solve(prob)
    assert sol.T_opt == 0.0
    assert sol.S_opt == 0.0
    assert sol.nlp_stats["status"] == "degenerate"
    assert sol.switching_times == []
    pmp = verify_pmp(sol, prob)
    assert pmp["n_checked"] == 0
    assert pmp["consistency_fraction"] == 1.0


def test_mesh_size_floor_is_enforced(quality_problem_module):
    import dataclasses

    prob = dataclasses.replace(quality_problem_module, mesh_size=10)
    with pytest.raises(ValueError, match="mesh_size"):
        solve(prob)


def test_quantity_scenario_is_infeasible_within_bounds(quantity_problem):
    """The predator cannot be pushed above y = 2 here: its per-capita growth
    delta*(x^2+u)/(1+x^2+alpha*u) - m - eps*y is below delta - m - eps*y =
    1 - 0.5*y for every control value, so y = 4 is unreachable."""
    with pytest.raises(InfeasibleControlError) as exc_info:
        solve(quantity_problem)
    diag = exc_info.value.diagnostics
    assert diag["seeds_tried"] >= 1
    assert diag["best_defect"] > 0 or diag["closest_approach"] > 0.5
    assert diag["closest_approach"] > 0.5


def test_calibrate_bounds_accepts_first_matching_candidate(quality_problem_module):
    report = calibrate_bounds(quality_problem_module, target_T=2.1, rel_tol=0.1)
    assert report["bounds"] == quality_problem_module.bounds
    assert report["rel_err"] < 0.1
    assert len(report["attempts"]) == 1
    assert report["solution"].T_opt == pytest.approx(QUALITY_T_OPT, rel=1e-4)
