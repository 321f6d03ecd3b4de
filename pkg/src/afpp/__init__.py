"""Toolkit for a predator-prey model with additional food for the predator.

Predation follows a sigmoid (type-III) response, the predator is subject to
intra-specific competition, and the additional food enters through its
quality and quantity.  The package locates and classifies equilibria, tracks
bifurcations along one-parameter branches, classifies the quality-quantity
plane, measures hysteresis under slow parameter sweeps, and solves
time-optimal control problems that steer the system to a prescribed state by
varying either food characteristic.
"""

from .bifurcation import (
    TOL_BIF,
    BifurcationEvent,
    BranchPoint,
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
from .equilibria import (
    TOL_HYP,
    Equilibrium,
    QuinticCoefficients,
    StabilityClass,
    classify,
    find_all_equilibria,
    find_interior_equilibria,
    interior_quintic,
    interior_trace_det,
    pest_floor,
    stability_window,
)
from .global_dynamics import (
    ATLAS_LEGEND,
    AtlasCell,
    AtlasResult,
    PhiCurves,
    RegionLabel,
    atlas,
    classify_base_region,
    consequences_report,
    phi_values,
)
from .model import ModelParams, jacobian, rhs
from .optimal_control import (
    QUALITY,
    QUANTITY,
    ControlProblem,
    ControlSolution,
    InfeasibleControlError,
    adjoint_rhs,
    calibrate_bounds,
    hamiltonian,
    resimulate_physical,
    singular_arc_ratios,
    solve,
    switching_function,
    transformed_rhs,
    verify_pmp,
)
from .simulation import (
    BoundEnvelope,
    IntegrationError,
    Trajectory,
    bound_envelope,
    check_boundedness,
    check_positivity,
    gronwall_envelope,
    integrate,
    integrate_nonautonomous,
    sine_eps_schedule,
)

__all__ = [
    "ATLAS_LEGEND",
    "AtlasCell",
    "AtlasResult",
    "BifurcationEvent",
    "BoundEnvelope",
    "BranchPoint",
    "ControlProblem",
    "ControlSolution",
    "DegenerateParameterError",
    "Equilibrium",
    "InfeasibleControlError",
    "IntegrationError",
    "ModelParams",
    "PhiCurves",
    "QUALITY",
    "QUANTITY",
    "QuinticCoefficients",
    "RegionLabel",
    "StabilityClass",
    "SweepResult",
    "TOL_BIF",
    "TOL_HYP",
    "Trajectory",
    "adjoint_rhs",
    "atlas",
    "bound_envelope",
    "bracket_e2_creation",
    "bracket_transcritical",
    "branch_focus_node_events",
    "branch_fold_events",
    "calibrate_bounds",
    "check_boundedness",
    "check_positivity",
    "classify",
    "classify_base_region",
    "consequences_report",
    "continue_branch",
    "detect_hopf",
    "detect_sweep_jumps",
    "e1_second_eigenvalue",
    "find_all_equilibria",
    "find_interior_equilibria",
    "gronwall_envelope",
    "hamiltonian",
    "hysteresis_sweep",
    "integrate",
    "integrate_nonautonomous",
    "interior_quintic",
    "interior_trace_det",
    "jacobian",
    "pest_floor",
    "phi_values",
    "resimulate_physical",
    "resultant_double_root_params",
    "rhs",
    "saddlenode_sotomayor",
    "saddlenode_xi_critical",
    "sine_eps_schedule",
    "singular_arc_ratios",
    "solve",
    "stability_window",
    "switching_function",
    "transcritical_sotomayor",
    "transcritical_xi_critical",
    "transformed_rhs",
    "verify_pmp",
]

__version__ = "0.1.0"
