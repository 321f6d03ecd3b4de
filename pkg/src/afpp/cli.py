"""Command-line front end.

Every capability is a subcommand writing CSV/JSON artifacts plus a rendered
figure into the output directory.  Exit codes: 0 success, 2 configuration
error, 3 numerical failure, 4 infeasible control problem.  Partial results
are written with ``"truncated": true`` in their metadata before a nonzero
exit.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import bifurcation as bif
from . import global_dynamics as gd
from . import optimal_control as oc
from . import plots
from . import simulation as sim
from . import verify as verify_mod
from .equilibria import TOL_HYP, find_all_equilibria, find_interior_equilibria, stability_window
from .global_dynamics import phi_values
from .model import ModelParams
from .output import build_metadata, write_csv, write_json

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_INFEASIBLE = 4

_PARAM_KEYS = {"gamma", "alpha", "xi", "epsilon", "m", "delta", "allow_nonfeasible"}
_PROBLEM_KEYS = {"params", "control", "bounds", "initial", "target",
                 "mesh_size", "in_transformed_time"}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    params: ModelParams | None
    out_dir: Path
    seed: int
    tolerances: dict = field(default_factory=dict)
    command_line: str = ""


def _load_params_file(path: str) -> ModelParams:
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read params file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"params file {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"params file {path} must hold a JSON object")
    unknown = set(raw) - _PARAM_KEYS
    if unknown:
        raise ConfigError(f"unknown parameter key(s): {sorted(unknown)}")
    missing = _PARAM_KEYS - {"allow_nonfeasible"} - set(raw)
    if missing:
        raise ConfigError(f"missing parameter key(s): {sorted(missing)}")
    try:
        return ModelParams(**raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def _build_config(args: argparse.Namespace, need_params: bool = True) -> RunConfig:
    params = None
    if getattr(args, "params", None):
        params = _load_params_file(args.params)
    elif need_params:
        raise ConfigError("--params <file> is required for this subcommand")
    out_dir = Path(args.out)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        probe = out_dir / ".write-probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise ConfigError(f"output directory {out_dir} is not writable: {exc}") from exc
    tolerances = {
        "tol_hyp": args.tol_hyp,
        "tol_bif": args.tol_bif,
        "tol_pos": args.tol_pos,
        "tol_bound": args.tol_bound,
    }
    return RunConfig(subcommand=args.subcommand, params=params, out_dir=out_dir,
                     seed=args.seed, tolerances=tolerances,
                     command_line="afpp " + " ".join(sys.argv[1:]))


def _params_dict(p: ModelParams | None) -> dict:
    if p is None:
        return {}
    return {k: getattr(p, k) for k in
            ("gamma", "alpha", "xi", "epsilon", "m", "delta")}


def _eig_cells(e) -> list:
    l1, l2 = e.eigenvalues
    return [l1.real, l1.imag, l2.real, l2.imag]


# ---------------------------------------------------------------------------
# subcommands


def cmd_equilibria(cfg: RunConfig, args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    p = cfg.params
    eqs = find_all_equilibria(p, tol_hyp=cfg.tolerances["tol_hyp"])
    rows = [[e.kind, e.x, e.y, *_eig_cells(e), e.stability.value,
             json.dumps(e.flags, sort_keys=True, default=str)] for e in eqs]
    meta = build_metadata(cfg.command_line, _params_dict(p), cfg.tolerances,
                          cfg.seed, time.perf_counter() - t0)
    write_csv(cfg.out_dir / "equilibria.csv",
              ["kind", "x", "y", "re_lambda1", "im_lambda1", "re_lambda2",
               "im_lambda2", "class", "flags"], rows, meta)
    lo, hi = stability_window(p)
    f1, f2, f3 = phi_values(p)
    write_json(cfg.out_dir / "equilibria_summary.json", {
        "equilibria": [{"kind": e.kind, "x": e.x, "y": e.y,
                        "class": e.stability.value, "residual": e.residual}
                       for e in eqs],
        "phi": {"phi1": f1, "phi2": f2, "phi3": f3},
        "stability_window": {"lo": lo, "hi": hi},
    }, meta)
    plots.phase_portrait_figure(p, None, eqs, cfg.out_dir / "equilibria.png",
                                command=cfg.command_line)
    return EXIT_OK


def cmd_simulate(cfg: RunConfig, args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    p = cfg.params
    initial = (args.x0, args.y0)
    eps_fn = None
    if args.eps_min is not None or args.eps_max is not None:
        if None in (args.eps_min, args.eps_max, args.eps_period):
            raise ConfigError("schedule needs --eps-min, --eps-max and --eps-period")
        eps_fn = sim.sine_eps_schedule(args.eps_min, args.eps_max, args.eps_period)

    truncated = False
    try:
        if eps_fn is None:
            traj = sim.integrate(p, initial, args.t_end, rtol=args.rtol,
                                 atol=args.atol)
        else:
            traj = sim.integrate_nonautonomous(p, eps_fn, initial, args.t_end,
                                               rtol=args.rtol, atol=args.atol)
    except sim.IntegrationError as exc:
        traj = exc.partial
        truncated = True

    meta = build_metadata(
        cfg.command_line, _params_dict(p),
        {**cfg.tolerances, "rtol": args.rtol, "atol": args.atol},
        cfg.seed, time.perf_counter() - t0, truncated=truncated,
        extra={"events": traj.events if traj is not None else []})
    if traj is not None:
        rows = zip(traj.times, traj.states[:, 0], traj.states[:, 1], traj.eps_values)
        write_csv(cfg.out_dir / "trajectory.csv", ["t", "x", "y", "eps_effective"],
                  rows, meta)
        pos = sim.check_positivity(traj, tol=cfg.tolerances["tol_pos"])
        bound = sim.check_boundedness(p, traj, tol=cfg.tolerances["tol_bound"])
        write_json(cfg.out_dir / "trajectory_summary.json", {
            "final_state": list(traj.final_state()),
            "positivity": pos, "boundedness": {k: v for k, v in bound.items()
                                               if k != "envelope"},
        }, meta)
        plots.timeseries_figure(traj, cfg.out_dir / "trajectory.png",
                                command=cfg.command_line)
        eqs = find_all_equilibria(p, tol_hyp=cfg.tolerances["tol_hyp"])
        plots.phase_portrait_figure(p, traj, eqs, cfg.out_dir / "phase.png",
                                    command=cfg.command_line)
    return EXIT_NUMERIC if truncated else EXIT_OK


def cmd_bifurcate(cfg: RunConfig, args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    p = cfg.params
    name = args.param_name
    lo, hi = args.lo, args.hi
    if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
        raise ConfigError(f"need lo < hi, got [{lo}, {hi}]")
    tol_bif = cfg.tolerances["tol_bif"]

    events: list[bif.BifurcationEvent] = []
    if name == "xi":
        for fn in (bif.bracket_transcritical, bif.bracket_e2_creation):
            try:
                events.append(fn(p, lo, hi))
            except (ValueError, bif.DegenerateParameterError):
                pass
    events.extend(bif.detect_hopf(p, name, (lo, hi), n_grid=args.n_grid,
                                  tol=tol_bif))

    truncated = False
    points: list[bif.BranchPoint] = []
    seeds = find_interior_equilibria(p.with_updates(**{name: lo, "allow_nonfeasible": True}))
    if seeds:
        points = bif.continue_branch(p, name, (lo, hi), seeds[0])
        truncated = any("truncated" in str(bp.equilibrium.flags.get("notice", ""))
                        for bp in points)
        events.extend(bif.branch_fold_events(p, name, points))
        events.extend(bif.branch_focus_node_events(p, name, points))
    oracle = bif.resultant_double_root_params(p, name, (lo, hi))

    meta = build_metadata(cfg.command_line, _params_dict(p), cfg.tolerances,
                          cfg.seed, time.perf_counter() - t0, truncated=truncated,
                          extra={"param_name": name, "range": [lo, hi]})
    rows = [[bp.param_value, bp.equilibrium.x, bp.equilibrium.y,
             *_eig_cells(bp.equilibrium), bp.equilibrium.stability.value]
            for bp in points]
    write_csv(cfg.out_dir / "branch.csv",
              ["param", "x", "y", "re_lambda1", "im_lambda1", "re_lambda2",
               "im_lambda2", "class"], rows, meta)
    write_json(cfg.out_dir / "events.json", {
        "events": [{"kind": ev.kind, "param_name": ev.param_name,
                    "param_value": ev.param_value, "location": list(ev.location),
                    "bracket": list(ev.bracket), "diagnostics": ev.diagnostics}
                   for ev in events],
        "fold_oracle": oracle,
        "n_branch_points": len(points),
    }, meta)
    plots.branch_figure(points, events, cfg.out_dir / "branch.png", name,
                        command=cfg.command_line)
    return EXIT_NUMERIC if truncated else EXIT_OK


def _default_sweep_start(p: ModelParams, eps_mid: float) -> tuple[float, float]:
    pm = p.with_updates(epsilon=eps_mid)
    interior = find_interior_equilibria(pm)
    stable = [e for e in interior if e.is_stable()]
    pool = stable or interior
    if pool:
        e = min(pool, key=lambda q: q.x)
        return (e.x, e.y)
    return (0.5 * p.gamma, 0.1)


def cmd_hysteresis(cfg: RunConfig, args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    p = cfg.params
    if args.eps_min > args.eps_max:
        raise ConfigError("--eps-min must not exceed --eps-max")
    initial = ((args.x0, args.y0) if args.x0 is not None and args.y0 is not None
               else _default_sweep_start(p, 0.5 * (args.eps_min + args.eps_max)))
    sweep = bif.hysteresis_sweep(p, args.eps_min, args.eps_max, args.period,
                                 args.cycles, initial)
    x = sweep.states[:, 0]
    jumps = bif.detect_sweep_jumps(sweep, 0.5 * (float(np.min(x)) + float(np.max(x))))
    meta = build_metadata(cfg.command_line, _params_dict(p), cfg.tolerances,
                          cfg.seed, time.perf_counter() - t0,
                          extra={"eps_min": args.eps_min, "eps_max": args.eps_max,
                                 "period": args.period, "cycles": args.cycles,
                                 "initial": list(initial)})
    rows = zip(sweep.times, sweep.eps_schedule, sweep.states[:, 0], sweep.states[:, 1])
    write_csv(cfg.out_dir / "sweep.csv", ["t", "eps", "x", "y"], rows, meta)
    write_json(cfg.out_dir / "sweep_summary.json", {
        "loop_area_proxy": sweep.loop_area_proxy,
        "jumps": jumps,
    }, meta)
    plots.sweep_figure(sweep, cfg.out_dir / "sweep.png", command=cfg.command_line)
    return EXIT_OK


def cmd_atlas(cfg: RunConfig, args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    p = cfg.params
    alpha_grid = np.logspace(np.log10(args.alpha_min), np.log10(args.alpha_max),
                             args.n_alpha)
    xi_grid = np.logspace(np.log10(args.xi_min), np.log10(args.xi_max), args.n_xi)
    result = gd.atlas(p, alpha_grid, xi_grid)
    report = gd.consequences_report(p, alpha_grid, xi_grid, precomputed=result)
    meta = build_metadata(cfg.command_line, _params_dict(p), cfg.tolerances,
                          cfg.seed, time.perf_counter() - t0,
                          extra={"legend": gd.ATLAS_LEGEND,
                                 "n_alpha": args.n_alpha, "n_xi": args.n_xi})
    rows = [[c.alpha, c.xi, c.phi1, c.phi2, c.phi3, c.subregion,
             c.interior_count, c.bistable] for c in result.cells]
    write_csv(cfg.out_dir / "atlas.csv",
              ["alpha", "xi", "phi1", "phi2", "phi3", "subregion",
               "interior_count", "bistable"], rows, meta)
    counts: dict[str, int] = {}
    for c in result.cells:
        counts[c.subregion] = counts.get(c.subregion, 0) + 1
    write_json(cfg.out_dir / "atlas_summary.json", {
        "base_region": result.base_region,
        "subregion_counts": counts,
        "n_errors": sum(1 for c in result.cells if c.error),
        "pest_floor_closed_form": report["pest_floor_closed_form"],
        "min_stable_pest_level_overall": report["min_stable_pest_level_overall"],
        "floor_respected": report["floor_respected"],
        "stable_prey_free_cells": sum(
            1 for c in result.cells
            if c.error is None and c.flags.get("E2_class") in
            ("StableNode", "StableFocus")),
    }, meta)
    plots.atlas_figure(result, cfg.out_dir / "atlas.png", command=cfg.command_line)
    return EXIT_OK


def _load_problem(args: argparse.Namespace, cfg: RunConfig) -> oc.ControlProblem:
    if args.problem:
        try:
            raw = json.loads(Path(args.problem).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read problem file {args.problem}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"problem file is not valid JSON: {exc}") from exc
        unknown = set(raw) - _PROBLEM_KEYS
        if unknown:
            raise ConfigError(f"unknown problem key(s): {sorted(unknown)}")
        pd = raw.get("params")
        if not isinstance(pd, dict):
            raise ConfigError("problem file must carry a params object")
        unknown = set(pd) - _PARAM_KEYS
        if unknown:
            raise ConfigError(f"unknown parameter key(s): {sorted(unknown)}")
        try:
            params = ModelParams(**pd)
            return oc.ControlProblem(
                params=params, control=raw["control"],
                bounds=tuple(raw["bounds"]), initial=tuple(raw["initial"]),
                target=tuple(raw["target"]),
                mesh_size=int(raw.get("mesh_size", 20)),
                in_transformed_time=bool(raw.get("in_transformed_time", True)))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"invalid problem document: {exc}") from exc
    if cfg.params is None:
        raise ConfigError("control needs --problem <file> or --params plus endpoint flags")
    for flag in ("control", "u_min", "u_max", "x0", "y0", "xt", "yt"):
        if getattr(args, flag) is None:
            raise ConfigError(f"--{flag.replace('_', '-')} is required without --problem")
    try:
        return oc.ControlProblem(
            params=cfg.params, control=args.control,
            bounds=(args.u_min, args.u_max), initial=(args.x0, args.y0),
            target=(args.xt, args.yt), mesh_size=args.mesh,
            in_transformed_time=not args.physical_time)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def cmd_control(cfg: RunConfig, args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    problem = _load_problem(args, cfg)
    calibration = None
    try:
        if args.calibrate_T is not None:
            calibration = oc.calibrate_bounds(problem, args.calibrate_T,
                                              rel_tol=args.calibrate_rel_tol)
            if calibration["solution"] is None:
                raise oc.InfeasibleControlError(
                    "no candidate bounds matched the requested time",
                    diagnostics={"attempts": calibration["attempts"]})
            solution = calibration["solution"]
            problem = oc.ControlProblem(
                params=problem.params, control=problem.control,
                bounds=calibration["bounds"], initial=problem.initial,
                target=problem.target, mesh_size=problem.mesh_size,
                in_transformed_time=problem.in_transformed_time)
        else:
            solution = oc.solve(problem)
    except oc.InfeasibleControlError as exc:
        meta = build_metadata(cfg.command_line, _params_dict(problem.params),
                              cfg.tolerances, cfg.seed,
                              time.perf_counter() - t0, truncated=True)
        write_json(cfg.out_dir / "control_summary.json", {
            "status": "infeasible",
            "message": str(exc),
            "diagnostics": exc.diagnostics,
            "problem": _problem_dict(problem),
        }, meta)
        print(f"infeasible control problem: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE

    pmp = oc.verify_pmp(solution, problem)
    resim = oc.resimulate_physical(problem, solution)
    N = problem.mesh_size
    sigma = pmp.get("sigma")
    sigma_col = list(sigma) + [sigma[-1]] if sigma is not None else [float("nan")] * (N + 1)
    u_col = list(solution.controls) + [solution.controls[-1]]
    meta = build_metadata(cfg.command_line, _params_dict(problem.params),
                          cfg.tolerances, cfg.seed, time.perf_counter() - t0,
                          extra={"problem": _problem_dict(problem),
                                 "calibrated": calibration is not None})
    rows = zip(solution.s_grid, solution.t_grid, solution.states[:, 0],
               solution.states[:, 1], u_col, sigma_col)
    write_csv(cfg.out_dir / "control.csv", ["s", "t", "x", "y", "u", "sigma"],
              rows, meta)
    write_json(cfg.out_dir / "control_summary.json", {
        "S_opt": solution.S_opt,
        "T_opt": solution.T_opt,
        "switching_times": solution.switching_times,
        "nlp_stats": solution.nlp_stats,
        "pmp": {k: v for k, v in pmp.items() if k != "sigma"},
        "physical_resimulation": {"target_error": resim["target_error"],
                                  "T": resim["T"]},
        "calibration_attempts": (calibration or {}).get("attempts"),
    }, meta)
    plots.control_figure(solution, problem, cfg.out_dir / "control.png",
                         command=cfg.command_line)
    return EXIT_OK


def _problem_dict(problem: oc.ControlProblem) -> dict:
    return {"params": _params_dict(problem.params), "control": problem.control,
            "bounds": list(problem.bounds), "initial": list(problem.initial),
            "target": list(problem.target), "mesh_size": problem.mesh_size,
            "in_transformed_time": problem.in_transformed_time}


def cmd_verify(cfg: RunConfig, args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    report = verify_mod.run_all(seed=cfg.seed, n_boundedness=args.n_runs,
                                n_fd=args.n_runs, n_lemma=2 * args.n_runs,
                                n_residual=2 * args.n_runs)
    meta = build_metadata(cfg.command_line, {}, cfg.tolerances, cfg.seed,
                          time.perf_counter() - t0)
    write_json(cfg.out_dir / "verify_report.json", report, meta)
    for name in ("positivity_boundedness", "jacobian_fd", "adjoint_fd",
                 "lemma_signs", "equilibrium_residuals"):
        status = "PASS" if report[name]["ok"] else "FAIL"
        print(f"{name}: {status}")
    return EXIT_OK if report["ok"] else EXIT_NUMERIC


# ---------------------------------------------------------------------------
# parser


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--params", help="JSON file with the six model parameters")
    sp.add_argument("--out", default=".", help="output directory")
    sp.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    sp.add_argument("--tol-hyp", type=float, default=TOL_HYP,
                    help="hyperbolicity margin for classification")
    sp.add_argument("--tol-bif", type=float, default=bif.TOL_BIF,
                    help="bifurcation bracket width")
    sp.add_argument("--tol-pos", type=float, default=sim.TOL_POS,
                    help="positivity monitor tolerance")
    sp.add_argument("--tol-bound", type=float, default=1e-6,
                    help="boundedness monitor tolerance")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="afpp",
        description="Predator-prey toolkit with additional food, predator "
                    "competition and time-optimal food control")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    sp = sub.add_parser("equilibria", help="locate and classify all equilibria")
    _add_common(sp)
    sp.set_defaults(func=cmd_equilibria, need_params=True)

    sp = sub.add_parser("simulate", help="integrate the system")
    _add_common(sp)
    sp.add_argument("--x0", type=float, required=True)
    sp.add_argument("--y0", type=float, required=True)
    sp.add_argument("--t-end", type=float, required=True)
    sp.add_argument("--rtol", type=float, default=1e-8)
    sp.add_argument("--atol", type=float, default=1e-10)
    sp.add_argument("--eps-min", type=float, default=None,
                    help="sine schedule minimum (enables non-autonomous run)")
    sp.add_argument("--eps-max", type=float, default=None)
    sp.add_argument("--eps-period", type=float, default=None)
    sp.set_defaults(func=cmd_simulate, need_params=True)

    sp = sub.add_parser("bifurcate", help="continuation and event detection")
    _add_common(sp)
    sp.add_argument("--param-name", required=True,
                    choices=["gamma", "alpha", "xi", "epsilon", "m", "delta"])
    sp.add_argument("--lo", type=float, required=True)
    sp.add_argument("--hi", type=float, required=True)
    sp.add_argument("--n-grid", type=int, default=400)
    sp.set_defaults(func=cmd_bifurcate, need_params=True)

    sp = sub.add_parser("hysteresis", help="quasi-static sine sweep of eps")
    _add_common(sp)
    sp.add_argument("--eps-min", type=float, required=True)
    sp.add_argument("--eps-max", type=float, required=True)
    sp.add_argument("--period", type=float, default=20000.0)
    sp.add_argument("--cycles", type=float, default=1.25)
    sp.add_argument("--x0", type=float, default=None)
    sp.add_argument("--y0", type=float, default=None)
    sp.set_defaults(func=cmd_hysteresis, need_params=True)

    sp = sub.add_parser("atlas", help="classify the alpha-xi plane")
    _add_common(sp)
    sp.add_argument("--alpha-min", type=float, default=1e-2)
    sp.add_argument("--alpha-max", type=float, default=1e2)
    sp.add_argument("--xi-min", type=float, default=1e-2)
    sp.add_argument("--xi-max", type=float, default=1e2)
    sp.add_argument("--n-alpha", type=int, default=200)
    sp.add_argument("--n-xi", type=int, default=200)
    sp.set_defaults(func=cmd_atlas, need_params=True)

    sp = sub.add_parser("control", help="solve a time-optimal control problem")
    _add_common(sp)
    sp.add_argument("--problem", help="JSON problem document")
    sp.add_argument("--control", choices=[oc.QUALITY, oc.QUANTITY], default=None)
    sp.add_argument("--u-min", type=float, default=None)
    sp.add_argument("--u-max", type=float, default=None)
    sp.add_argument("--x0", type=float, default=None)
    sp.add_argument("--y0", type=float, default=None)
    sp.add_argument("--xt", type=float, default=None)
    sp.add_argument("--yt", type=float, default=None)
    sp.add_argument("--mesh", type=int, default=20)
    sp.add_argument("--physical-time", action="store_true",
                    help="mesh the physical time instead of the transformed one")
    sp.add_argument("--calibrate-T", type=float, default=None,
                    help="search bound candidates for a reported optimal time")
    sp.add_argument("--calibrate-rel-tol", type=float, default=0.1)
    sp.set_defaults(func=cmd_control, need_params=False)

    sp = sub.add_parser("verify", help="run the randomized invariant suites")
    _add_common(sp)
    sp.add_argument("--n-runs", type=int, default=1000)
    sp.set_defaults(func=cmd_verify, need_params=False)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = _build_config(args, need_params=getattr(args, "need_params", True))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(cfg, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except oc.InfeasibleControlError as exc:
        print(f"infeasible control problem: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (sim.IntegrationError, bif.DegenerateParameterError,
            np.linalg.LinAlgError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
