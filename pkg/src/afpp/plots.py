"""Figure writers for the report path.

Each function renders one PNG next to the delimited artifact it
illustrates.  The reproducing command line is stamped into the figure
footer so a figure never detaches from its data recipe.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .model import ModelParams, prey_nullcline_y, predator_nullcline_y  # noqa: E402

__all__ = [
    "timeseries_figure",
    "phase_portrait_figure",
    "branch_figure",
    "sweep_figure",
    "atlas_figure",
    "control_figure",
]


def _finish(fig, path, command: str | None) -> Path:
    if command:
        fig.text(0.01, 0.005, f"reproduce: {command}", fontsize=6,
                 family="monospace", alpha=0.7)
    path = Path(path)
    fig.savefig(path, dpi=140, bbox_inches="tight")
    plt.close(fig)
    return path


def timeseries_figure(traj, path, command: str | None = None,
                      title: str = "") -> Path:
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(traj.times, traj.states[:, 0], label="x (pest)", lw=1.0)
    ax.plot(traj.times, traj.states[:, 1], label="y (predator)", lw=1.0)
    ax.set_xlabel("t")
    ax.set_ylabel("density")
    if title:
        ax.set_title(title)
    ax.legend(frameon=False)
    return _finish(fig, path, command)


def phase_portrait_figure(p: ModelParams, traj, equilibria, path,
                          command: str | None = None) -> Path:
    fig, ax = plt.subplots(figsize=(5.5, 5))
    if traj is not None:
        ax.plot(traj.states[:, 0], traj.states[:, 1], lw=0.8, color="tab:blue",
                label="trajectory")
    xs = np.linspace(1e-3, p.gamma * 1.05, 400)
    prey = [prey_nullcline_y(p, x) for x in xs]
    pred = [predator_nullcline_y(p, x) for x in xs]
    ax.plot(xs, prey, "--", color="tab:green", lw=0.9, label="prey nullcline")
    ax.plot(xs, pred, "--", color="tab:red", lw=0.9, label="predator nullcline")
    for e in equilibria:
        stable = e.is_stable() if hasattr(e, "is_stable") else False
        ax.plot(e.x, e.y, "o" if stable else "x", color="k", ms=6)
    ymax = max([e.y for e in equilibria] + [1.0]) * 1.6
    if traj is not None:
        ymax = max(ymax, float(np.max(traj.states[:, 1])) * 1.1)
    ax.set_xlim(0, p.gamma * 1.05)
    ax.set_ylim(0, ymax)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.legend(frameon=False, fontsize=8)
    return _finish(fig, path, command)


def branch_figure(points, events, path, param_name: str,
                  command: str | None = None) -> Path:
    fig, ax = plt.subplots(figsize=(7, 4.5))
    # the branch may be empty when no interior equilibrium exists at the
    # range start; analytic events are still worth drawing
    mu = np.array([bp.param_value for bp in points])
    xs = np.array([bp.equilibrium.x for bp in points])
    stable = np.array([bp.equilibrium.is_stable() for bp in points], dtype=bool)
    ax.plot(mu[stable], xs[stable], ".", ms=2.5, color="tab:blue", label="stable")
    ax.plot(mu[~stable], xs[~stable], ".", ms=2.5, color="tab:orange",
            label="unstable/saddle")
    ytop = float(np.max(xs)) * 0.95 if len(xs) else 1.0
    for ev in events:
        ax.axvline(ev.param_value, color="k", lw=0.6, ls=":")
        ax.annotate(ev.kind, (ev.param_value, ytop), fontsize=7,
                    rotation=90, va="top")
    ax.set_xlabel(param_name)
    ax.set_ylabel("x*")
    ax.legend(frameon=False, fontsize=8)
    return _finish(fig, path, command)


def sweep_figure(sweep, path, command: str | None = None) -> Path:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    ax1.plot(sweep.times, sweep.states[:, 0], lw=0.7)
    ax1.set_xlabel("t")
    ax1.set_ylabel("x")
    ax1.set_title("pest density under sweep")
    mask = sweep.times >= sweep.times[-1] - sweep.period
    ax2.plot(sweep.eps_schedule[mask], sweep.states[mask, 0], lw=0.8)
    ax2.set_xlabel("eps")
    ax2.set_ylabel("x")
    ax2.set_title(f"final cycle, loop area {sweep.loop_area_proxy:.4g}")
    return _finish(fig, path, command)


def atlas_figure(result, path, command: str | None = None) -> Path:
    labels = result.label_grid()
    uniq = sorted({lab for lab in labels.ravel()})
    code = {lab: i for i, lab in enumerate(uniq)}
    img = np.vectorize(code.get)(labels).astype(float)
    fig, ax = plt.subplots(figsize=(6, 5))
    pc = ax.pcolormesh(result.xi_grid, result.alpha_grid, img,
                       cmap="viridis", shading="nearest")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("xi")
    ax.set_ylabel("alpha")
    ax.set_title(f"base region {result.base_region}")
    cbar = fig.colorbar(pc, ax=ax, ticks=range(len(uniq)))
    cbar.ax.set_yticklabels(uniq, fontsize=7)
    return _finish(fig, path, command)


def control_figure(solution, problem, path, command: str | None = None) -> Path:
    fig, axes = plt.subplots(1, 3, figsize=(12, 3.8))
    axes[0].plot(solution.states[:, 0], solution.states[:, 1], "o-", ms=3, lw=0.9)
    axes[0].plot(*problem.initial, "s", color="tab:green", label="start")
    axes[0].plot(*problem.target, "*", color="tab:red", ms=10, label="target")
    axes[0].set_xlabel("x")
    axes[0].set_ylabel("y")
    axes[0].legend(frameon=False, fontsize=8)
    axes[1].plot(solution.t_grid, solution.states[:, 0], "o-", ms=2.5, lw=0.9,
                 label="x")
    axes[1].plot(solution.t_grid, solution.states[:, 1], "o-", ms=2.5, lw=0.9,
                 label="y")
    axes[1].set_xlabel("t")
    axes[1].legend(frameon=False, fontsize=8)
    axes[2].step(solution.s_grid[:-1], solution.controls, where="post")
    axes[2].set_xlabel("s")
    axes[2].set_ylabel("u")
    axes[2].set_title(f"S={solution.S_opt:.4g}, T={solution.T_opt:.4g}")
    return _finish(fig, path, command)
