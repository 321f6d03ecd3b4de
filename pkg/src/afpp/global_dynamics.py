"""Parameter-plane classification by the phi sign curves.

Three scalar curves organize the (alpha, xi) plane:

    phi1 = delta*xi - m*(1 + alpha*xi)      existence of the prey-free point
    phi2 = phi1 + (delta - m)*gamma^2       stability exchange of (gamma, 0)
    phi3 = 1 + alpha*xi - xi                sign gate for the interior
                                            stability window

The base region of a configuration is read off its no-additional-food
system (xi = 0): no interior equilibrium (R1), a unique stable interior
node (R2), or a unique stable interior focus (R3).  Atlas subregions are
labeled A<base><k> with k an operational class computed from the sign
triple and a bistability flag; see ATLAS_LEGEND.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .equilibria import StabilityClass, find_all_equilibria, pest_floor
from .model import ModelParams

__all__ = [
    "PhiCurves",
    "RegionLabel",
    "AtlasCell",
    "AtlasResult",
    "ATLAS_LEGEND",
    "phi_values",
    "classify_base_region",
    "atlas",
    "consequences_report",
]

ATLAS_LEGEND = (
    "subregion A<b><k>: b = base region of the xi=0 system (1 no interior, "
    "2 stable interior node, 3 stable interior focus, 0 unclassified); "
    "k = 1 phi1<=0, phi2<=0, monostable; "
    "k = 2 phi1<=0, phi2<=0, bistable (stable boundary and stable interior); "
    "k = 3 phi1<=0, phi2>0, phi3>0; "
    "k = 4 phi1<=0, phi2>0, phi3<=0; "
    "k = 5 phi1>0 (prey-free point present, always a saddle)"
)

_STABLE = {StabilityClass.STABLE_NODE, StabilityClass.STABLE_FOCUS}


@dataclass(frozen=True)
class PhiCurves:
    """The three organizing curves as functions of (alpha, xi)."""

    gamma: float
    epsilon: float
    m: float
    delta: float

    def phi1(self, alpha: float, xi: float) -> float:
        return self.delta * xi - self.m * (1.0 + alpha * xi)

    def phi2(self, alpha: float, xi: float) -> float:
        return self.phi1(alpha, xi) + (self.delta - self.m) * self.gamma**2

    def phi3(self, alpha: float, xi: float) -> float:
        return 1.0 + alpha * xi - xi


@dataclass(frozen=True)
class RegionLabel:
    base_region: str
    subregion: str
    flags: dict = field(default_factory=dict)


@dataclass(frozen=True)
class AtlasCell:
    alpha: float
    xi: float
    phi1: float
    phi2: float
    phi3: float
    subregion: str
    interior_count: int
    bistable: bool
    flags: dict = field(default_factory=dict)
    error: str | None = None


@dataclass
class AtlasResult:
    base_region: str
    alpha_grid: np.ndarray
    xi_grid: np.ndarray
    cells: list[AtlasCell]
    legend: str = ATLAS_LEGEND

    def label_grid(self) -> np.ndarray:
        out = np.array([c.subregion for c in self.cells], dtype=object)
        return out.reshape(len(self.alpha_grid), len(self.xi_grid))


def phi_values(p: ModelParams) -> tuple[float, float, float]:
    """phi1, phi2, phi3 at the configuration's own (alpha, xi)."""
    c = PhiCurves(p.gamma, p.epsilon, p.m, p.delta)
    return (c.phi1(p.alpha, p.xi), c.phi2(p.alpha, p.xi), c.phi3(p.alpha, p.xi))


def classify_base_region(p_no_food: ModelParams) -> RegionLabel:
    """Archetype of the no-additional-food system.

    R1: no interior equilibrium.  R2: unique interior equilibrium, a stable
    node.  R3: unique interior equilibrium, a stable focus.  Anything else
    (multiple interior points, or a unique one that is unstable or a saddle)
    falls outside the three archetypes and is reported as Unclassified with
    the offending configuration in the flags.
    """
    if p_no_food.xi != 0.0:
        raise ValueError(f"base-region classification requires xi=0, got xi={p_no_food.xi}")
    eqs = find_all_equilibria(p_no_food)
    interior = [e for e in eqs if e.kind == "interior"]
    flags = {
        "interior_count": len(interior),
        "interior_classes": [e.stability.value for e in interior],
    }
    if not interior:
        return RegionLabel(base_region="R1", subregion="", flags=flags)
    if len(interior) == 1:
        s = interior[0].stability
        if s == StabilityClass.STABLE_NODE:
            return RegionLabel(base_region="R2", subregion="", flags=flags)
        if s == StabilityClass.STABLE_FOCUS:
            return RegionLabel(base_region="R3", subregion="", flags=flags)
    flags["reason"] = ("multiple interior equilibria at xi=0"
                       if len(interior) > 1 else
                       f"unique interior equilibrium is {interior[0].stability.value}")
    return RegionLabel(base_region="Unclassified", subregion="", flags=flags)


def _subregion_k(phi1: float, phi2: float, phi3: float, bistable: bool) -> int:
    if phi1 > 0:
        return 5
    if phi2 > 0:
        return 3 if phi3 > 0 else 4
    return 2 if bistable else 1


def _cell(p: ModelParams, base_idx: int, a: float, x: float,
          curves: PhiCurves) -> AtlasCell:
    f1, f2, f3 = curves.phi1(a, x), curves.phi2(a, x), curves.phi3(a, x)
    pm = p.with_updates(alpha=float(a), xi=float(x))
    try:
        eqs = find_all_equilibria(pm)
    except Exception as exc:  # pragma: no cover - defensive per-cell capture
        return AtlasCell(alpha=a, xi=x, phi1=f1, phi2=f2, phi3=f3,
                         subregion=f"A{base_idx}0", interior_count=-1,
                         bistable=False, error=str(exc))
    by_kind = {e.kind: e for e in eqs if e.kind != "interior"}
    interior = [e for e in eqs if e.kind == "interior"]
    e1_stable = by_kind["E1"].stability in _STABLE
    stable_interior = [e for e in interior if e.stability in _STABLE]
    bistable = e1_stable and len(stable_interior) >= 1
    k = _subregion_k(f1, f2, f3, bistable)
    flags = {
        "E0_class": by_kind["E0"].stability.value,
        "E1_class": by_kind["E1"].stability.value,
        "E2_exists": "E2" in by_kind,
        "E2_class": by_kind["E2"].stability.value if "E2" in by_kind else None,
        "interior_classes": [e.stability.value for e in interior],
        "stable_interior_x": [e.x for e in stable_interior],
    }
    return AtlasCell(alpha=float(a), xi=float(x), phi1=f1, phi2=f2, phi3=f3,
                     subregion=f"A{base_idx}{k}", interior_count=len(interior),
                     bistable=bistable, flags=flags)


def atlas(p_base: ModelParams, alpha_grid, xi_grid) -> AtlasResult:
    """Classify every (alpha, xi) cell of the grid.

    Cell records carry the phi values, the subregion label, equilibrium
    class flags, the interior count and the bistability flag (stable
    boundary point coexisting with a stable interior point).  Per-cell
    failures are captured in the cell's ``error`` field; the grid is always
    returned in full.
    """
    alpha_grid = np.asarray(alpha_grid, dtype=float)
    xi_grid = np.asarray(xi_grid, dtype=float)
    for g, name in ((alpha_grid, "alpha_grid"), (xi_grid, "xi_grid")):
        if g.ndim != 1 or len(g) == 0 or np.any(g <= 0) or np.any(np.diff(g) <= 0):
            raise ValueError(f"{name} must be 1-d, strictly positive and sorted")
    base = classify_base_region(p_base.with_updates(xi=0.0, allow_nonfeasible=True))
    base_idx = {"R1": 1, "R2": 2, "R3": 3}.get(base.base_region, 0)
    curves = PhiCurves(p_base.gamma, p_base.epsilon, p_base.m, p_base.delta)
    cells = [_cell(p_base, base_idx, a, x, curves)
             for a in alpha_grid for x in xi_grid]
    return AtlasResult(base_region=base.base_region, alpha_grid=alpha_grid,
                       xi_grid=xi_grid, cells=cells)


def consequences_report(p_base: ModelParams, alpha_grid, xi_grid,
                        precomputed: AtlasResult | None = None) -> dict:
    """Management consequences over an atlas.

    For each cell: whether pest eradication is reachable as a stable state
    (never: the prey-free point is a saddle whenever it exists), whether
    pest dominance is a risk (the prey-only point is stable), and the
    minimum pest level among stable coexistence states.  The report also
    carries the closed-form floor eps/(1 + eps/gamma) for comparison with
    the empirical minimum.
    """
    result = precomputed if precomputed is not None else atlas(p_base, alpha_grid, xi_grid)
    floor = pest_floor(p_base)
    per_cell = []
    min_stable_x = np.inf
    for c in result.cells:
        if c.error is not None:
            per_cell.append({"alpha": c.alpha, "xi": c.xi, "error": c.error})
            continue
        stable_x = c.flags.get("stable_interior_x", [])
        if stable_x:
            min_stable_x = min(min_stable_x, min(stable_x))
        per_cell.append({
            "alpha": c.alpha,
            "xi": c.xi,
            "subregion": c.subregion,
            "pest_eradication": ("unreachable as stable state"
                                 if c.flags["E2_exists"] else "prey-free point absent"),
            "pest_dominance_risk": c.flags["E1_class"] in
                                   (StabilityClass.STABLE_NODE.value,
                                    StabilityClass.STABLE_FOCUS.value),
            "min_stable_pest_level": min(stable_x) if stable_x else None,
        })
    return {
        "legend": ATLAS_LEGEND,
        "base_region": result.base_region,
        "pest_floor_closed_form": floor,
        "min_stable_pest_level_overall": (None if not np.isfinite(min_stable_x)
                                          else float(min_stable_x)),
        "floor_respected": (True if not np.isfinite(min_stable_x)
                            else bool(min_stable_x >= floor - 1e-9)),
        "cells": per_cell,
    }
