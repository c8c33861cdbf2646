"""Derivative-free angle search minimizing the exact QAOA expectation.

Two stages are available.  At one layer the default is a dense grid scan
over the angle box followed by a simplex polish from the best cell,
which behaves like a cheap global method on the small, periodic p = 1
landscape.  At two or more layers a grid is no longer affordable and the
search falls back to multistart local polishing from seeded uniform
draws.  The zero-angle point is always evaluated, so the result is never
worse than the uniform-superposition baseline.

All randomness is derived from the config seed through counter-based
seed sequences, so results are reproducible and adding restarts never
reshuffles earlier ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import Bounds, minimize as _scipy_minimize

from .hamiltonians import DiagonalCost
from .simulator import QaoaParams, expectation, run_qaoa

GRID_REFINE = "grid_refine"
MULTISTART = "multistart"
STRATEGIES = (GRID_REFINE, MULTISTART)

#: Angle boxes; gamma has period 2*pi on integer-valued diagonals and the
#: mixer repeats (up to global phase) with period pi.
GAMMA_BOUNDS = (-math.pi, math.pi)
BETA_BOUNDS = (-math.pi / 2, math.pi / 2)


@dataclass(frozen=True)
class OptimizeConfig:
    p: int = 1
    strategy: str = GRID_REFINE
    grid_points: int = 32
    restarts: int = 20
    max_evals: int = 500
    tol: float = 1e-6
    seed: int = 0
    gamma_bounds: tuple[float, float] = GAMMA_BOUNDS
    beta_bounds: tuple[float, float] = BETA_BOUNDS

    def __post_init__(self) -> None:
        if self.p < 1:
            raise ValueError("p must be >= 1")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"strategy must be one of {STRATEGIES}")
        if self.grid_points < 2:
            raise ValueError("grid_points must be >= 2")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.max_evals < 1:
            raise ValueError("max_evals must be >= 1")
        for lo, hi in (self.gamma_bounds, self.beta_bounds):
            if not lo < hi:
                raise ValueError("bounds must be nonempty intervals")

    def bounds_vector(self) -> tuple[np.ndarray, np.ndarray]:
        """Lower/upper bound arrays for the flat [gammas, betas] layout."""
        lo = np.array([self.gamma_bounds[0]] * self.p + [self.beta_bounds[0]] * self.p)
        hi = np.array([self.gamma_bounds[1]] * self.p + [self.beta_bounds[1]] * self.p)
        return lo, hi


@dataclass(frozen=True)
class OptimizeResult:
    params: QaoaParams
    best_exp: float
    evals: int
    degenerate: bool = False


class _BudgetExhausted(Exception):
    pass


def local_search(objective, start, bounds, max_evals: int = 500, tol: float = 1e-6):
    """Bounded derivative-free local descent; returns ``(point, value)``.

    The returned value never exceeds ``objective(start)`` (the start is
    evaluated first and the best point seen is tracked), and the
    objective is called at most ``max_evals`` times.  Termination is by
    budget or by the working set's function-value spread falling under
    ``tol``.
    """
    lo, hi = bounds
    start = np.clip(np.asarray(start, dtype=np.float64), lo, hi)
    best_x = start.copy()
    best_v = math.inf
    calls = 0

    def capped(x):
        nonlocal best_x, best_v, calls
        if calls >= max_evals:
            raise _BudgetExhausted
        calls += 1
        v = float(objective(x))
        if v < best_v or (v == best_v and tuple(x) < tuple(best_x)):
            best_v = v
            best_x = np.array(x, dtype=np.float64)
        return v

    try:
        _scipy_minimize(
            capped,
            start,
            method="Nelder-Mead",
            bounds=Bounds(lo, hi),
            options={"maxfev": max_evals, "fatol": tol, "xatol": 1e-8, "disp": False},
        )
    except _BudgetExhausted:
        pass
    return best_x, best_v


def optimize_angles(d: DiagonalCost, cfg: OptimizeConfig) -> OptimizeResult:
    """Minimize the exact QAOA expectation of ``d`` over the angle box.

    Deterministic per ``(d, cfg)``.  A constant diagonal short-circuits
    to zero angles with the ``degenerate`` flag set (the approximation
    ratio is undefined there).  Ties between candidate minima break by
    lexicographic parameter order so results do not depend on evaluation
    scheduling.
    """
    if d.c_min == d.c_max:
        params = QaoaParams((0.0,) * cfg.p, (0.0,) * cfg.p)
        return OptimizeResult(params, d.c_min, 0, degenerate=True)

    evals = 0
    best_v = math.inf
    best_x: np.ndarray | None = None

    def objective(vec) -> float:
        nonlocal evals, best_v, best_x
        evals += 1
        vec = np.asarray(vec, dtype=np.float64)
        v = expectation(run_qaoa(d, QaoaParams.from_vector(vec)), d)
        if v < best_v or (
            v == best_v and best_x is not None and tuple(vec) < tuple(best_x)
        ):
            best_v = v
            best_x = vec.copy()
        return v

    lo, hi = cfg.bounds_vector()
    objective(np.zeros(2 * cfg.p))

    if cfg.strategy == GRID_REFINE and cfg.p == 1:
        gammas = np.linspace(*cfg.gamma_bounds, cfg.grid_points)
        betas = np.linspace(*cfg.beta_bounds, cfg.grid_points)
        cell_v = math.inf
        cell_x = np.zeros(2)
        for g in gammas:
            for b in betas:
                point = np.array([g, b])
                v = objective(point)
                if v < cell_v or (v == cell_v and tuple(point) < tuple(cell_x)):
                    cell_v = v
                    cell_x = point
        local_search(objective, cell_x, (lo, hi), cfg.max_evals, cfg.tol)
    else:
        for k in range(cfg.restarts):
            rng = np.random.default_rng(np.random.SeedSequence((cfg.seed, k)))
            start = lo + rng.random(2 * cfg.p) * (hi - lo)
            local_search(objective, start, (lo, hi), cfg.max_evals, cfg.tol)

    assert best_x is not None
    return OptimizeResult(QaoaParams.from_vector(best_x), best_v, evals)
