"""Deterministic multistart Nelder-Mead over real parameter vectors.

Start 0 is always the zero vector, which every parameterization in this
package maps to the identity unitary.  Remaining starts are drawn uniformly
from [-pi, pi]^dim by a generator seeded from the config, one start at a
time, so the first k starts of a 2k-start run are the same points.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import minimize as _scipy_minimize

log = logging.getLogger(__name__)

# edge length of the initial simplex, in radians
SIMPLEX_STEP = 0.6


@dataclass(frozen=True)
class OptimizerConfig:
    starts: int = 32
    max_iter: int = 400
    ftol: float = 1e-6
    xtol: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if self.starts < 1:
            raise ValueError("starts must be >= 1")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")

    def replace(self, **kw) -> "OptimizerConfig":
        from dataclasses import replace
        return replace(self, **kw)


@dataclass
class OptimizationResult:
    value: float
    params: np.ndarray
    start_index: int
    iterations: int
    converged: bool
    evaluations: int = 0
    abandoned: list[int] = field(default_factory=list)

    def summary(self) -> dict:
        return {
            "value": self.value,
            "start_index": self.start_index,
            "iterations": self.iterations,
            "evaluations": self.evaluations,
            "converged": self.converged,
            "abandoned_starts": list(self.abandoned),
        }


class _NonFinite(Exception):
    pass


def start_points(dim: int, cfg: OptimizerConfig) -> list[np.ndarray]:
    rng = np.random.default_rng(cfg.seed)
    pts = [np.zeros(dim)]
    for _ in range(cfg.starts - 1):
        pts.append(rng.uniform(-np.pi, np.pi, size=dim))
    return pts


def minimize(objective: Callable[[np.ndarray], float], dim: int,
             cfg: OptimizerConfig | None = None) -> OptimizationResult:
    """Best local minimum over ``cfg.starts`` Nelder-Mead runs.

    A start whose objective produces a non-finite value is abandoned and
    listed in ``abandoned``.  Ties keep the lowest start index.
    """
    cfg = cfg or OptimizerConfig()
    if dim == 0:
        v = float(objective(np.zeros(0)))
        if not np.isfinite(v):
            raise ValueError("objective is non-finite at the only admissible point")
        return OptimizationResult(v, np.zeros(0), 0, 0, True, 1)

    def guarded(x):
        v = objective(x)
        if not np.isfinite(v):
            raise _NonFinite
        return float(v)

    best: OptimizationResult | None = None
    abandoned: list[int] = []
    total_evals = 0
    eye = np.eye(dim) * SIMPLEX_STEP
    for i, x0 in enumerate(start_points(dim, cfg)):
        simplex = np.vstack([x0, x0 + eye])
        try:
            res = _scipy_minimize(
                guarded, x0, method="Nelder-Mead",
                options={"maxiter": cfg.max_iter, "maxfev": 4 * cfg.max_iter + dim + 1,
                         "xatol": cfg.xtol, "fatol": cfg.ftol,
                         "initial_simplex": simplex, "adaptive": dim > 4},
            )
        except _NonFinite:
            log.debug("start %d abandoned: non-finite objective", i)
            abandoned.append(i)
            continue
        total_evals += int(res.nfev)
        if best is None or res.fun < best.value:
            best = OptimizationResult(float(res.fun), np.asarray(res.x, dtype=float), i,
                                      int(res.nit), bool(res.success))
    if best is None:
        raise RuntimeError("every start produced a non-finite objective value")
    best.evaluations = total_evals
    best.abandoned = abandoned
    return best


def maximize(objective: Callable[[np.ndarray], float], dim: int,
             cfg: OptimizerConfig | None = None) -> OptimizationResult:
    res = minimize(lambda x: -objective(x), dim, cfg)
    res.value = -res.value
    return res
