"""One-parameter state families used by the sweep command."""

from __future__ import annotations

import numpy as np

from .entropy import classical_state
from .qlinalg import DensityMatrix, projector, random_density

SINGLET = np.array([0, 1, -1, 0]) / np.sqrt(2)
PSI_PLUS = np.array([0, 1, 1, 0]) / np.sqrt(2)
PHI_PLUS = np.array([1, 0, 0, 1]) / np.sqrt(2)


def werner(p: float) -> DensityMatrix:
    """p |psi-><psi-| + (1 - p) I/4."""
    return DensityMatrix(p * projector(SINGLET) + (1 - p) * np.eye(4) / 4, (2, 2))


def isotropic(p: float) -> DensityMatrix:
    """p |phi+><phi+| + (1 - p) I/4."""
    return DensityMatrix(p * projector(PHI_PLUS) + (1 - p) * np.eye(4) / 4, (2, 2))


def classical_grid(t: float) -> DensityMatrix:
    """Interpolates independent uniform bits (t=0) and perfectly correlated bits (t=1)."""
    p = (1 - t) * np.full((2, 2), 0.25) + t * np.diag([0.5, 0.5])
    return classical_state(p)


def symmetric_mixture(lam: float) -> DensityMatrix:
    """lam |00><00| + (1 - lam) |psi+><psi+|, supported on the symmetric subspace."""
    return DensityMatrix(lam * np.diag([1.0, 0, 0, 0]) + (1 - lam) * projector(PSI_PLUS), (2, 2))


def one_sided(t: float) -> DensityMatrix:
    """1/2 |0><0| (x) |0><0| + 1/2 |1><1| (x) |phi_t><phi_t|, phi_t = cos(pi t/2)|0> + sin(pi t/2)|1>."""
    phi = np.array([np.cos(np.pi * t / 2), np.sin(np.pi * t / 2)])
    m = 0.5 * np.kron(np.diag([1.0, 0]), projector([1, 0])) + 0.5 * np.kron(np.diag([0, 1.0]), projector(phi))
    return DensityMatrix(m, (2, 2))


def random_state(index: int, seed: int, dims=(2, 2)) -> DensityMatrix:
    ss = np.random.SeedSequence([seed, index])
    d = int(np.prod(dims))
    return random_density(d, d, np.random.default_rng(ss), dims)


FAMILIES = {
    "werner": werner,
    "isotropic": isotropic,
    "classical-grid": classical_grid,
    "symmetric-mixture": symmetric_mixture,
    "one-sided": one_sided,
}
ALL_FAMILIES = tuple(FAMILIES) + ("random",)


def family_state(name: str, param: float, seed: int = 0, dims=(2, 2)) -> DensityMatrix:
    if name == "random":
        return random_state(int(param), seed, dims)
    try:
        return FAMILIES[name](float(param))
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {', '.join(ALL_FAMILIES)}") from None
