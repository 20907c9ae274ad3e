"""Shannon and von Neumann entropies (base 2) and two-party combinations."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .qlinalg import DensityMatrix, ZERO_EIG, clip_spectrum, partial_trace

PROB_TOL = 1e-9


def _check_probs(p) -> np.ndarray:
    p = np.asarray(p, dtype=float).reshape(-1)
    if p.size == 0 or not np.all(np.isfinite(p)):
        raise ValueError("probability vector must be non-empty and finite")
    if p.min() < -PROB_TOL:
        raise ValueError(f"negative probability {p.min():.3g}")
    if abs(p.sum() - 1.0) > PROB_TOL:
        raise ValueError(f"probabilities sum to {p.sum():.12g}, not 1")
    return np.clip(p, 0.0, None)


def spectrum_entropy(eigs: np.ndarray) -> float:
    """-sum x log2 x over entries above the zero threshold; no normalization."""
    x = np.asarray(eigs, dtype=float)
    x = x[x > ZERO_EIG]
    return float(-np.sum(x * np.log2(x)))


def unnormalized_entropy_sum(eigs: np.ndarray) -> np.ndarray:
    """Row-wise -sum mu log2 mu for stacked spectra (last axis); zeros ignored."""
    mu = np.where(eigs > ZERO_EIG, eigs, 1.0)
    return -np.sum(np.where(eigs > ZERO_EIG, eigs * np.log2(mu), 0.0), axis=-1)


def shannon(p) -> float:
    return spectrum_entropy(_check_probs(p))


def binary_entropy(x: float) -> float:
    return spectrum_entropy(np.array([x, 1.0 - x]))


def von_neumann(rho: DensityMatrix) -> float:
    return spectrum_entropy(rho.eigvals())


def entropy_of(rho: DensityMatrix, subsystems: Sequence[int]) -> float:
    """Entropy of the reduction of ``rho`` onto ``subsystems``."""
    subsystems = list(subsystems)
    if not subsystems:
        return 0.0
    if sorted(subsystems) == list(range(len(rho.dims))):
        return von_neumann(rho)
    return von_neumann(partial_trace(rho, sorted(subsystems)))


def conditional(rho: DensityMatrix, target: Sequence[int], given: Sequence[int]) -> float:
    """S(target | given) = S(target, given) - S(given); may be negative."""
    target, given = list(target), list(given)
    if set(target) & set(given):
        raise ValueError(f"selectors overlap: {target} and {given}")
    return entropy_of(rho, target + given) - entropy_of(rho, given)


def mutual(rho: DensityMatrix, a: Sequence[int] = (0,), b: Sequence[int] = (1,)) -> float:
    a, b = list(a), list(b)
    if set(a) & set(b):
        raise ValueError(f"selectors overlap: {a} and {b}")
    return entropy_of(rho, a) + entropy_of(rho, b) - entropy_of(rho, a + b)


def coherent(rho: DensityMatrix, source: Sequence[int] = (0,), dest: Sequence[int] = (1,)) -> float:
    """Coherent information I(source > dest) = S(dest) - S(source, dest)."""
    source, dest = list(source), list(dest)
    return entropy_of(rho, dest) - entropy_of(rho, source + dest)


def classical_uncommon(p_xy) -> float:
    """U(X:Y) = H(X|Y) + H(Y|X) for a joint distribution given as a 2-D array."""
    p = np.asarray(p_xy, dtype=float)
    if p.ndim != 2:
        raise ValueError("joint distribution must be a 2-D array indexed [x, y]")
    p = _check_probs(p).reshape(p.shape)
    h_xy = spectrum_entropy(p)
    return 2.0 * h_xy - spectrum_entropy(p.sum(axis=1)) - spectrum_entropy(p.sum(axis=0))


def classical_mutual(p_xy) -> float:
    p = _check_probs(np.asarray(p_xy, dtype=float)).reshape(np.shape(p_xy))
    return spectrum_entropy(p.sum(axis=1)) + spectrum_entropy(p.sum(axis=0)) - spectrum_entropy(p)


def classical_state(p_xy) -> DensityMatrix:
    """sum p_xy |x><x| (x) |y><y| with dims (nx, ny)."""
    p = np.asarray(p_xy, dtype=float)
    p = _check_probs(p).reshape(p.shape)
    return DensityMatrix(np.diag(p.reshape(-1)).astype(complex), p.shape)


def eigen_entropy(m: np.ndarray) -> float:
    """Entropy of a raw Hermitian PSD matrix (trace assumed 1)."""
    return spectrum_entropy(clip_spectrum(np.linalg.eigvalsh(m)))
