"""Local basis measurements and the measured-conditional-entropy minimum.

A d x d special unitary is parameterized by d(d-1) reals: one (angle,
phase) pair per two-level rotation acting on levels (j, k), j < k, applied
in lexicographic order.  The rotation on a pair is

    [[cos(t/2), -exp(-i phi) sin(t/2)],
     [exp(i phi) sin(t/2),  cos(t/2)]]

so t = pi/2 on a qubit sends |0>, |1> to |+>, -|->.  Measurement bases are
the columns of the unitary.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import givens_product, measured_entropy_objective
from .entropy import entropy_of, unnormalized_entropy_sum
from .optimizer import OptimizationResult, OptimizerConfig, minimize
from .qlinalg import (
    ZERO_EIG, DensityMatrix, PureState, clip_spectrum, eig_hermitian, fix_phases,
    partial_trace,
)


def n_params(d: int) -> int:
    return d * (d - 1)


def unitary_from_params(theta, d: int) -> np.ndarray:
    theta = np.asarray(theta, dtype=float).reshape(-1)
    if theta.size != n_params(d):
        raise ValueError(f"expected {n_params(d)} parameters for d={d}, got {theta.size}")
    return givens_product(theta, d)


def basis_from_params(theta, d: int) -> np.ndarray:
    """Measurement basis (columns) with each vector's global phase fixed."""
    return fix_phases(unitary_from_params(theta, d))


@dataclass(frozen=True)
class MeasurementEnsemble:
    """Outcome probabilities and normalized conditional states."""

    probs: np.ndarray
    states: tuple

    def __iter__(self):
        return iter(zip(self.probs, self.states))

    def __len__(self):
        return len(self.probs)

    def average_state(self) -> np.ndarray:
        out = 0
        for p, s in self:
            m = np.outer(s.amplitudes, s.amplitudes.conj()) if isinstance(s, PureState) else s.data
            out = out + p * m
        return out


def _ensemble_from_branches(branches: np.ndarray, dims) -> MeasurementEnsemble:
    """Build an ensemble from unnormalized branch vectors (one per row)."""
    probs = np.sum(np.abs(branches) ** 2, axis=1)
    keep = probs > ZERO_EIG
    states = tuple(PureState(b / np.sqrt(p), dims) for b, p in zip(branches[keep], probs[keep]))
    pk = probs[keep]
    return MeasurementEnsemble(pk / pk.sum(), states)


def measure_subsystem(psi: PureState, target: int, theta) -> MeasurementEnsemble:
    """Measure subsystem ``target`` of a pure state in the basis given by ``theta``."""
    n = len(psi.dims)
    if not 0 <= target < n:
        raise ValueError(f"subsystem {target} out of range")
    d = psi.dims[target]
    u = basis_from_params(theta, d)
    rest = [i for i in range(n) if i != target]
    t = psi.tensor().transpose([target] + rest).reshape(d, -1)
    branches = u.conj().T @ t
    rest_dims = tuple(psi.dims[i] for i in rest) or (1,)
    return _ensemble_from_branches(branches, rest_dims)


def _measured_blocks(rho4: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Unnormalized conditional states <a|rho|a> on the unmeasured side, stacked."""
    return np.einsum("ia,ibjc,ja->abc", u.conj(), rho4, u, optimize=False)


def _as_measured_first(rho: DensityMatrix, measured: int) -> np.ndarray:
    """rho reshaped to (dM, dRest, dM, dRest)."""
    n = len(rho.dims)
    if n < 2:
        raise ValueError("need at least a bipartite state")
    if not 0 <= measured < n:
        raise ValueError(f"subsystem {measured} out of range")
    order = [measured] + [i for i in range(n) if i != measured]
    r = partial_trace(rho, order).data if order != list(range(n)) else rho.data
    dm = rho.dims[measured]
    drest = rho.dim // dm
    return r.reshape(dm, drest, dm, drest)


def avg_conditional_entropy(rho4: np.ndarray, u: np.ndarray) -> float:
    """sum_a p_a S(sigma_a) after measuring the first factor of rho4 in basis u."""
    blocks = _measured_blocks(rho4, u)
    blocks = 0.5 * (blocks + blocks.conj().transpose(0, 2, 1))
    mu = np.linalg.eigvalsh(blocks)
    p = np.clip(np.trace(blocks, axis1=1, axis2=2).real, 0.0, None)
    # p S(sigma) = -sum mu log mu + p log p
    plogp = np.where(p > ZERO_EIG, p * np.log2(np.where(p > ZERO_EIG, p, 1.0)), 0.0)
    return float(np.sum(unnormalized_entropy_sum(mu) + plogp))


def _selector_index(measured) -> int:
    if isinstance(measured, (list, tuple, np.ndarray)):
        if len(measured) != 1:
            raise ValueError("measurement acts on exactly one subsystem")
        return int(measured[0])
    return int(measured)


def min_avg_conditional_entropy(rho: DensityMatrix, measured=0,
                                opt: OptimizerConfig | None = None) -> OptimizationResult:
    """Minimum over bases of subsystem ``measured`` of the average entropy of the rest.

    ``result.value`` is the minimum, ``result.params`` the basis parameters.
    """
    m = _selector_index(measured)
    rho4 = np.ascontiguousarray(_as_measured_first(rho, m))
    d, dr = rho4.shape[0], rho4.shape[1]
    return minimize(lambda th: measured_entropy_objective(rho4, th, d, dr), n_params(d), opt)


def sh_conditional(rho: DensityMatrix, given=1, opt: OptimizerConfig | None = None) -> float:
    """Conditional entropy after optimally dephasing the ``given`` subsystem."""
    return min_avg_conditional_entropy(rho, given, opt).value


def henderson_vedral(rho: DensityMatrix, measured=0, opt: OptimizerConfig | None = None,
                     result: OptimizationResult | None = None) -> float:
    """Single-copy projective classical correlation S(rest) - min avg S(rest|outcome)."""
    m = _selector_index(measured)
    if result is None:
        result = min_avg_conditional_entropy(rho, m, opt)
    rest = [i for i in range(len(rho.dims)) if i != m]
    return entropy_of(rho, rest) - result.value


def decompositions(rho: DensityMatrix, k: int, theta) -> MeasurementEnsemble:
    """Pure-state ensemble for ``rho`` obtained by measuring a k-dim purifying register."""
    w, v = eig_hermitian(rho)
    w = clip_spectrum(w)
    r = int(np.sum(w > ZERO_EIG))
    if k < r:
        raise ValueError(f"ensemble size {k} is below rank {r}")
    u = basis_from_params(theta, k)
    branches = decomposition_branches(np.sqrt(w[:r]) * v[:, :r], u)
    return _ensemble_from_branches(branches, rho.dims)


def decomposition_branches(weighted_vecs: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Rows are unnormalized states sum_i conj(u[i, m]) sqrt(l_i) |v_i>."""
    r = weighted_vecs.shape[1]
    return (u[:r].conj().T @ weighted_vecs.T)


def joint_double_copy_objective(rho: DensityMatrix, opt: OptimizerConfig | None = None) -> OptimizationResult:
    """Joint minimization over both bases of the two-term sum (used to spot-check separability)."""
    ra = np.ascontiguousarray(_as_measured_first(rho, 0))
    rb = np.ascontiguousarray(_as_measured_first(rho, 1))
    da, db = ra.shape[0], rb.shape[0]
    na = n_params(da)

    def f(th):
        return (measured_entropy_objective(ra, th[:na], da, db)
                + measured_entropy_objective(rb, th[na:], db, da))

    return minimize(f, na + n_params(db), opt)
