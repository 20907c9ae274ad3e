"""Entanglement measures: pure-state entropy, formation, hashing-type bounds."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil
from typing import Sequence

import numpy as np

from ._kernels import (
    decomposition_objective, instrument_objective, schmidt_entropies, schmidt_entropy,
)
from .entropy import binary_entropy, spectrum_entropy
from .measurement import n_params
from .optimizer import OptimizationResult, OptimizerConfig, maximize, minimize
from .qlinalg import (
    ZERO_EIG, DensityMatrix, PureState, bipartition, clip_spectrum, eig_hermitian,
    pad_vector, sqrtm_psd,
)

EXACT_WOOTTERS = "exact-wootters"
NUMERIC_DECOMPOSITION = "numeric-decomposition"
HASHING = "hashing"
MEASURED_HASHING = "measured-hashing"

_YY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))


@dataclass
class EntanglementValue:
    value: float
    method: str
    result: OptimizationResult | None = field(default=None, repr=False)

    def __float__(self):
        return float(self.value)


def _sv_entropy(m: np.ndarray) -> np.ndarray:
    """-sum s^2 log s^2 over singular values of each stacked matrix (unnormalized)."""
    m = np.ascontiguousarray(m, dtype=complex)
    if m.ndim == 2:
        return schmidt_entropy(m)
    return schmidt_entropies(m)


def entanglement_entropy(psi: PureState, cut: Sequence[int] = (0,)) -> float:
    """Entropy of the reduced state of ``psi`` on the subsystems in ``cut``."""
    m = bipartition(psi.amplitudes, psi.dims, list(cut))
    s = np.linalg.svd(m, compute_uv=False)
    return spectrum_entropy(clip_spectrum(s * s))


def _check_two_qubit(rho: DensityMatrix):
    if tuple(rho.dims) != (2, 2):
        raise ValueError(f"expected a two-qubit state with dims (2, 2), got {rho.dims}")


def concurrence(rho: DensityMatrix) -> float:
    """Wootters concurrence max(0, l1 - l2 - l3 - l4).

    The l_i are the singular values of sqrt(rho) (Y x Y) sqrt(rho)^*, which are
    the square roots of the spectrum of rho (Y x Y) rho^* (Y x Y).
    """
    _check_two_qubit(rho)
    s = sqrtm_psd(rho.data)
    lam = np.linalg.svd(s @ _YY @ s.conj(), compute_uv=False)
    return float(max(0.0, lam[0] - lam[1:].sum()))


def eof_wootters(rho: DensityMatrix) -> float:
    c = concurrence(rho)
    return binary_entropy((1.0 + np.sqrt(max(0.0, 1.0 - c * c))) / 2.0)


def default_ensemble_size(rank: int) -> int:
    return max(rank, min(rank * rank, 16))


def _decomp_objective(weighted: np.ndarray, dims, k: int):
    da = dims[0]
    db = int(np.prod(dims[1:]))
    weighted = np.ascontiguousarray(weighted, dtype=complex)
    return lambda theta: decomposition_objective(weighted, theta, da, db, k)


def eof_numeric(rho: DensityMatrix, k: int | None = None,
                opt: OptimizerConfig | None = None) -> EntanglementValue:
    """Minimum average entanglement (first subsystem vs rest) over k-member decompositions.

    Decompositions come from measuring a k-dimensional purifying register in
    a parameterized basis; the zero parameter gives the eigen-ensemble.
    """
    if len(rho.dims) < 2:
        raise ValueError("need a bipartite state")
    w, v = eig_hermitian(rho)
    w = clip_spectrum(w)
    r = max(1, int(np.sum(w > ZERO_EIG)))
    k = default_ensemble_size(r) if k is None else int(k)
    if k < r:
        raise ValueError(f"ensemble size {k} is below rank {r}")
    weighted = np.sqrt(w[:r]) * v[:, :r]
    res = minimize(_decomp_objective(weighted, rho.dims, k), n_params(k), opt)
    return EntanglementValue(max(res.value, 0.0), NUMERIC_DECOMPOSITION, res)


def _tripartite(psi: PureState) -> np.ndarray:
    if len(psi.dims) != 3:
        raise ValueError(f"expected a pure state on A, B, R; got dims {psi.dims}")
    return psi.tensor()


def _sign(to: str) -> int:
    if to not in ("A", "B"):
        raise ValueError(f"direction must be 'A' or 'B', got {to!r}")
    return 1 if to == "A" else -1


def hashing_lb(psi: PureState, to: str) -> EntanglementValue:
    """max(0, I(R > T)) with I(R > A) = S(A) - S(RA) = S(A) - S(B) on a pure ABR state."""
    sign = _sign(to)
    t = _tripartite(psi)
    da, db, dr = t.shape
    s_a = entanglement_entropy(psi, [0])
    s_b = entanglement_entropy(psi, [1])
    return EntanglementValue(max(0.0, sign * (s_a - s_b)), HASHING)


def instrument_layouts(r: int, k: int = 2) -> list[tuple[int, int, bool]]:
    """(dim R', outcomes, outcome-register-first) layouts tried by measured hashing.

    Putting M first or last differs only by a fixed permutation of the padded
    register, which the unitary search already covers, so one layout suffices.
    """
    keep = max(2, ceil(r / k))
    return [(keep, k, False)]


def _instrument_objective(t: np.ndarray, keep: int, k: int, m_first: bool, sign: int):
    da, db, dr = t.shape
    flat = np.ascontiguousarray(pad_vector(t, dr, keep * k).reshape(da * db, keep * k))
    return lambda theta: instrument_objective(flat, theta, da, db, keep, k, m_first, float(sign))


def measured_hashing_lb(psi: PureState, to: str, k: int = 2,
                        opt: OptimizerConfig | None = None,
                        layouts: Sequence[tuple[int, int, bool]] | None = None) -> EntanglementValue:
    """Hashing after a preprocessing instrument on R.

    R is padded and rotated into R' (x) M; M is measured in its computational
    basis and each outcome's coherent information towards the target party is
    kept if positive.  The trivial instrument (plain hashing) is always a
    candidate, so the result never falls below ``hashing_lb``.
    """
    if k < 2:
        raise ValueError("an instrument needs at least 2 outcomes")
    sign = _sign(to)
    t = _tripartite(psi)
    plain = hashing_lb(psi, to)
    r = t.shape[2]
    if r == 1:
        return EntanglementValue(plain.value, MEASURED_HASHING)
    best_val, best_res = plain.value, None
    for keep, kk, m_first in (layouts or instrument_layouts(r, k)):
        if keep * kk < r:
            raise ValueError(f"layout {keep}x{kk} cannot hold R of dimension {r}")
        res = maximize(_instrument_objective(t, keep, kk, m_first, sign), n_params(keep * kk), opt)
        if res.value > best_val:
            best_val, best_res = res.value, res
    return EntanglementValue(best_val, MEASURED_HASHING, best_res)
