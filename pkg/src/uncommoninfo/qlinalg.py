"""Dense complex linear algebra for small multipartite quantum states.

States carry a ``dims`` tuple listing the local dimensions of their
subsystems; subsystems are addressed by position in that tuple.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10
TRACE_TOL = 1e-10
NORM_TOL = 1e-10
# eigenvalues at or below this are treated as exact zeros
ZERO_EIG = 1e-12

SeedLike = Union[int, np.random.Generator, None]


class InvalidStateError(ValueError):
    """Raised when an array fails a density-matrix or pure-state invariant.

    ``check`` names the failed invariant: one of ``"shape"``, ``"dims"``,
    ``"finite"``, ``"hermitian"``, ``"psd"``, ``"trace"``, ``"norm"``.
    """

    def __init__(self, check: str, message: str):
        super().__init__(f"{check}: {message}")
        self.check = check


def _as_dims(dims, size: int) -> tuple[int, ...]:
    if dims is None:
        return (size,)
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims) or int(np.prod(dims)) != size:
        raise InvalidStateError("dims", f"dims {dims} do not multiply to {size}")
    return dims


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, PSD, unit-trace matrix with a subsystem layout."""

    data: np.ndarray
    dims: tuple[int, ...] = field(default=None)

    def __post_init__(self):
        data = np.array(self.data, dtype=complex)
        if data.ndim != 2 or data.shape[0] != data.shape[1]:
            raise InvalidStateError("shape", f"expected a square matrix, got shape {data.shape}")
        object.__setattr__(self, "dims", _as_dims(self.dims, data.shape[0]))
        check_density(data)
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def eigvals(self) -> np.ndarray:
        """Eigenvalues in descending order, tiny negatives clipped to zero."""
        return clip_spectrum(np.linalg.eigvalsh(self.data)[::-1])

    @property
    def rank(self) -> int:
        return int(np.sum(self.eigvals() > ZERO_EIG))

    def __repr__(self):
        return f"DensityMatrix(dims={self.dims})"


@dataclass(frozen=True, eq=False)
class PureState:
    """Unit vector with a subsystem layout."""

    amplitudes: np.ndarray
    dims: tuple[int, ...] = field(default=None)

    def __post_init__(self):
        amp = np.array(self.amplitudes, dtype=complex).reshape(-1)
        object.__setattr__(self, "dims", _as_dims(self.dims, amp.size))
        if not np.all(np.isfinite(amp)):
            raise InvalidStateError("finite", "amplitudes contain non-finite values")
        norm = np.linalg.norm(amp)
        if abs(norm - 1.0) > NORM_TOL:
            raise InvalidStateError("norm", f"vector norm {norm:.3g} differs from 1")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per subsystem."""
        return self.amplitudes.reshape(self.dims)

    def density(self) -> DensityMatrix:
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()), self.dims)

    def __repr__(self):
        return f"PureState(dims={self.dims})"


def check_density(data: np.ndarray) -> None:
    """Raise InvalidStateError if ``data`` is not a valid density matrix."""
    if not np.all(np.isfinite(data)):
        raise InvalidStateError("finite", "matrix contains non-finite entries")
    herm_err = np.max(np.abs(data - data.conj().T)) if data.size else 0.0
    if herm_err > HERMITIAN_TOL:
        raise InvalidStateError("hermitian", f"max |rho - rho^dag| = {herm_err:.3g}")
    tr = np.trace(data).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise InvalidStateError("trace", f"trace {tr:.12g} differs from 1")
    lam_min = np.linalg.eigvalsh(data)[0]
    if lam_min < -PSD_TOL:
        raise InvalidStateError("psd", f"negative eigenvalue {lam_min:.3g}")


def clip_spectrum(eigs: np.ndarray) -> np.ndarray:
    """Zero out eigenvalues in the numerical-noise band around zero."""
    eigs = np.asarray(eigs, dtype=float)
    if eigs.size and eigs.min() < -PSD_TOL:
        raise InvalidStateError("psd", f"negative eigenvalue {eigs.min():.3g}")
    return np.where(eigs > ZERO_EIG, eigs, 0.0)


def _check_selector(keep: Sequence[int], n: int) -> list[int]:
    keep = [int(k) for k in keep]
    if len(set(keep)) != len(keep):
        raise ValueError(f"subsystem indices repeat: {keep}")
    if any(k < 0 or k >= n for k in keep):
        raise ValueError(f"subsystem index out of range for {n} subsystems: {keep}")
    return keep


def tensor(a, b):
    """Kronecker product of two states of the same kind; dims concatenate."""
    if isinstance(a, PureState) and isinstance(b, PureState):
        return PureState(np.kron(a.amplitudes, b.amplitudes), a.dims + b.dims)
    if isinstance(a, DensityMatrix) and isinstance(b, DensityMatrix):
        return DensityMatrix(np.kron(a.data, b.data), a.dims + b.dims)
    raise TypeError("tensor expects two PureStates or two DensityMatrices")


def ptrace_array(rho: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Partial trace on a raw matrix; kept subsystems appear in ``keep`` order."""
    n = len(dims)
    keep = _check_selector(keep, n)
    drop = [i for i in range(n) if i not in keep]
    t = rho.reshape(tuple(dims) * 2)
    # bring (keep, drop | keep, drop) and contract the dropped block
    perm = keep + drop + [n + i for i in keep] + [n + i for i in drop]
    t = t.transpose(perm)
    dk = int(np.prod([dims[i] for i in keep])) if keep else 1
    dd = int(np.prod([dims[i] for i in drop])) if drop else 1
    t = t.reshape(dk, dd, dk, dd)
    return np.einsum("ajbj->ab", t)


def reduce_pure(psi: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Reduced density matrix of a (possibly unnormalized) pure vector."""
    m = bipartition(psi, dims, keep)
    return m @ m.conj().T


def bipartition(psi: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Reshape a vector into a (keep x rest) matrix."""
    n = len(dims)
    keep = _check_selector(keep, n)
    rest = [i for i in range(n) if i not in keep]
    dk = int(np.prod([dims[i] for i in keep])) if keep else 1
    return np.asarray(psi).reshape(tuple(dims)).transpose(keep + rest).reshape(dk, -1)


def partial_trace(state, keep: Sequence[int]) -> DensityMatrix:
    """Reduced state on the subsystems listed in ``keep`` (in that order)."""
    if isinstance(state, PureState):
        keep = _check_selector(keep, len(state.dims))
        red = reduce_pure(state.amplitudes, state.dims, keep)
    else:
        keep = _check_selector(keep, len(state.dims))
        red = ptrace_array(state.data, state.dims, keep)
    red = 0.5 * (red + red.conj().T)
    return DensityMatrix(red, tuple(state.dims[i] for i in keep) or (1,))


def permute(rho: DensityMatrix, order: Sequence[int]) -> DensityMatrix:
    """Reorder subsystems; ``order[i]`` is the old index of new subsystem i."""
    order = _check_selector(order, len(rho.dims))
    if len(order) != len(rho.dims):
        raise ValueError("permutation must list every subsystem")
    return partial_trace(rho, order)


def swap(rho: DensityMatrix) -> DensityMatrix:
    """Exchange the two halves of a bipartite state."""
    return permute(rho, [1, 0])


def fix_phases(vecs: np.ndarray) -> np.ndarray:
    """Make the first non-negligible entry of each column real-positive."""
    vecs = np.array(vecs, dtype=complex)
    for j in range(vecs.shape[1]):
        col = vecs[:, j]
        idx = np.flatnonzero(np.abs(col) > 1e-12)
        if idx.size:
            z = col[idx[0]]
            vecs[:, j] = col * (abs(z) / z)
    return vecs


def eig_hermitian(rho) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and phase-fixed eigenvectors as columns."""
    m = rho.data if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    err = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if err > HERMITIAN_TOL:
        raise InvalidStateError("hermitian", f"max |M - M^dag| = {err:.3g}")
    w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    # stable descending order keeps degenerate eigenvectors in eigh's order
    order = np.argsort(-w, kind="stable")
    return w[order], fix_phases(v[:, order])


def purify(rho: DensityMatrix) -> PureState:
    """Canonical purification sum_i sqrt(l_i)|v_i>|i> onto a rank-sized register."""
    w, v = eig_hermitian(rho)
    w = clip_spectrum(w)
    r = max(1, int(np.sum(w > ZERO_EIG)))
    amps = (v[:, :r] * np.sqrt(w[:r])).reshape(-1)
    amps /= np.linalg.norm(amps)
    return PureState(amps, rho.dims + (r,))


def sqrtm_psd(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    w = np.sqrt(clip_spectrum(w))
    return (v * w) @ v.conj().T


def fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Uhlmann fidelity Tr sqrt(sqrt(sigma) rho sqrt(sigma)), in [0, 1]."""
    if rho.data.shape != sigma.data.shape:
        raise ValueError(f"dimension mismatch: {rho.data.shape} vs {sigma.data.shape}")
    s = sqrtm_psd(sigma.data)
    inner = s @ rho.data @ s
    w = np.linalg.eigvalsh(0.5 * (inner + inner.conj().T))
    f = float(np.sum(np.sqrt(np.clip(w, 0.0, None))))
    return min(max(f, 0.0), 1.0)


def _rng(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def random_density(d: int, rank: int | None = None, seed: SeedLike = 0,
                   dims: Sequence[int] | None = None) -> DensityMatrix:
    """Induced-measure random state GG^dag / Tr(GG^dag), G of shape d x rank."""
    rank = d if rank is None else int(rank)
    if not 1 <= rank <= d:
        raise ValueError(f"rank must be in [1, {d}], got {rank}")
    g = ginibre(_rng(seed), d, rank)
    m = g @ g.conj().T
    m = m / np.trace(m).real
    return DensityMatrix(0.5 * (m + m.conj().T), dims)


def random_pure(dims: Sequence[int], seed: SeedLike = 0) -> PureState:
    dims = tuple(int(d) for d in dims)
    v = ginibre(_rng(seed), int(np.prod(dims)), 1)[:, 0]
    return PureState(v / np.linalg.norm(v), dims)


def haar_unitary(d: int, seed: SeedLike = 0) -> np.ndarray:
    """Haar-distributed unitary from QR of a Ginibre matrix with phase-fixed R."""
    q, r = np.linalg.qr(ginibre(_rng(seed), d, d))
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def pad_vector(psi: np.ndarray, axis_dim: int, new_dim: int) -> np.ndarray:
    """Embed the last axis of ``psi`` (size axis_dim) into a larger space."""
    if new_dim < axis_dim:
        raise ValueError("cannot pad to a smaller dimension")
    if new_dim == axis_dim:
        return psi
    pad = [(0, 0)] * (psi.ndim - 1) + [(0, new_dim - axis_dim)]
    return np.pad(psi, pad)


def ket(index: int, d: int) -> np.ndarray:
    v = np.zeros(d, dtype=complex)
    v[index] = 1.0
    return v


def projector(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    return np.outer(v, v.conj())


def maximally_mixed(dims: Sequence[int]) -> DensityMatrix:
    d = int(np.prod(dims))
    return DensityMatrix(np.eye(d) / d, tuple(dims))
