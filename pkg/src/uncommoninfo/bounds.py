"""Upper and lower bounds on the uncommon information of a bipartite state.

Upper bounds come from explicit exchange protocols (merge-and-send,
double-copy, the one-sided classical variant, do-nothing for
(anti)symmetric support).  Lower bounds come from splitting the purifying
register between the parties and from hashing-type distillation with R.
"""

from __future__ import annotations

from dataclasses import dataclass, field, asdict
from math import ceil
from typing import Sequence

import numpy as np

from ._kernels import split_objective
from .entanglement import (
    EntanglementValue, eof_numeric, hashing_lb, measured_hashing_lb,
)
from .entropy import conditional, entropy_of
from .measurement import (
    henderson_vedral, min_avg_conditional_entropy, n_params,
)
from .optimizer import OptimizationResult, OptimizerConfig, maximize
from .qlinalg import (
    DensityMatrix, PureState, pad_vector, partial_trace, purify, swap,
)

SUPPORT_TOL = 1e-9
BLOCK_TOL = 1e-9


def _check_bipartite(rho: DensityMatrix):
    if len(rho.dims) != 2:
        raise ValueError(f"expected a bipartite state, got dims {rho.dims}")


def merge_and_send_ub(rho: DensityMatrix) -> float:
    """Rate S(A|B) + S(B) = S(AB)."""
    _check_bipartite(rho)
    return entropy_of(rho, [0, 1])


@dataclass
class DoubleCopy:
    value: float
    params_a: np.ndarray
    params_b: np.ndarray
    avg_entropy_b_given_a: float
    avg_entropy_a_given_b: float
    hv_measure_a: float
    hv_measure_b: float
    hv_form: float
    result_a: OptimizationResult = field(repr=False)
    result_b: OptimizationResult = field(repr=False)


def double_copy_ub(rho: DensityMatrix, opt: OptimizerConfig | None = None) -> DoubleCopy:
    """Copy-in-a-basis protocol: two independent single-side minimizations.

    The sum over outcomes of p_a S(sigma_B^a) and of p_b S(sigma_A^b)
    separate, so each basis is optimized on its own.  ``hv_form`` is the same
    rate written as S(A) + S(B) minus the two measured classical
    correlations, computed from the same optimizer results.
    """
    _check_bipartite(rho)
    ra = min_avg_conditional_entropy(rho, 0, opt)
    rb = min_avg_conditional_entropy(rho, 1, opt)
    hv_a = henderson_vedral(rho, 0, result=ra)
    hv_b = henderson_vedral(rho, 1, result=rb)
    s_a, s_b = entropy_of(rho, [0]), entropy_of(rho, [1])
    return DoubleCopy(
        value=ra.value + rb.value,
        params_a=ra.params, params_b=rb.params,
        avg_entropy_b_given_a=ra.value, avg_entropy_a_given_b=rb.value,
        hv_measure_a=hv_a, hv_measure_b=hv_b,
        hv_form=s_a + s_b - hv_a - hv_b,
        result_a=ra, result_b=rb,
    )


# -- classicality detection -------------------------------------------------

@dataclass
class ClassicalityFlags:
    a_side: bool = False
    b_side: bool = False
    classical: bool = False
    undecided_a: bool = False
    undecided_b: bool = False
    basis_a: np.ndarray | None = field(default=None, repr=False)
    basis_b: np.ndarray | None = field(default=None, repr=False)


def _side_operators(rho: DensityMatrix, side: int) -> list[np.ndarray]:
    """Hermitian operators on ``side`` whose joint diagonalizability decides classicality.

    Writing rho = sum_mn C_mn (x) |m><n| (other side), the C_mn must all be
    diagonal in the classical basis; their Hermitian parts span the same set.
    """
    t = rho.data.reshape(rho.dims * 2) if side == 0 else swap(rho).data.reshape(rho.dims[::-1] * 2)
    d_other = t.shape[1]
    ops = []
    for m in range(d_other):
        for n in range(m, d_other):
            c = t[:, m, :, n]
            ops.append(0.5 * (c + c.conj().T))
            if n != m:
                ops.append(0.5j * (c - c.conj().T))
    return [o for o in ops if np.max(np.abs(o)) > BLOCK_TOL]


def _classical_basis(rho: DensityMatrix, side: int) -> tuple[np.ndarray | None, bool]:
    """(basis, undecided). basis is None when the side is not classical."""
    d = rho.dims[side]
    ops = _side_operators(rho, side)
    if not ops:
        return np.eye(d, dtype=complex), False
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            if np.max(np.abs(ops[i] @ ops[j] - ops[j] @ ops[i])) > BLOCK_TOL:
                return None, False
    # a generic real combination of a commuting Hermitian family has exactly
    # the joint eigenspaces as its eigenspaces
    coeffs = np.random.default_rng(12345).standard_normal(len(ops))
    _, v = np.linalg.eigh(sum(c * o for c, o in zip(coeffs, ops)))
    for o in ops:
        off = v.conj().T @ o @ v
        if np.max(np.abs(off - np.diag(np.diag(off)))) > 1e3 * BLOCK_TOL:
            return None, True
    return v, False


def detect_classical(rho: DensityMatrix) -> ClassicalityFlags:
    _check_bipartite(rho)
    ua, und_a = _classical_basis(rho, 0)
    ub, und_b = _classical_basis(rho, 1)
    flags = ClassicalityFlags(a_side=ua is not None, b_side=ub is not None,
                              undecided_a=und_a, undecided_b=und_b, basis_a=ua, basis_b=ub)
    if ua is not None and ub is not None:
        u = np.kron(ua, ub)
        m = u.conj().T @ rho.data @ u
        flags.classical = bool(np.max(np.abs(m - np.diag(np.diag(m)))) <= 1e3 * BLOCK_TOL)
    return flags


def one_sided_classical_rate(rho: DensityMatrix, side: str = "A",
                             flags: ClassicalityFlags | None = None) -> float:
    """Rate S(A|B) + S(B|A), valid when ``side`` holds a classical register."""
    _check_bipartite(rho)
    flags = flags or detect_classical(rho)
    ok = flags.a_side if side == "A" else flags.b_side if side == "B" else None
    if ok is None:
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    if not ok:
        raise ValueError(f"state is not classical on side {side}")
    return conditional(rho, [0], [1]) + conditional(rho, [1], [0])


# -- do nothing ---------------------------------------------------------------

@dataclass
class SupportFlags:
    is_pure: bool = False
    is_symmetric_support: bool = False
    is_antisymmetric_support: bool = False

    @property
    def fires(self) -> bool:
        return self.is_pure or self.is_symmetric_support or self.is_antisymmetric_support


def _swap_operator(d: int) -> np.ndarray:
    s = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            s[j * d + i, i * d + j] = 1.0
    return s


def support_flags(rho: DensityMatrix) -> SupportFlags:
    _check_bipartite(rho)
    flags = SupportFlags(is_pure=rho.rank == 1)
    da, db = rho.dims
    if da == db:
        f = _swap_operator(da)
        eye = np.eye(da * db)
        for sign, name in ((1, "is_symmetric_support"), (-1, "is_antisymmetric_support")):
            p = 0.5 * (eye + sign * f)
            if np.max(np.abs(p @ rho.data @ p - rho.data)) <= SUPPORT_TOL:
                setattr(flags, name, True)
    return flags


def do_nothing_check(rho: DensityMatrix) -> float | None:
    """0 when the state is pure or lives on the (anti)symmetric subspace, else None."""
    return 0.0 if support_flags(rho).fires else None


# -- lower bounds ---------------------------------------------------------------

def default_factorizations(r: int) -> list[tuple[int, int]]:
    """(d_V, d_E) splittings of an r-dim register, padding by at most one level."""
    out = []
    for dv in range(1, r + 1):
        de = ceil(r / dv)
        if dv * de <= r + 1 and (dv, de) not in out:
            out.append((dv, de))
    return out


def _split_objective(t: np.ndarray, dv: int, de: int):
    da, db, dr = t.shape
    flat = np.ascontiguousarray(pad_vector(t, dr, dv * de).reshape(da * db, dv * de))
    return lambda theta: split_objective(flat, theta, da, db, dv, de)


@dataclass
class SplitBound:
    value: float
    factorization: tuple[int, int] | None
    params: np.ndarray | None
    results: dict = field(default_factory=dict, repr=False)


def channel_split_lb(psi: PureState, factorizations: Sequence[tuple[int, int]] | None = None,
                     opt: OptimizerConfig | None = None) -> SplitBound:
    """max |S(BV) - S(AV)| over isometric splittings R -> V (x) E.

    R is padded to d_V * d_E and rotated by a parameterized unitary; V is
    the first factor.  Splittings with a trivial factor need no search: they
    give |S(B) - S(A)|.
    """
    if len(psi.dims) != 3:
        raise ValueError(f"expected a pure state on A, B, R; got dims {psi.dims}")
    t = psi.tensor()
    r = t.shape[2]
    facts = list(factorizations) if factorizations is not None else default_factorizations(r)
    best = SplitBound(0.0, None, None)
    for dv, de in facts:
        if dv * de < r:
            raise ValueError(f"splitting {dv}x{de} cannot hold R of dimension {r}")
        f = _split_objective(t, dv, de)
        if dv == 1 or de == 1:
            val, params = f(np.zeros(n_params(dv * de))), None
        else:
            res = maximize(f, n_params(dv * de), opt)
            best.results[(dv, de)] = res
            val, params = res.value, res.params
        if val > best.value:
            best.value, best.factorization, best.params = val, (dv, de), params
    return best


@dataclass
class DistillBound:
    value: float
    to_a: EntanglementValue
    to_b: EntanglementValue
    hashing_sum: float


def distill_lb(psi: PureState, opt: OptimizerConfig | None = None, k: int = 2) -> DistillBound:
    a = measured_hashing_lb(psi, "A", k, opt)
    b = measured_hashing_lb(psi, "B", k, opt)
    hsum = hashing_lb(psi, "A").value + hashing_lb(psi, "B").value
    return DistillBound(a.value + b.value, a, b, hsum)


# -- aggregation ------------------------------------------------------------------

@dataclass(frozen=True)
class BoundsConfig:
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    factorizations: tuple | None = None
    instrument_outcomes: int = 2
    include_ef_bound: bool = False
    ef_ensemble_size: int | None = None


@dataclass
class UncommonInfoReport:
    dims: tuple
    s_a: float
    s_b: float
    s_ab: float
    s_a_given_b: float
    s_b_given_a: float
    mutual: float
    ub_merge_send: float
    ub_double_copy: float
    ub_double_copy_hv_form: float
    ub_one_sided: float | None
    ub_do_nothing: float | None
    ub_ef: float | None
    lb_channel_split: float
    lb_distill: float
    lb_hashing: float
    upsilon_lb: float
    upsilon_ub: float
    common_info_interval: tuple
    classical_reference: float | None
    classical_gap: float | None
    flags: dict
    metadata: dict = field(default_factory=dict)

    @property
    def interval(self) -> tuple[float, float]:
        return (self.upsilon_lb, self.upsilon_ub)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["dims"] = list(self.dims)
        out["common_info_interval"] = list(self.common_info_interval)
        return out


def aggregate(rho: DensityMatrix, config: BoundsConfig | None = None) -> UncommonInfoReport:
    """Run every applicable bound and collect the interval for the uncommon information."""
    _check_bipartite(rho)
    cfg = config or BoundsConfig()
    opt = cfg.optimizer
    s_a, s_b, s_ab = entropy_of(rho, [0]), entropy_of(rho, [1]), entropy_of(rho, [0, 1])

    support = support_flags(rho)
    cls = detect_classical(rho)
    psi = purify(rho)

    ms = merge_and_send_ub(rho)
    dc = double_copy_ub(rho, opt)
    one_sided = None
    if cls.a_side or cls.b_side:
        one_sided = one_sided_classical_rate(rho, "A" if cls.a_side else "B", cls)
    nothing = 0.0 if support.fires else None
    ef = None
    if cfg.include_ef_bound:
        ef_ar = eof_numeric(partial_trace(psi, [0, 2]), cfg.ef_ensemble_size, opt)
        ef_br = eof_numeric(partial_trace(psi, [1, 2]), cfg.ef_ensemble_size, opt)
        ef = ef_ar.value + ef_br.value

    if psi.dims[2] == 1:
        split = SplitBound(0.0, None, None)
        dist = DistillBound(0.0, EntanglementValue(0.0, "measured-hashing"),
                            EntanglementValue(0.0, "measured-hashing"), 0.0)
    else:
        split = channel_split_lb(psi, cfg.factorizations, opt)
        dist = distill_lb(psi, opt, cfg.instrument_outcomes)

    uppers = [ms, dc.value] + [u for u in (one_sided, nothing, ef) if u is not None]
    ub = max(0.0, min(uppers))
    lb = max(0.0, split.value, dist.value)

    classical_ref = None
    gap = None
    if cls.classical:
        classical_ref = conditional(rho, [0], [1]) + conditional(rho, [1], [0])
        gap = classical_ref - lb

    flags = {
        "is_pure": support.is_pure,
        "is_classical": cls.classical,
        "is_one_sided_classical_A": cls.a_side,
        "is_one_sided_classical_B": cls.b_side,
        "classical_undecided": cls.undecided_a or cls.undecided_b,
        "is_symmetric_support": support.is_symmetric_support,
        "is_antisymmetric_support": support.is_antisymmetric_support,
    }
    meta = {
        "double_copy_a": dc.result_a.summary(),
        "double_copy_b": dc.result_b.summary(),
        "channel_split": {f"{k[0]}x{k[1]}": v.summary() for k, v in split.results.items()},
        "channel_split_best": list(split.factorization) if split.factorization else None,
        "distill_a": dist.to_a.result.summary() if dist.to_a.result else None,
        "distill_b": dist.to_b.result.summary() if dist.to_b.result else None,
        "optimizer": asdict(opt),
    }
    return UncommonInfoReport(
        dims=tuple(rho.dims), s_a=s_a, s_b=s_b, s_ab=s_ab,
        s_a_given_b=s_ab - s_b, s_b_given_a=s_ab - s_a, mutual=s_a + s_b - s_ab,
        ub_merge_send=ms, ub_double_copy=dc.value, ub_double_copy_hv_form=dc.hv_form,
        ub_one_sided=one_sided, ub_do_nothing=nothing, ub_ef=ef,
        lb_channel_split=split.value, lb_distill=dist.value, lb_hashing=dist.hashing_sum,
        upsilon_lb=lb, upsilon_ub=ub,
        common_info_interval=(max(0.0, s_ab - ub), max(0.0, s_ab - lb)),
        classical_reference=classical_ref, classical_gap=gap,
        flags=flags, metadata=meta,
    )
