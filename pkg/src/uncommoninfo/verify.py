"""Randomized consistency checks over sampled states.

Every check records a margin: how far the sample sits inside the allowed
region (negative means violated).  The summary lists pass/fail counts and
the worst margin per check.
"""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass, field

import numpy as np

from .bounds import BoundsConfig, aggregate
from .entanglement import eof_numeric, eof_wootters
from .entropy import entropy_of
from .optimizer import OptimizerConfig
from .qlinalg import (
    DensityMatrix, InvalidStateError, check_density, haar_unitary, partial_trace, purify,
    random_density, swap,
)

BOUND_SLACK = 2e-3
ENTROPY_SLACK = 1e-9
RANGE_SLACK = 1e-6
IDENTITY_TOL = 1e-9
WOOTTERS_BAND = (-1e-9, 1e-3)


@dataclass
class CheckStats:
    passed: int = 0
    failed: int = 0
    worst: float = float("inf")
    failures: list = field(default_factory=list)

    def record(self, margin: float, where: str):
        self.worst = min(self.worst, margin)
        if margin >= 0:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(where)


class Checks:
    def __init__(self):
        self.stats: "OrderedDict[str, CheckStats]" = OrderedDict()

    def record(self, name: str, margin: float, where: str):
        self.stats.setdefault(name, CheckStats()).record(float(margin), where)

    @property
    def ok(self) -> bool:
        return all(s.failed == 0 for s in self.stats.values())

    def table(self) -> str:
        lines = [f"{'check':<26}{'pass':>6}{'fail':>6}  worst_margin"]
        for name, s in self.stats.items():
            lines.append(f"{name:<26}{s.passed:>6}{s.failed:>6}  {s.worst:+.6e}")
        bad = [(n, w) for n, s in self.stats.items() for w in s.failures]
        if bad:
            lines.append("failures:")
            lines.extend(f"  {n}: {w}" for n, w in bad)
        lines.append("result: " + ("PASS" if self.ok else "FAIL"))
        return "\n".join(lines)


def sample_states(n_qubits: int, n_qutrit: int, seed: int) -> list[tuple[str, DensityMatrix]]:
    """Random states on 2x2 and 2x3 with ranks cycling from 2 up to full."""
    out = []
    children = np.random.SeedSequence(seed).spawn(n_qubits + n_qutrit)
    for i in range(n_qubits + n_qutrit):
        dims = (2, 2) if i < n_qubits else (2, 3)
        d = dims[0] * dims[1]
        rank = 2 + i % (d - 1)
        rng = np.random.default_rng(children[i])
        out.append((f"{dims[0]}x{dims[1]}#{i}", random_density(d, rank, rng, dims)))
    return out


def _local_unitary(rho: DensityMatrix, rng) -> DensityMatrix:
    u = np.kron(haar_unitary(rho.dims[0], rng), haar_unitary(rho.dims[1], rng))
    m = u @ rho.data @ u.conj().T
    return DensityMatrix(0.5 * (m + m.conj().T), rho.dims)


def _entropy_checks(checks: Checks, name: str, rho: DensityMatrix):
    s_a, s_b, s_ab = entropy_of(rho, [0]), entropy_of(rho, [1]), entropy_of(rho, [0, 1])
    checks.record("subadditivity", s_a + s_b - s_ab + ENTROPY_SLACK, name)
    checks.record("araki-lieb", s_ab - abs(s_a - s_b) + ENTROPY_SLACK, name)
    psi = purify(rho)
    dens = psi.density()
    dual = max(abs(s_ab - entropy_of(dens, [2])),
               abs(s_a - entropy_of(dens, [1, 2])),
               abs(s_b - entropy_of(dens, [0, 2])))
    checks.record("purification-duality", ENTROPY_SLACK - dual, name)
    ssa = (entropy_of(dens, [0, 1]) + entropy_of(dens, [1, 2])
           - entropy_of(dens, [0, 1, 2]) - entropy_of(dens, [1]))
    checks.record("strong-subadditivity", ssa + ENTROPY_SLACK, name)


def _bound_checks(checks: Checks, name: str, rep):
    lowers = [rep.lb_channel_split, rep.lb_distill, rep.lb_hashing, rep.upsilon_lb]
    uppers = [rep.ub_merge_send, rep.ub_double_copy, rep.upsilon_ub]
    uppers += [u for u in (rep.ub_one_sided, rep.ub_do_nothing, rep.ub_ef) if u is not None]
    checks.record("lower<=upper", min(uppers) + BOUND_SLACK - max(lowers), name)
    bounds = lowers + uppers
    checks.record("bounds-nonnegative", min(bounds) + ENTROPY_SLACK, name)
    lo, hi = rep.common_info_interval
    checks.record("common-info-range",
                  min(lo + RANGE_SLACK, rep.s_ab + RANGE_SLACK - hi, hi - lo + RANGE_SLACK), name)
    checks.record("double-copy-identity",
                  IDENTITY_TOL - abs(rep.ub_double_copy - rep.ub_double_copy_hv_form), name)


def run_verify(samples: int = 100, seed: int = 0, extra_states=(), invariance_samples: int = 5,
               config: BoundsConfig | None = None) -> Checks:
    """Run the full check suite.

    ``samples`` two-qubit states and ``samples // 2`` qubit-qutrit states are
    drawn.  ``extra_states`` holds (name, matrix, dims) triples that are
    checked for validity first; invalid ones are reported and skipped.
    """
    cfg = config or BoundsConfig(optimizer=OptimizerConfig(seed=seed))
    checks = Checks()
    states = sample_states(samples, samples // 2, seed)

    for name, m, dims in extra_states:
        try:
            check_density(np.asarray(m, dtype=complex))
            states.append((name, DensityMatrix(m, dims)))
            checks.record("psd", 0.0, name)
        except InvalidStateError as exc:
            checks.record(exc.check, -1.0, f"{name}: {exc}")

    reports = {}
    for name, rho in states:
        checks.record("psd", float(rho.eigvals().min()), name)
        _entropy_checks(checks, name, rho)
        rep = aggregate(rho, cfg)
        reports[name] = rep
        _bound_checks(checks, name, rep)

    rng = np.random.default_rng(np.random.SeedSequence([seed, 1]))
    subset = [(n, r) for n, r in states if r.dims == (2, 2)][:invariance_samples]
    for name, rho in subset:
        base = reports[name]
        moved = aggregate(_local_unitary(rho, rng), cfg)
        checks.record("local-unitary-invariance", BOUND_SLACK - _interval_gap(base, moved), name)
        swapped = aggregate(swap(rho), cfg)
        checks.record("label-swap", BOUND_SLACK - _interval_gap(base, swapped), name)
        psi = purify(rho)
        ef = (eof_numeric(partial_trace(psi, [0, 2]), opt=cfg.optimizer).value
              + eof_numeric(partial_trace(psi, [1, 2]), opt=cfg.optimizer).value)
        checks.record("ef-upper-bound", ef - base.upsilon_lb + BOUND_SLACK, name)

    for i in range(invariance_samples):
        rho = random_density(4, 1 + i % 2, np.random.default_rng(np.random.SeedSequence([seed, 2, i])), (2, 2))
        diff = eof_numeric(rho, 4, cfg.optimizer).value - eof_wootters(rho)
        lo, hi = WOOTTERS_BAND
        checks.record("wootters-agreement", min(diff - lo, hi - diff), f"rank<=2 #{i}")
    return checks


def _interval_gap(a, b) -> float:
    return max(abs(a.upsilon_lb - b.upsilon_lb), abs(a.upsilon_ub - b.upsilon_ub))
