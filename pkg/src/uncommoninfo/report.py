"""Report serialization and parameter sweeps."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .bounds import BoundsConfig, UncommonInfoReport, aggregate
from .families import ALL_FAMILIES, family_state

CSV_COLUMNS = (
    "param", "S(AB)", "S(A|B)", "S(B|A)", "I(A:B)",
    "ub_merge_send", "ub_double_copy", "lb_channel_split", "lb_distill",
    "upsilon_lb", "upsilon_ub", "flags", "seed", "version",
)


def _num(x) -> str:
    return "" if x is None else repr(float(x))


def flag_string(report: UncommonInfoReport) -> str:
    return ";".join(k for k, v in report.flags.items() if v)


def csv_row(param, report: UncommonInfoReport, seed: int) -> list[str]:
    return [
        param if isinstance(param, str) else _num(param), _num(report.s_ab), _num(report.s_a_given_b), _num(report.s_b_given_a),
        _num(report.mutual), _num(report.ub_merge_send), _num(report.ub_double_copy),
        _num(report.lb_channel_split), _num(report.lb_distill), _num(report.upsilon_lb),
        _num(report.upsilon_ub), flag_string(report), str(seed), __version__,
    ]


def report_json(report: UncommonInfoReport, seed: int, label: str | None = None) -> str:
    out = {"version": __version__, "seed": seed}
    if label is not None:
        out["label"] = label
    out.update(report.to_dict())
    return json.dumps(out, indent=2, sort_keys=False, default=_json_default)


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, tuple):
        return list(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


@dataclass(frozen=True)
class SweepSpec:
    family: str
    start: float = 0.0
    stop: float = 1.0
    steps: int = 5
    seed: int = 0
    dims: tuple = (2, 2)

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if self.family not in ALL_FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {', '.join(ALL_FAMILIES)}")

    def params(self) -> list[float]:
        if self.family == "random":
            return [float(i) for i in range(self.steps)]
        return [float(x) for x in np.linspace(self.start, self.stop, self.steps)]


def _sweep_point(args):
    spec, param, config = args
    rho = family_state(spec.family, param, spec.seed, spec.dims)
    return aggregate(rho, config)


def run_sweep(spec: SweepSpec, config: BoundsConfig, workers: int = 1) -> list[tuple[float, UncommonInfoReport]]:
    """Aggregate every parameter point; results come back in parameter order."""
    jobs = [(spec, p, config) for p in spec.params()]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            reports = list(pool.map(_sweep_point, jobs))
    else:
        reports = [_sweep_point(j) for j in jobs]
    return list(zip(spec.params(), reports))


def sweep_csv(rows, seed: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for param, rep in rows:
        w.writerow(csv_row(param, rep, seed))
    return buf.getvalue()
