"""Command-line entry point.

Exit codes: 0 ok, 1 verification failure, 2 invalid input, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bounds import BoundsConfig, aggregate
from .families import ALL_FAMILIES
from .optimizer import OptimizerConfig
from .qlinalg import InvalidStateError, random_density
from .report import SweepSpec, csv_row, report_json, run_sweep, sweep_csv, CSV_COLUMNS
from .statefile import StateFileError, read_raw, read_state, write_state
from .verify import run_verify

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_IO = 0, 1, 2, 3


def _fail(code: int, msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


def _config(args) -> BoundsConfig:
    return BoundsConfig(
        optimizer=OptimizerConfig(starts=args.starts, max_iter=args.max_iter, seed=args.seed),
        include_ef_bound=getattr(args, "ef_bound", False),
    )


def _write(path: str, text: str) -> int | None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot write {path}: {exc}")
    return None


def cmd_compute(args) -> int:
    try:
        rho = read_state(args.file)
        _, _, label = read_raw(args.file)
    except OSError as exc:
        return _fail(EXIT_IO if not isinstance(exc, FileNotFoundError) else EXIT_INPUT,
                     f"cannot read {args.file}: {exc}")
    except (InvalidStateError, StateFileError) as exc:
        return _fail(EXIT_INPUT, f"invalid state file {args.file}: {exc}")
    if len(rho.dims) != 2:
        return _fail(EXIT_INPUT, f"dims: expected a bipartite state, got {list(rho.dims)}")
    rep = aggregate(rho, _config(args))
    print(report_json(rep, args.seed, label))
    if args.csv:
        row = ",".join(csv_row(label or args.file, rep, args.seed))
        err = _write(args.csv, ",".join(CSV_COLUMNS) + "\n" + row + "\n")
        if err is not None:
            return err
    return EXIT_OK


def cmd_sweep(args) -> int:
    try:
        dims = tuple(int(x) for x in args.dims.split(","))
        spec = SweepSpec(args.family, args.start, args.stop, args.steps, args.seed, dims)
    except ValueError as exc:
        return _fail(EXIT_INPUT, str(exc))
    out = Path(args.out)
    if not out.parent.exists():
        return _fail(EXIT_IO, f"cannot write {out}: directory {out.parent} does not exist")
    rows = run_sweep(spec, _config(args), args.workers)
    err = _write(args.out, sweep_csv(rows, args.seed))
    if err is not None:
        return err
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    extra = []
    for path in args.state or []:
        try:
            m, dims, _ = read_raw(path)
        except OSError as exc:
            return _fail(EXIT_IO, f"cannot read {path}: {exc}")
        except StateFileError as exc:
            return _fail(EXIT_INPUT, f"invalid state file {path}: {exc}")
        extra.append((path, m, dims))
    checks = run_verify(args.samples, args.seed, extra, args.invariance_samples, _config(args))
    print(f"verify seed={args.seed} samples={args.samples}+{args.samples // 2}")
    print(checks.table())
    return EXIT_OK if checks.ok else EXIT_VERIFY


def cmd_random(args) -> int:
    try:
        dims = tuple(int(x) for x in args.dims.split(","))
        d = dims[0] * dims[1]
        rho = random_density(d, args.rank or d, args.seed, dims)
    except ValueError as exc:
        return _fail(EXIT_INPUT, str(exc))
    try:
        write_state(args.out, rho, f"random dims={list(dims)} rank={args.rank or d} seed={args.seed}")
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot write {args.out}: {exc}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="uncommoninfo",
                                description="Bounds on the uncommon information of bipartite states")
    sub = p.add_subparsers(dest="command", required=True)

    def opt_flags(sp, starts=32):
        sp.add_argument("--starts", type=int, default=starts, help="optimizer starts per search")
        sp.add_argument("--max-iter", type=int, default=400, help="simplex iterations per start")
        sp.add_argument("--seed", type=int, default=0)

    c = sub.add_parser("compute", help="all bounds for one state file (JSON on stdout)")
    c.add_argument("file")
    opt_flags(c)
    c.add_argument("--ef-bound", action="store_true",
                   help="also fold the formation-based upper bound into the interval")
    c.add_argument("--csv", help="also write a one-row CSV here")
    c.set_defaults(func=cmd_compute)

    s = sub.add_parser("sweep", help="CSV of bounds along a state family")
    s.add_argument("--family", required=True, choices=ALL_FAMILIES)
    s.add_argument("--from", dest="start", type=float, default=0.0)
    s.add_argument("--to", dest="stop", type=float, default=1.0)
    s.add_argument("--steps", type=int, default=5, help="points (sample count for 'random')")
    s.add_argument("--dims", default="2,2", help="local dimensions for the random family")
    s.add_argument("--out", required=True)
    s.add_argument("--workers", type=int, default=1)
    opt_flags(s)
    s.set_defaults(func=cmd_sweep)

    v = sub.add_parser("verify", help="randomized invariant suite")
    v.add_argument("--samples", type=int, default=100,
                   help="two-qubit samples; half as many qubit-qutrit samples are added")
    v.add_argument("--invariance-samples", type=int, default=5)
    v.add_argument("--state", action="append", help="extra state file to include (repeatable)")
    opt_flags(v)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("random", help="write a random state file")
    r.add_argument("--dims", default="2,2")
    r.add_argument("--rank", type=int, default=None)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--out", required=True)
    r.set_defaults(func=cmd_random)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
