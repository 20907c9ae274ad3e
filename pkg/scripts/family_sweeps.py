"""Sweep every built-in family and write one CSV per family.

    python scripts/family_sweeps.py --out-dir results/ --steps 11 --seed 0
"""

import argparse
from pathlib import Path

from uncommoninfo.bounds import BoundsConfig
from uncommoninfo.families import ALL_FAMILIES
from uncommoninfo.optimizer import OptimizerConfig
from uncommoninfo.report import SweepSpec, run_sweep, sweep_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--steps", type=int, default=11)
    ap.add_argument("--starts", type=int, default=32)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--families", nargs="*", default=list(ALL_FAMILIES))
    args = ap.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cfg = BoundsConfig(optimizer=OptimizerConfig(starts=args.starts, seed=args.seed))
    for fam in args.families:
        rows = run_sweep(SweepSpec(fam, 0.0, 1.0, args.steps, args.seed), cfg, args.workers)
        path = out / f"{fam}.csv"
        path.write_text(sweep_csv(rows, args.seed))
        gaps = [rep.upsilon_ub - rep.upsilon_lb for _, rep in rows]
        print(f"{fam:<18} {len(rows):3d} rows  max interval width {max(gaps):.4f}  -> {path}")


if __name__ == "__main__":
    main()
