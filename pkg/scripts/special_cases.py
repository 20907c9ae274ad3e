"""Print the bound interval for the named special states.

    python scripts/special_cases.py [--starts 32] [--seed 0]
"""

import argparse

import numpy as np

from uncommoninfo.bounds import BoundsConfig, aggregate
from uncommoninfo.entropy import classical_state
from uncommoninfo.families import one_sided, symmetric_mixture, werner
from uncommoninfo.optimizer import OptimizerConfig
from uncommoninfo.qlinalg import DensityMatrix, projector


def cases():
    bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
    return {
        "bell": DensityMatrix(projector(bell), (2, 2)),
        "maximally mixed": DensityMatrix(np.eye(4) / 4, (2, 2)),
        "correlated bits": classical_state(np.diag([0.5, 0.5])),
        "skewed classical": classical_state(np.array([[0.5, 0.25], [0.0, 0.25]])),
        "symmetric mixture": symmetric_mixture(0.5),
        "one-sided classical": one_sided(0.5),
        "werner p=0.8": werner(0.8),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--starts", type=int, default=32)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = BoundsConfig(optimizer=OptimizerConfig(starts=args.starts, seed=args.seed))

    print(f"{'state':<22}{'S(AB)':>8}{'S(A|B)':>9}{'S(B|A)':>9}{'lower':>9}{'upper':>9}  flags")
    for name, rho in cases().items():
        r = aggregate(rho, cfg)
        flags = ",".join(k.removeprefix("is_") for k, v in r.flags.items() if v)
        print(f"{name:<22}{r.s_ab:8.4f}{r.s_a_given_b:9.4f}{r.s_b_given_a:9.4f}"
              f"{r.upsilon_lb:9.4f}{r.upsilon_ub:9.4f}  {flags}")


if __name__ == "__main__":
    main()
