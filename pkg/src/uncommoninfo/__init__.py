"""Bounds on the quantum uncommon information (state-exchange cost) of bipartite states."""

__version__ = "0.1.0"

from .bounds import BoundsConfig, UncommonInfoReport, aggregate  # noqa: E402
from .optimizer import OptimizerConfig  # noqa: E402
from .qlinalg import DensityMatrix, PureState, purify  # noqa: E402

__all__ = [
    "BoundsConfig", "DensityMatrix", "OptimizerConfig", "PureState", "UncommonInfoReport",
    "aggregate", "purify", "__version__",
]
