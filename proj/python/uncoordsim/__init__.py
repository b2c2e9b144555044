"""Python bindings for the uncoordinated serverless dispatch simulator."""

from ._core import (
    InternalError,
    IoError,
    Scenario,
    ValidationError,
    __version__,
    empirical_cdf,
    quantile_nearest_rank,
    run_simulation,
    sweep,
    sweep_to_dir,
)

__all__ = [
    "InternalError",
    "IoError",
    "Scenario",
    "ValidationError",
    "__version__",
    "empirical_cdf",
    "quantile_nearest_rank",
    "run_simulation",
    "sweep",
    "sweep_to_dir",
]
