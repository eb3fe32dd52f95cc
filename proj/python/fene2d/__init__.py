"""2D co-rotation FENE dumbbell numerical lab."""

from ._core import (
    CSV_HEADER,
    BlowUpError,
    ConfigError,
    ConstructionError,
    FeneParams,
    FitResult,
    RunConfig,
    RunResult,
    StepSizeError,
    TorusGrid,
    __version__,
    checkpoint_norms,
    decay_fit,
    exp_fit,
    gauss_jacobi,
    load_config,
    parse_config,
    read_csv_column,
    run_heat_baseline,
    run_simulation,
    run_suite,
    spectral_gap,
)

__all__ = [
    "CSV_HEADER",
    "BlowUpError",
    "ConfigError",
    "ConstructionError",
    "FeneParams",
    "FitResult",
    "RunConfig",
    "RunResult",
    "StepSizeError",
    "TorusGrid",
    "__version__",
    "checkpoint_norms",
    "decay_fit",
    "exp_fit",
    "gauss_jacobi",
    "load_config",
    "parse_config",
    "read_csv_column",
    "run_heat_baseline",
    "run_simulation",
    "run_suite",
    "spectral_gap",
]
