"""Displacement photon-counting receiver models for coherent-state BPSK.

Models the generalized Kennedy receiver as an induced binary channel and
optimizes its pre-detection displacement and symbol prior for channel
capacity, one-shot discrimination error, or finite-blocklength rate, with
homodyne, exact-nulling, quantum-optimal, single-copy, and collective
benchmarks for comparison.

The hot numerical kernels live in a compiled extension with a pure-Python
fallback; ``backend_name()`` reports which one is active.
"""

from ._backend import backend_name
from .blocklength import (
    BlocklengthQuery,
    inverse_q_tail,
    max_rate_over_receiver_params,
    normal_approx_rate,
    q_tail,
)
from .info import (
    InfoDensitySample,
    binary_entropy,
    channel_dispersion,
    information_density,
    mutual_information,
)
from .optimize import (
    BracketError,
    OptimResult,
    capacity_fixed_beta,
    capacity_fixed_prior,
    capacity_gk,
    estimate_error_exponent,
    find_crossover,
    min_error_beta,
)
from .receivers import (
    BinaryChannel,
    Displacement,
    ModeEnergy,
    Prior,
    c1_capacity,
    gk_error,
    gk_transition,
    helstrom_error,
    holevo_capacity,
    homodyne_capacity,
    homodyne_error,
    simulate_clicks,
)
from .sweep import (
    FIGURES,
    SweepConfigError,
    SweepRow,
    SweepSpec,
    emit,
    figure_command,
    load_rows,
    run_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "BinaryChannel",
    "BlocklengthQuery",
    "BracketError",
    "Displacement",
    "FIGURES",
    "InfoDensitySample",
    "ModeEnergy",
    "OptimResult",
    "Prior",
    "SweepConfigError",
    "SweepRow",
    "SweepSpec",
    "backend_name",
    "binary_entropy",
    "c1_capacity",
    "capacity_fixed_beta",
    "capacity_fixed_prior",
    "capacity_gk",
    "channel_dispersion",
    "emit",
    "estimate_error_exponent",
    "figure_command",
    "find_crossover",
    "gk_error",
    "gk_transition",
    "helstrom_error",
    "holevo_capacity",
    "homodyne_capacity",
    "homodyne_error",
    "information_density",
    "inverse_q_tail",
    "load_rows",
    "max_rate_over_receiver_params",
    "min_error_beta",
    "mutual_information",
    "normal_approx_rate",
    "q_tail",
    "run_sweep",
    "simulate_clicks",
    "__version__",
]
