"""VDTP parameter tuning with metaheuristics over a simulated VANET."""

from ._core import (
    Algorithm,
    Bounds,
    ConfigError,
    FitnessReport,
    OptimizerParams,
    RunRecord,
    Scenario,
    TransferOutcome,
    VdtpConfig,
    bound_violations,
    compare,
    evaluate,
    fitness_term,
    lossless_session_time_s,
    n_chunks,
    parse_algorithm,
    preset_names,
    rastrigin,
    rosenbrock,
    run,
    run_benchmark,
    scenario,
    sphere,
    stats,
)

__all__ = [
    "Algorithm",
    "Bounds",
    "ConfigError",
    "FitnessReport",
    "OptimizerParams",
    "RunRecord",
    "Scenario",
    "TransferOutcome",
    "VdtpConfig",
    "bound_violations",
    "compare",
    "evaluate",
    "fitness_term",
    "lossless_session_time_s",
    "n_chunks",
    "parse_algorithm",
    "preset_names",
    "rastrigin",
    "rosenbrock",
    "run",
    "run_benchmark",
    "scenario",
    "sphere",
    "stats",
]
