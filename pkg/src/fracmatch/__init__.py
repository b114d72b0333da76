"""Fractional matchings in k-out random hypergraphs.

Exact LP duality for matching/cover numbers, neighborhood-expansion
checks, k-out sampling, and stopping-time experiments.
"""

from .errors import BudgetError, CounterexampleError, InputError, SolverError
from .hypergraph import Hypergraph, read_hypergraph, write_hypergraph
from .lpcore import (
    KERNEL_BACKEND,
    LinearProgram,
    LPSolution,
    Rational,
    probe_optimal_face,
    solve_exact,
    solve_float,
)
from .matching import (
    CoverShapeReport,
    FractionalCover,
    FractionalMatching,
    cover_shape,
    has_perfect_fractional_matching,
    nu_star,
    tau_star,
)
from .expansion import (
    ExpansionReport,
    PartiteExpansionParams,
    check_graph_corollary,
    check_prop3_hypothesis,
    check_prop6_hypothesis,
    independence_number,
    is_lambda_expansive,
)
from .models import (
    HostModel,
    KOutSample,
    ProcessTrace,
    ThresholdDiagnostics,
    per_vertex_uniformity_check,
    preset_k_complete,
    preset_k_partite,
    run_process,
    sample_kout,
    threshold_diagnostics,
)
from .experiments import (
    ExperimentConfig,
    ExperimentResult,
    TrialRecord,
    experiment_implication_sweep,
    experiment_kout_pfm,
    experiment_stopping_time,
)

__version__ = "0.1.0"


def kernel_backend() -> str:
    """Which float pivot kernel is active: 'cython' or 'numpy'."""
    return KERNEL_BACKEND


__all__ = [
    "Hypergraph", "read_hypergraph", "write_hypergraph",
    "LinearProgram", "LPSolution", "Rational",
    "solve_exact", "solve_float", "probe_optimal_face",
    "FractionalMatching", "FractionalCover", "CoverShapeReport",
    "nu_star", "tau_star", "has_perfect_fractional_matching", "cover_shape",
    "ExpansionReport", "PartiteExpansionParams",
    "check_prop3_hypothesis", "check_prop6_hypothesis",
    "check_graph_corollary", "is_lambda_expansive", "independence_number",
    "HostModel", "KOutSample", "ProcessTrace", "ThresholdDiagnostics",
    "preset_k_complete", "preset_k_partite", "sample_kout",
    "per_vertex_uniformity_check", "run_process", "threshold_diagnostics",
    "ExperimentConfig", "ExperimentResult", "TrialRecord",
    "experiment_kout_pfm", "experiment_implication_sweep",
    "experiment_stopping_time",
    "InputError", "CounterexampleError", "SolverError", "BudgetError",
    "kernel_backend", "__version__",
]
