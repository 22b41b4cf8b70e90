"""MOEA/D with global replacement and generalized Lp scalarization."""

from .algorithm import RunConfig, RunResult, Variant, run
from .analysis import passthrough_fraction, region_map, sample_shell, verify_region_properties
from .config import ExperimentConfig, parse_config
from .decomposition import decompose, simplex_lattice_weights
from .errors import (
    ConfigurationError,
    DimensionError,
    DomainError,
    EncodingError,
    GlpMoeadError,
    LatticeError,
    NumericError,
    ParameterError,
    PFUnavailableError,
)
from .experiment import run_experiment, stats_summary
from .metrics import hypervolume, normalized_hypervolume, wilcoxon_rank_sum
from .problems import generate_instance, make_problem
from .scalarization import Scalarizer, scalarize_glp, scalarize_lp, scalarize_tch

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError",
    "DimensionError",
    "DomainError",
    "EncodingError",
    "ExperimentConfig",
    "GlpMoeadError",
    "LatticeError",
    "NumericError",
    "PFUnavailableError",
    "ParameterError",
    "RunConfig",
    "RunResult",
    "Scalarizer",
    "Variant",
    "decompose",
    "generate_instance",
    "hypervolume",
    "make_problem",
    "normalized_hypervolume",
    "parse_config",
    "passthrough_fraction",
    "region_map",
    "run",
    "run_experiment",
    "sample_shell",
    "scalarize_glp",
    "scalarize_lp",
    "scalarize_tch",
    "simplex_lattice_weights",
    "stats_summary",
    "verify_region_properties",
]
