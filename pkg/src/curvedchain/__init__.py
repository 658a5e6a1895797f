"""Dirac vacuum on deformed free-fermionic chains.

Exact ground states of inhomogeneous hopping chains (curved optical-lattice
metrics), their correlators and entanglement entropies, boundary Casimir
forces, and least-squares extraction of the scaling constants.
"""

from .casimir import (
    ForceRecord,
    PotentialScan,
    casimir_force,
    force_prediction,
    hellmann_feynman_estimate,
    obstacle_net_force,
    potential_scan,
)
from .config import ExperimentConfig, parse_config
from .entanglement import (
    EntropyProfile,
    block_entropy,
    cft_entropy_deformed,
    cft_entropy_flat,
    cft_entropy_rainbow,
    cft_entropy_rindler,
    entropy_profile,
)
from .errors import (
    ConfigError,
    ConvergenceError,
    CurvedChainError,
    FillingError,
    FitError,
    InvalidMetricError,
)
from .fitting import (
    FitResult,
    crossover_size,
    effective_fermi_velocity,
    fit_curved_cardy,
    fit_flat_cardy,
)
from .metrics import (
    HoppingProfile,
    MetricKind,
    MetricSpec,
    build_profile,
    deformed_coordinate,
    log_derivative,
    uv_cutoff,
)
from .runner import run_experiment
from .tridiag import HoppingMatrix, Spectrum, eigendecompose, hopping_matrix
from .vacuum import (
    CorrelationMatrix,
    correlation_matrix,
    first_order_energy,
    ground_energy,
    ground_state,
    local_correlators,
    smoothed_correlators,
    vacuum_energy,
)

__version__ = "0.1.0"
