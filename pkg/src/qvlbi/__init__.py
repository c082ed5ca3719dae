"""Quantitative toolkit for quantum-enabled optical VLBI.

Subsystems: stellar-source models and photon statistics
(:mod:`~qvlbi.source_model`), Fisher-information bounds
(:mod:`~qvlbi.estimation`), entanglement-assisted measurement protocols
with exact Bell-pair accounting (:mod:`~qvlbi.protocols`), baseline
geodesy (:mod:`~qvlbi.geodesy`), cavity photon transfer
(:mod:`~qvlbi.cavity`), astrophysical targets (:mod:`~qvlbi.astro`),
and the photometry pipeline (:mod:`~qvlbi.photometry`) that feeds all
of them.
"""

__version__ = "0.1.0"

from .astro import (
    OrbitSpec,
    angular_separation,
    lense_thirring_precession,
    required_baseline,
    schwarzschild_precession,
    wavelength_scaled_baseline,
)
from .cavity import (
    CavitySpec,
    StirapConfig,
    StirapTrajectory,
    cavity_kappa,
    cooperativity,
    coupling_from_cooperativity,
    decay_fidelity,
    stirap_simulate,
)
from .estimation import FiMatrix, QfiMatrix, crb, local_fi, qfi_matrix, qfi_numerical
from .geodesy import BaselineGeometry, baseline_crb, geometric_delay, phase_from_baseline, phase_mc
from .photometry import (
    PhotometryResult,
    PhotometrySpec,
    analyze,
    coherence_time,
    delta_lambda_from_delta_nu,
    delta_nu_from_delta_lambda,
    epsilon_per_bin,
    flux_from_magnitude,
    photon_rate,
)
from .protocols import (
    ArrivalTrace,
    BellLedger,
    BinKind,
    BinState,
    LogicalMemory,
    binary_encode,
    binary_search_run,
    consumption_rate,
    gottesman_oracle,
    gottesman_probs,
    memory_requirements,
    multiphoton_fidelity,
    sample_arrivals,
    single_photon_trace,
    trinomial_decode,
    unary_run,
)
from .source_model import (
    SourceParams,
    TwoModeCovariance,
    WeakSourceState,
    covariance,
    thermal_pmf,
    weak_state,
)

__all__ = [
    "__version__",
    "OrbitSpec",
    "angular_separation",
    "lense_thirring_precession",
    "required_baseline",
    "schwarzschild_precession",
    "wavelength_scaled_baseline",
    "CavitySpec",
    "StirapConfig",
    "StirapTrajectory",
    "cavity_kappa",
    "cooperativity",
    "coupling_from_cooperativity",
    "decay_fidelity",
    "stirap_simulate",
    "FiMatrix",
    "QfiMatrix",
    "crb",
    "local_fi",
    "qfi_matrix",
    "qfi_numerical",
    "BaselineGeometry",
    "baseline_crb",
    "geometric_delay",
    "phase_from_baseline",
    "phase_mc",
    "PhotometryResult",
    "PhotometrySpec",
    "analyze",
    "coherence_time",
    "delta_lambda_from_delta_nu",
    "delta_nu_from_delta_lambda",
    "epsilon_per_bin",
    "flux_from_magnitude",
    "photon_rate",
    "ArrivalTrace",
    "BellLedger",
    "BinKind",
    "BinState",
    "LogicalMemory",
    "binary_encode",
    "binary_search_run",
    "consumption_rate",
    "gottesman_oracle",
    "gottesman_probs",
    "memory_requirements",
    "multiphoton_fidelity",
    "sample_arrivals",
    "single_photon_trace",
    "trinomial_decode",
    "unary_run",
    "SourceParams",
    "TwoModeCovariance",
    "WeakSourceState",
    "covariance",
    "thermal_pmf",
    "weak_state",
]
