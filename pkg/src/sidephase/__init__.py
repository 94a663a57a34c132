"""Pure-dephasing decoherence estimates for silicon spin registers."""

from .constants import (
    CONSTANTS,
    ELECTRON,
    NATURAL_SI29_ABUNDANCE_PERCENT,
    PHOSPHORUS_31,
    SILICON,
    SILICON_29,
    SPECIES,
    MaterialParams,
    PhysicalConstants,
    SpinSpecies,
    boltzmann_ratio,
    spin_half_variance,
    spin_half_variance_full_arg,
)
from .qubit import (
    BlochState,
    DensityMatrix,
    apply_dephasing,
    dephased_eigenvalues,
    density_from_bloch,
    fidelity,
    limiting_populations,
)
from .dephasing import (
    DecoherenceProfile,
    ExponentialCorrelation,
    build_profile,
    coherence_envelope,
    decoherence_time,
    gamma_exact,
    gamma_static,
)
from .mechanisms import (
    ConcentrationBound,
    HyperfineElectronChannel,
    NuclearImpurityChannel,
    ParamagneticImpurityChannel,
    PhononRamanChannel,
    ThresholdUnattainableError,
    UnsupportedChannelError,
    channel_to_correlation,
    debye_integral,
    hyperfine_variance,
    max_nuclear_impurity_concentration,
    max_paramagnetic_concentration,
    nuclear_impurity_variance,
    paramagnetic_variance,
    phonon_rate,
    required_field_temperature_ratio,
)
from .montecarlo import (
    CoherenceComparison,
    DegenerateStatisticsError,
    EnsembleCoherence,
    PlanRejectedError,
    SimulationPlan,
    accumulate_phase,
    compare_to_analytic,
    ensemble_coherence,
    generate_trajectory,
)
from .register import (
    EnsembleErrorReport,
    ErrorSampler,
    ensemble_average_state,
    error_phase,
    error_probability,
    error_unitary,
    ground_fidelity,
    perturbed_ground_state,
)
from .audit import AuditEntry, build_audit, render_table

__version__ = "0.1.0"
