"""Deterministic 1-D simulator of wave-packet reflection from a
rectangular barrier whose height can be switched off mid-scattering,
with event observables for the transient reflection excess
("superarrivals") and a classical phase-space ensemble for comparison.
"""

from .barrier import (
    BarrierSchedule,
    LINEAR_RAMP,
    STATIC,
    height_at,
    potential_on_grid,
    ramped_barrier,
    static_barrier,
)
from .classical import (
    ClassicalEnsemble,
    advance_ensemble,
    classical_reflection_series,
    sample_ensemble,
    smoothed_potential,
    step_classical,
)
from .config import (
    DEFAULT_DETECTOR_SWEEP,
    DEFAULT_EPSILON_SWEEP,
    DEFAULT_SNAPSHOT_TIMES,
    DEFAULT_WIDTH_SWEEP,
    default_config,
    load_config,
)
from .errors import ConfigError, DetectionError, SuperarrivalsError
from .kernels import active_backend, get_backend
from .model import (
    DerivedQuantities,
    ExperimentConfig,
    Grid,
    PacketSpec,
    UnitSystem,
    build_grid,
    derived_quantities,
    momentum_width,
    validate_config,
)
from .observables import (
    ReflectionSeries,
    SuperarrivalReport,
    analyze_pair,
    asymptotic_reflection,
    compute_eta,
    detect_t_c,
    detect_t_d,
    signal_velocity,
)
from .oracles import (
    MomentumSpectrum,
    asymptotic_reflection_integral,
    free_gaussian_moments,
    momentum_spectrum,
    plane_wave_reflection,
    plane_wave_transmission,
)
from .solver import WaveFunction, evolve, fidelity, init_gaussian, step
from .sweep import SweepPlan, load_sweep_plan, point_config, run_sweep

__version__ = "0.1.0"

__all__ = [
    "BarrierSchedule",
    "ClassicalEnsemble",
    "ConfigError",
    "DEFAULT_DETECTOR_SWEEP",
    "DEFAULT_EPSILON_SWEEP",
    "DEFAULT_SNAPSHOT_TIMES",
    "DEFAULT_WIDTH_SWEEP",
    "DerivedQuantities",
    "DetectionError",
    "ExperimentConfig",
    "Grid",
    "LINEAR_RAMP",
    "MomentumSpectrum",
    "PacketSpec",
    "ReflectionSeries",
    "STATIC",
    "SuperarrivalReport",
    "SuperarrivalsError",
    "SweepPlan",
    "UnitSystem",
    "WaveFunction",
    "active_backend",
    "advance_ensemble",
    "analyze_pair",
    "asymptotic_reflection",
    "asymptotic_reflection_integral",
    "build_grid",
    "classical_reflection_series",
    "compute_eta",
    "default_config",
    "derived_quantities",
    "detect_t_c",
    "detect_t_d",
    "evolve",
    "fidelity",
    "free_gaussian_moments",
    "get_backend",
    "height_at",
    "init_gaussian",
    "load_config",
    "load_sweep_plan",
    "momentum_spectrum",
    "momentum_width",
    "plane_wave_reflection",
    "plane_wave_transmission",
    "point_config",
    "potential_on_grid",
    "ramped_barrier",
    "run_sweep",
    "sample_ensemble",
    "signal_velocity",
    "smoothed_potential",
    "static_barrier",
    "step",
    "step_classical",
    "validate_config",
]
