"""thzmix: coherence-driven four-wave mixing of short THz pulses in gases.

Simulates four-level loop media (double-Lambda and ladder-Lambda) coupled to
four co-propagating fields: density-matrix dynamics per cell slice, Heun field
march in the retarded frame, photon bookkeeping, and closed-form conversion
estimates.
"""

from .analytics import (
    ManleyRoweCheck,
    PulseMetrics,
    RunReport,
    analytic_output_field,
    build_run_report,
    efficiency_formula,
    field_fluence,
    manley_rowe_energy_bound,
    manley_rowe_residual,
    photon_flux,
    photon_flux_profile,
    pulse_metrics,
    transient_output_field,
)
from .bloch import (
    StabilityError,
    build_rwa_hamiltonian,
    check_time_step,
    dark_state_coherence,
    liouville_rhs,
    step_density_matrix,
    validate_density_matrix,
)
from .config import (
    ConfigError,
    GridSpec,
    NumericsSpec,
    RunConfig,
    SweepSpec,
    config_hash,
    dump_config,
    expand_sweep,
    load_config,
    load_sweep,
    parse_config,
    parse_sweep,
    save_config,
)
from .levels import Detunings, LevelScheme, RelaxationModel, carrier_frequencies
from .medium import MediumSpec, coupling_constant, fill_factor
from .presets import get_preset, preset_names, preset_raw
from .propagation import (
    FieldGrid,
    MarchResult,
    NumericsError,
    build_field_grid,
    march_cell,
)
from .pulses import PulseSpec, ScenarioSpec, gaussian_envelope, overlap_window

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "Detunings",
    "FieldGrid",
    "GridSpec",
    "LevelScheme",
    "ManleyRoweCheck",
    "MarchResult",
    "MediumSpec",
    "NumericsError",
    "NumericsSpec",
    "PulseMetrics",
    "PulseSpec",
    "RelaxationModel",
    "RunConfig",
    "RunReport",
    "ScenarioSpec",
    "StabilityError",
    "SweepSpec",
    "analytic_output_field",
    "build_field_grid",
    "build_run_report",
    "build_rwa_hamiltonian",
    "carrier_frequencies",
    "check_time_step",
    "config_hash",
    "dump_config",
    "efficiency_formula",
    "coupling_constant",
    "dark_state_coherence",
    "expand_sweep",
    "field_fluence",
    "fill_factor",
    "gaussian_envelope",
    "get_preset",
    "liouville_rhs",
    "load_config",
    "load_sweep",
    "manley_rowe_energy_bound",
    "manley_rowe_residual",
    "march_cell",
    "overlap_window",
    "parse_config",
    "parse_sweep",
    "photon_flux",
    "photon_flux_profile",
    "preset_names",
    "preset_raw",
    "pulse_metrics",
    "save_config",
    "step_density_matrix",
    "transient_output_field",
    "validate_density_matrix",
    "__version__",
]
