"""Bundled run configurations.

Each preset is a plain JSON-shaped document fed through the regular config
parser, so dumping a preset to disk and loading it back is the identity.
"""

from __future__ import annotations

import copy

from .config import RunConfig, parse_config

# CH3F-like ladder loop: two femtosecond pumps write the vibrational
# coherence, a 9.55 um probe converts it, the 500 um rotational edge
# radiates.  The second transition wavelength follows from loop closure.
_CH3F_SCHEME = {
    "signature": [1, -1, -1, -1],
    "lambda_pump_um": 0.8,
    "lambda_probe_um": 9.55,
    "lambda_thz_um": 500.0,
    "dipole_pump_debye": 1.0,
    "dipole_stokes_debye": 1.0,
    "dipole_probe_debye": 0.1,
    "dipole_thz_debye": 1.0,
}

_CH3F_SEQ = {
    "label": "ch3f-seq",
    "metadata": {
        "gas": "methyl fluoride",
        "temperature_k": 300.0,
        "probe_pulse_energy_uj": 30.0,
        "note": "write-then-convert scenario; terahertz rings as a free "
                "induction tail after the probe, so its duration is set by "
                "the coherence lifetime, not the probe",
    },
    "scheme": copy.deepcopy(_CH3F_SCHEME),
    "detunings": {"pump_mhz": 300.0, "stokes_mhz": 300.0, "probe_mhz": 0.0},
    "relaxation": {"gamma_phase_mhz": 250.0},
    "medium": {"density_per_cm3": 1.0e17, "length_cm": 1.0},
    "scenario": {
        "kind": "sequential",
        "pump": {"peak_rabi_per_s": 1.5e14, "center_fs": 0.0, "fwhm_fs": 150.0},
        "stokes": {"peak_rabi_per_s": 1.5e14, "center_fs": 0.0, "fwhm_fs": 150.0},
        "probe": {"peak_rabi_per_s": 1.0e12, "center_fs": 450.0, "fwhm_fs": 150.0},
    },
    "grid": {"t_min_fs": -400.0, "t_max_fs": 1400.0, "nt": 4096, "nz": 100},
    "numerics": {"clamp_coherence": [-0.35, 0.0], "beam_area_m2": 1.0e-6},
}

_CH3F_STIRAP = {
    "label": "ch3f-stirap",
    "metadata": {
        "gas": "methyl fluoride",
        "temperature_k": 300.0,
        "note": "counterintuitive pulse order; the emptying ground level "
                "gates the terahertz coherence, so the generated pulse is "
                "shorter than the probe",
    },
    "scheme": copy.deepcopy(_CH3F_SCHEME),
    "detunings": {"pump_mhz": 300.0, "stokes_mhz": 300.0, "probe_mhz": 0.0},
    "relaxation": {"gamma_phase_mhz": 250.0},
    "medium": {"density_per_cm3": 1.0e17, "length_cm": 1.0},
    "scenario": {
        "kind": "stirap",
        "stokes": {"peak_rabi_per_s": 3.0e14, "center_fs": 0.0, "fwhm_fs": 150.0},
        "pump": {"peak_rabi_per_s": 3.0e14, "center_fs": 150.0, "fwhm_fs": 150.0},
        "probe": {"peak_rabi_per_s": 1.0e12, "center_fs": 75.0, "fwhm_fs": 288.0},
    },
    "grid": {"t_min_fs": -900.0, "t_max_fs": 1500.0, "nt": 4096, "nz": 100},
    "numerics": {"clamp_coherence": [-0.35, 0.0], "beam_area_m2": 1.0e-6},
}

# Methanol-like far-IR conversion benchmark: prepared coherence at its
# physical maximum, long cell, picosecond probe.  Frozen-coherence run whose
# energy ratio lands near the closed-form efficiency.
_METHANOL_EFF = {
    "label": "methanol-eff",
    "metadata": {
        "gas": "methanol",
        "note": "frozen-coherence benchmark of the closed-form efficiency",
    },
    "scheme": {
        "signature": [1, -1, -1, -1],
        "lambda_pump_um": 1.0,
        "lambda_probe_um": 9.7,
        "lambda_thz_um": 100.0,
        "dipole_pump_debye": 1.0,
        "dipole_stokes_debye": 1.0,
        "dipole_probe_debye": 1.0,
        "dipole_thz_debye": 1.0,
    },
    "detunings": {},
    "relaxation": {},
    "medium": {"density_per_cm3": 5.0e16, "length_cm": 10.0},
    "scenario": {
        "kind": "sequential",
        "pump": None,
        "stokes": None,
        "probe": {"peak_rabi_per_s": 1.0e10, "center_fs": 0.0, "fwhm_fs": 1000.0},
    },
    "grid": {"t_min_fs": -2000.0, "t_max_fs": 1000.0, "nt": 2048, "nz": 100},
    "numerics": {"frozen": True, "clamp_coherence": [0.5, 0.0]},
}

# Lossless photon-bookkeeping runs: adiabatic Raman write (far-detuned, slow
# pulses leave the upper levels empty at the window end) followed by a
# detuned probe, so every absorbed photon is re-emitted inside the window.
def _mr_check(signature: list[int], label: str) -> dict:
    return {
        "label": label,
        "metadata": {
            "note": "lossless adiabatic run for photon-number bookkeeping",
        },
        "scheme": {
            "signature": list(signature),
            "lambda_pump_um": 0.8,
            "lambda_probe_um": 9.55,
            "lambda_thz_um": 500.0,
            "dipole_pump_debye": 0.1,
            "dipole_stokes_debye": 0.1,
            "dipole_probe_debye": 1.0,
            "dipole_thz_debye": 3.0,
        },
        "detunings": {
            "pump_mhz": 4.0e5,
            "stokes_mhz": 4.0e5,
            "probe_mhz": 3.0e5,
        },
        "relaxation": {},
        "medium": {"density_per_cm3": 2.0e14, "length_cm": 5.0},
        "scenario": {
            "kind": "sequential",
            "pump": {"peak_rabi_per_s": 9.0e11, "center_fs": 0.0,
                     "fwhm_fs": 8000.0},
            "stokes": {"peak_rabi_per_s": 9.0e11, "center_fs": 0.0,
                       "fwhm_fs": 8000.0},
            "probe": {"peak_rabi_per_s": 1.0e11, "center_fs": 20000.0,
                      "fwhm_fs": 4000.0},
        },
        "grid": {"t_min_fs": -16000.0, "t_max_fs": 26000.0,
                 "nt": 4096, "nz": 100},
        "numerics": {"clamp_coherence": [-0.35, 0.0]},
    }


# Frozen-coherence mixing oracle: weak probe, thin perturbative medium, the
# terahertz index is the knob that dials the collective phase mismatch.
_FWM_ORACLE = {
    "label": "fwm-oracle",
    "metadata": {
        "note": "perturbative frozen-coherence run for closed-form comparison",
    },
    "scheme": copy.deepcopy(_CH3F_SCHEME),
    "detunings": {},
    "relaxation": {},
    "medium": {"density_per_cm3": 1.0e14, "length_cm": 1.0},
    "scenario": {
        "kind": "sequential",
        "pump": None,
        "stokes": None,
        "probe": {"peak_rabi_per_s": 1.0e11, "center_fs": 0.0, "fwhm_fs": 300.0},
    },
    "grid": {"t_min_fs": -600.0, "t_max_fs": 900.0, "nt": 2048, "nz": 100},
    "numerics": {"frozen": True, "clamp_coherence": [-0.35, 0.0]},
}

# Alkali-style double-lambda demo.  Illustrative only: the numbers sketch a
# warm-vapor experiment and are not validated against any benchmark.
_RB_DEMO = {
    "label": "rb-demo",
    "metadata": {
        "validated": False,
        "note": "illustrative warm-vapor double-lambda demo, not validated",
    },
    "scheme": {
        "signature": [1, -1, 1, -1],
        "lambda_pump_um": 0.78,
        "lambda_probe_um": 9.55,
        "lambda_thz_um": 500.0,
        "dipole_pump_debye": 2.0,
        "dipole_stokes_debye": 2.0,
        "dipole_probe_debye": 0.5,
        "dipole_thz_debye": 1.0,
    },
    "detunings": {"pump_mhz": 1000.0, "stokes_mhz": 1000.0, "probe_mhz": 0.0},
    "relaxation": {"decay_pump_upper_mhz": 6.0, "decay_thz_upper_mhz": 1.0,
                   "gamma_phase_mhz": 1.0},
    "medium": {"density_per_cm3": 1.0e13, "length_cm": 5.0},
    "scenario": {
        "kind": "sequential",
        "pump": {"peak_rabi_per_s": 5.0e9, "center_fs": 0.0, "fwhm_fs": 1.0e6},
        "stokes": {"peak_rabi_per_s": 5.0e9, "center_fs": 0.0, "fwhm_fs": 1.0e6},
        "probe": {"peak_rabi_per_s": 1.0e8, "center_fs": 2.5e6, "fwhm_fs": 5.0e5},
    },
    "grid": {"t_min_fs": -2.0e6, "t_max_fs": 4.0e6, "nt": 4096, "nz": 100},
    "numerics": {"clamp_coherence": [-0.35, 0.0]},
}


_PRESETS: dict[str, dict] = {
    "ch3f-seq": _CH3F_SEQ,
    "ch3f-stirap": _CH3F_STIRAP,
    "methanol-eff": _METHANOL_EFF,
    "mr-check-double": _mr_check([1, -1, 1, -1], "mr-check-double"),
    "mr-check-ladder": _mr_check([1, -1, -1, -1], "mr-check-ladder"),
    "fwm-oracle": _FWM_ORACLE,
    "rb-demo": _RB_DEMO,
}

PRESET_SUMMARIES = {
    "ch3f-seq": "ladder loop, write-then-convert, femtosecond pumps",
    "ch3f-stirap": "ladder loop, counterintuitive pulse order, gated terahertz",
    "methanol-eff": "frozen-coherence efficiency benchmark, 10 cm cell",
    "mr-check-double": "lossless adiabatic photon-bookkeeping run (double-lambda)",
    "mr-check-ladder": "lossless adiabatic photon-bookkeeping run (ladder)",
    "fwm-oracle": "perturbative frozen-coherence run for oracle comparisons",
    "rb-demo": "warm-vapor double-lambda illustration (not validated)",
}


def preset_names() -> list[str]:
    return sorted(_PRESETS)


def preset_raw(name: str) -> dict:
    """The preset's JSON document (a fresh copy safe to modify)."""
    if name not in _PRESETS:
        known = ", ".join(preset_names())
        raise KeyError(f"unknown preset {name!r}; available: {known}")
    return copy.deepcopy(_PRESETS[name])


def get_preset(name: str) -> RunConfig:
    return parse_config(preset_raw(name))
