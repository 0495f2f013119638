from __future__ import annotations

import pytest

from thzmix import parse_config, preset_raw
from thzmix.levels import LevelScheme
from thzmix.runner import run_simulation
from thzmix.units import debye_to_si, um_to_m, wavelength_to_angular_frequency


def make_scheme(signature=(1, -1, 1, -1)) -> LevelScheme:
    d1 = debye_to_si(1.0)
    return LevelScheme(
        signature=signature,
        omega_pump=wavelength_to_angular_frequency(um_to_m(0.8)),
        omega_stokes=wavelength_to_angular_frequency(um_to_m(9.55)),
        omega_probe=wavelength_to_angular_frequency(um_to_m(500.0)),
        dipoles=(d1, d1, d1, d1),
    )


def small_oracle_raw() -> dict:
    """Fast frozen-coherence run: same physics as fwm-oracle, coarse grid."""
    raw = preset_raw("fwm-oracle")
    raw["grid"] = {"t_min_fs": -600.0, "t_max_fs": 900.0, "nt": 256, "nz": 50}
    return raw


def pumped_small_raw() -> dict:
    """Fast physical run with real population dynamics on the pump arm."""
    raw = small_oracle_raw()
    raw["numerics"] = {"beam_area_m2": 1.0e-6}
    raw["scenario"]["pump"] = {
        "peak_rabi_per_s": 5.0e12, "center_fs": 0.0, "fwhm_fs": 300.0}
    raw["scenario"]["stokes"] = {
        "peak_rabi_per_s": 5.0e12, "center_fs": 0.0, "fwhm_fs": 300.0}
    return raw


@pytest.fixture()
def small_raw() -> dict:
    return small_oracle_raw()


@pytest.fixture(scope="session")
def small_run():
    return run_simulation(parse_config(small_oracle_raw()))


@pytest.fixture(scope="session")
def pumped_run():
    return run_simulation(parse_config(pumped_small_raw()))
