"""Physical constants and unit conversions (SI internally, helpers for common lab units)."""

from __future__ import annotations

import math

# CODATA-2018 exact / defined values
C_LIGHT = 299_792_458.0            # m / s
HBAR = 1.054_571_817e-34           # J s
EPS0 = 8.854_187_8128e-12          # F / m

# 1 debye in C m.  Defined as 1e-18 statC cm = 1e-21 / c  C m.
DEBYE = 1e-21 / C_LIGHT

TWO_PI = 2.0 * math.pi


def wavelength_to_angular_frequency(lambda_m: float) -> float:
    """Vacuum wavelength in meters -> angular frequency in rad/s."""
    if lambda_m <= 0.0:
        raise ValueError(f"wavelength must be positive, got {lambda_m}")
    return TWO_PI * C_LIGHT / lambda_m


def angular_frequency_to_wavelength(omega: float) -> float:
    if omega <= 0.0:
        raise ValueError(f"angular frequency must be positive, got {omega}")
    return TWO_PI * C_LIGHT / omega


def thz_to_angular(f_thz: float) -> float:
    """Linear frequency in THz -> rad/s."""
    return TWO_PI * f_thz * 1e12


def mhz_to_angular(f_mhz: float) -> float:
    """Linear frequency in MHz -> rad/s."""
    return TWO_PI * f_mhz * 1e6


def debye_to_si(d: float) -> float:
    """Dipole moment in debye -> C m."""
    return d * DEBYE


def per_cm3_to_per_m3(n: float) -> float:
    return n * 1e6


def fs_to_s(t: float) -> float:
    return t * 1e-15


def ps_to_s(t: float) -> float:
    return t * 1e-12


def um_to_m(x: float) -> float:
    return x * 1e-6


def cm_to_m(x: float) -> float:
    return x * 1e-2


def field_amplitude_from_intensity(intensity_w_m2: float) -> float:
    """Peak electric field (V/m) of the rotating-wave half-amplitude convention.

    The envelope E used throughout satisfies I = (1/2) eps0 c |E|^2.
    """
    if intensity_w_m2 < 0.0:
        raise ValueError("intensity must be nonnegative")
    return math.sqrt(2.0 * intensity_w_m2 / (EPS0 * C_LIGHT))


def intensity_from_field_amplitude(e_field_v_m: float) -> float:
    return 0.5 * EPS0 * C_LIGHT * e_field_v_m * e_field_v_m


def rabi_from_field(e_field_v_m: float, dipole_cm: float) -> float:
    """Rabi angular frequency (rad/s) for coupling -hbar*Omega, Omega = dip E / hbar."""
    return dipole_cm * e_field_v_m / HBAR


def field_from_rabi(omega_rabi: float, dipole_cm: float) -> float:
    if dipole_cm == 0.0:
        raise ValueError("dipole moment must be nonzero")
    return HBAR * omega_rabi / dipole_cm
