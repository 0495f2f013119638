"""Gas cell properties: coupling constants, phase matching, mode overlap."""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .levels import LevelScheme
from .units import C_LIGHT, EPS0, HBAR


def coupling_constant(nu: float, number_density_m3: float, dipole_cm: float) -> float:
    """Propagation coupling eta = nu N d^2 / (2 eps0 c hbar), in 1/(m s).

    Multiplying eta by a dimensionless coherence and integrating over z gives
    the accumulated Rabi amplitude of the driven field.
    """
    if nu <= 0.0 or number_density_m3 <= 0.0 or dipole_cm <= 0.0:
        raise ValueError("carrier, density and dipole must all be positive")
    return nu * number_density_m3 * dipole_cm**2 / (2.0 * EPS0 * C_LIGHT * HBAR)


_MODE_RE = re.compile(r"^TE(\d)(\d)$", re.IGNORECASE)


def fill_factor(mode: str = "uniform") -> float:
    """Transverse overlap factor between the mode profile and a uniform gas.

    'uniform' (no waveguide) gives 1; a rectangular-guide TEnm mode
    contributes the mean of its sinusoidal profile per transverse axis,
    2/pi for each nonzero index (TE10 -> 2/pi).  Unsupported mode labels
    raise with the list of supported ones.
    """
    if mode == "uniform":
        return 1.0
    m = _MODE_RE.match(mode)
    if m is None:
        raise ValueError(
            f"unsupported mode {mode!r}; supported: 'uniform' or rectangular "
            f"'TEnm' labels such as 'TE10', 'TE11', 'TE20'"
        )
    n, k = int(m.group(1)), int(m.group(2))
    if n == 0 and k == 0:
        raise ValueError("TE00 does not propagate in a rectangular guide")
    factor = 1.0
    for idx in (n, k):
        if idx > 0:
            factor *= 2.0 / np.pi
    return factor


@dataclass(frozen=True)
class MediumSpec:
    """Cell geometry and linear optics.

    refractive_index lists n for the four carriers (all >= 1; vacuum is 1);
    kappa_per_m the four amplitude loss rates.  mode_fill rescales every
    coupling constant by the transverse overlap.
    """

    number_density_m3: float
    length_m: float
    refractive_index: tuple[float, float, float, float] = (1.0, 1.0, 1.0, 1.0)
    kappa_per_m: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)
    mode: str = "uniform"

    def __post_init__(self) -> None:
        if self.number_density_m3 <= 0.0:
            raise ValueError(f"density must be positive, got {self.number_density_m3}")
        if self.length_m <= 0.0:
            raise ValueError(f"length must be positive, got {self.length_m}")
        if len(self.refractive_index) != 4 or len(self.kappa_per_m) != 4:
            raise ValueError("refractive_index and kappa_per_m need four entries")
        for n in self.refractive_index:
            if n < 1.0:
                raise ValueError(f"refractive index below vacuum: {n}")
        for k in self.kappa_per_m:
            if k < 0.0:
                raise ValueError(f"negative loss rate: {k}")
        fill_factor(self.mode)  # reject unsupported labels at construction

    @property
    def mode_fill(self) -> float:
        return fill_factor(self.mode)

    def couplings(self, scheme: LevelScheme, nus: np.ndarray) -> np.ndarray:
        """Per-field coupling constants eta_alpha, mode overlap included."""
        dip = scheme.dipoles
        return np.array([
            self.mode_fill
            * coupling_constant(nus[k], self.number_density_m3, dip[k])
            for k in range(4)
        ])

    def wavevectors(self, nus: np.ndarray) -> np.ndarray:
        """k_alpha = n_alpha nu_alpha / c for the four carriers, rad/m."""
        return np.asarray(self.refractive_index) * np.asarray(nus) / C_LIGHT

    def phase_mismatch(self, scheme: LevelScheme, nus: np.ndarray) -> float:
        """Signed collective mismatch sum_alpha s_alpha k_alpha, rad/m.

        Vanishes exactly when every index is 1 because the carriers close.
        """
        k = self.wavevectors(nus)
        return float(np.dot(scheme.signature, k))

    def detrend_phases(self, nus: np.ndarray, z: float) -> np.ndarray:
        """Carrier-frame phase theta_alpha(z) = (n_alpha - 1) nu_alpha z / c.

        Envelopes are stored with this dispersive phase removed; the
        collective mismatch re-enters through the source terms.
        """
        n = np.asarray(self.refractive_index)
        return (n - 1.0) * np.asarray(nus) * z / C_LIGHT
