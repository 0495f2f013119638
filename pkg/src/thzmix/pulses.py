"""Pulse envelopes and boundary scenarios for the cell entrance."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

# |envelope|^2 FWHM convention: exp(-4 ln2 (t/T)^2) has intensity FWHM T.
FOUR_LN2 = 4.0 * np.log(2.0)

SCENARIO_KINDS = ("sequential", "stirap")


@dataclass(frozen=True)
class PulseSpec:
    """One Gaussian drive pulse.

    peak_rabi is the complex peak Rabi envelope (rad/s; its phase is the
    carrier phase offset), center_s the arrival time, fwhm_s the intensity
    full width at half maximum.  A zero peak marks the field as off.
    """

    peak_rabi: complex
    center_s: float
    fwhm_s: float
    shape: str = "gaussian"

    def __post_init__(self) -> None:
        if self.shape != "gaussian":
            raise ValueError(f"unsupported pulse shape {self.shape!r}; only 'gaussian'")
        if self.fwhm_s <= 0.0:
            raise ValueError(f"fwhm_s must be positive, got {self.fwhm_s}")
        if not np.isfinite(self.peak_rabi) or not np.isfinite(self.center_s) \
                or not np.isfinite(self.fwhm_s):
            raise ValueError("pulse parameters must be finite")

    @property
    def is_off(self) -> bool:
        return self.peak_rabi == 0.0

    def envelope(self, t: np.ndarray | float) -> np.ndarray | complex:
        return gaussian_envelope(self, t)

    def energy_integral(self) -> float:
        """integral |Omega(t)|^2 dt in rad^2/s, closed form."""
        return abs(self.peak_rabi) ** 2 * self.fwhm_s * np.sqrt(np.pi / FOUR_LN2)


def gaussian_envelope(spec: PulseSpec, t: np.ndarray | float) -> np.ndarray | complex:
    """Gaussian Rabi envelope at time t.

    Clamps the far tails (|t - center| > 10 fwhm) to exactly zero so pulse
    windows truncate cleanly below 1e-30 of the peak.
    """
    x = (np.asarray(t, dtype=np.float64) - spec.center_s) / spec.fwhm_s
    amp = np.where(np.abs(x) > 10.0, 0.0, np.exp(-0.5 * FOUR_LN2 * np.square(x)))
    out = spec.peak_rabi * amp
    if np.isscalar(t):
        return complex(out)
    return out


OFF = PulseSpec(peak_rabi=0.0, center_s=0.0, fwhm_s=1.0)


@dataclass(frozen=True)
class ScenarioSpec:
    """Boundary drive scenario at the cell entrance.

    kind 'sequential': the probe pulse center must not precede either pump
    center (write first, convert afterwards).  kind 'stirap': the storage-edge
    drive must lead the pump-edge drive (counterintuitive order).  The
    terahertz input is identically zero in both kinds; it is generated, never
    injected.
    """

    kind: str
    pump: PulseSpec
    stokes: PulseSpec
    probe: PulseSpec
    thz: PulseSpec = OFF
    label: str = ""
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in SCENARIO_KINDS:
            raise ValueError(
                f"unknown scenario kind {self.kind!r}; supported: {SCENARIO_KINDS}"
            )
        if not self.thz.is_off:
            raise ValueError("terahertz boundary drive must be identically zero")
        if self.kind == "sequential":
            gate = max(
                ([self.pump.center_s] if not self.pump.is_off else [])
                + ([self.stokes.center_s] if not self.stokes.is_off else []),
                default=None,
            )
            if gate is not None and not self.probe.is_off \
                    and self.probe.center_s < gate:
                raise ValueError(
                    f"sequential scenario needs the probe centered at or after "
                    f"the pumps: probe at {self.probe.center_s:.3e} s, "
                    f"pumps end at {gate:.3e} s"
                )
        else:
            if self.pump.is_off or self.stokes.is_off:
                raise ValueError("stirap scenario needs both pump and stokes on")
            if not self.stokes.center_s < self.pump.center_s:
                raise ValueError(
                    f"stirap scenario needs the stokes pulse to lead the pump: "
                    f"stokes at {self.stokes.center_s:.3e} s is not before "
                    f"pump at {self.pump.center_s:.3e} s"
                )

    @property
    def pulses(self) -> tuple[PulseSpec, PulseSpec, PulseSpec, PulseSpec]:
        return (self.pump, self.stokes, self.probe, self.thz)

    def max_drive(self) -> float:
        return max(abs(p.peak_rabi) for p in self.pulses)

    def shortest_fwhm(self) -> float:
        """Narrowest FWHM among the pulses that are actually on."""
        widths = [p.fwhm_s for p in self.pulses if not p.is_off]
        if not widths:
            raise ValueError("scenario has no active pulse")
        return min(widths)

    def boundary_fields(self, t: np.ndarray) -> np.ndarray:
        return boundary_fields(self, t)


def boundary_fields(scenario: ScenarioSpec, t: np.ndarray) -> np.ndarray:
    """Stack the four boundary Rabi envelopes on a time grid, shape (Nt, 4)."""
    t = np.asarray(t, dtype=np.float64)
    out = np.zeros(t.shape + (4,), dtype=np.complex128)
    for k, p in enumerate(scenario.pulses):
        if not p.is_off:
            out[..., k] = gaussian_envelope(p, t)
    return out


def overlap_window(
    a: PulseSpec,
    b: PulseSpec,
    *,
    level: float = 0.5,
) -> tuple[float, float]:
    """Interval where both |envelopes| exceed level * their peaks.

    Used to bound the region where a dark state is meaningfully defined.
    """
    half = np.sqrt(2.0 * np.log(1.0 / level) / FOUR_LN2)
    lo = max(a.center_s - half * a.fwhm_s, b.center_s - half * b.fwhm_s)
    hi = min(a.center_s + half * a.fwhm_s, b.center_s + half * b.fwhm_s)
    if lo >= hi:
        raise ValueError("pulses do not overlap at the requested level")
    return lo, hi
