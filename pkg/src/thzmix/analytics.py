"""Energy accounting, photon bookkeeping, closed-form oracles and reports.

Photon fluxes are per unit area; the Manley-Rowe checks use the pairwise
combinations conserved by the loop topology (pump pair and conversion pair),
each normalized by the largest input flux so the residuals are dimensionless.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .levels import FIELD_NAMES, LevelScheme
from .propagation import FieldGrid, MarchResult
from .units import C_LIGHT, EPS0, HBAR, field_from_rabi

# SI -> Gaussian-cgs for the closed-form efficiency: 1 C m = c*1e3 statC cm.
_DIPOLE_SI_TO_CGS = 1.0e3 * C_LIGHT
_HBAR_CGS = HBAR * 1.0e7


def _sinc(x: float | np.ndarray) -> float | np.ndarray:
    """sin(x)/x with the removable singularity filled (NOT numpy's sinc)."""
    out = np.sinc(np.asarray(x, dtype=np.float64) / np.pi)
    if out.ndim == 0:
        return float(out)
    return out


def field_fluence(
    envelope: np.ndarray,
    tau: np.ndarray,
    dipole_cm: float,
) -> float:
    """Pulse fluence in J/m^2 from a Rabi envelope history.

    I = eps0 c |E|^2 / 2 with E = hbar Omega / dipole, integrated over tau.
    """
    e_field = np.abs(field_from_rabi(np.asarray(envelope), dipole_cm))
    intensity = 0.5 * EPS0 * C_LIGHT * e_field**2
    return float(np.trapezoid(intensity, tau))


def photon_flux(
    envelope: np.ndarray,
    tau: np.ndarray,
    dipole_cm: float,
    nu: float,
) -> float:
    """Photons per m^2 carried by the pulse: fluence / (hbar nu)."""
    if nu <= 0.0:
        raise ValueError(f"carrier must be positive, got {nu}")
    return field_fluence(envelope, tau, dipole_cm) / (HBAR * nu)


def photon_flux_profile(
    fields: np.ndarray,
    tau: np.ndarray,
    dipoles: tuple[float, float, float, float],
    nus: np.ndarray,
) -> np.ndarray:
    """Photon flux of each field at each z slice, shape (nz+1, 4)."""
    nz1 = fields.shape[0]
    out = np.zeros((nz1, 4))
    for iz in range(nz1):
        for k in range(4):
            out[iz, k] = photon_flux(fields[iz, :, k], tau, dipoles[k], nus[k])
    return out


@dataclass(frozen=True)
class ManleyRoweCheck:
    """Photon bookkeeping along the cell.

    The conserved scalar is sum_alpha g_alpha n_alpha with g the frame
    rotation signs (s1, -s2, s3, -s4): a Raman event trades one pump photon
    for one stokes photon and a conversion event pairs the probe and
    terahertz photons with matching signs, so the combination is invariant in
    a lossless cell.  The two pairwise combinations n1 - s1 s2 n2 and
    n3 - s3 s4 n4 are conserved separately and kept as diagnostics.  All
    drifts are normalized by the largest input flux; end drifts keep their
    sign, the scalar residual is the worst magnitude anywhere along z.
    """

    flux: np.ndarray              # (nz+1, 4) photons / m^2
    combo_total: np.ndarray       # (nz+1,) conserved signed photon sum
    combo_raman: np.ndarray       # (nz+1,) pump-pair combination
    combo_conversion: np.ndarray  # (nz+1,) probe-pair combination
    drift_total: np.ndarray       # signed, normalized, (nz+1,)
    drift_raman: np.ndarray
    drift_conversion: np.ndarray

    @property
    def residual(self) -> float:
        return float(np.max(np.abs(self.drift_total)))

    @property
    def signed_residual(self) -> float:
        """End-of-cell drift of the conserved sum, sign preserved."""
        return float(self.drift_total[-1])


def manley_rowe_from_arrays(
    fields: np.ndarray,
    tau: np.ndarray,
    dipoles: tuple[float, float, float, float],
    nus: np.ndarray,
    signature: tuple[int, int, int, int],
) -> ManleyRoweCheck:
    """Photon bookkeeping from a raw (nz+1, nt, 4) envelope history.

    The array form exists so persisted runs can be re-audited from their
    files alone, without reconstructing scheme objects.
    """
    flux = photon_flux_profile(fields, tau, dipoles, nus)
    s = tuple(signature)
    g = (s[0], -s[1], s[2], -s[3])
    combo_t = flux @ np.asarray(g, dtype=np.float64)
    combo_r = flux[:, 0] - s[0] * s[1] * flux[:, 1]
    combo_c = flux[:, 2] - s[2] * s[3] * flux[:, 3]
    # normalize by the largest input flux; all-dark histories report 0
    ref = float(np.max(flux[0]))
    if ref <= 0.0:
        ref = 1.0
    return ManleyRoweCheck(
        flux=flux,
        combo_total=combo_t,
        combo_raman=combo_r,
        combo_conversion=combo_c,
        drift_total=(combo_t - combo_t[0]) / ref,
        drift_raman=(combo_r - combo_r[0]) / ref,
        drift_conversion=(combo_c - combo_c[0]) / ref,
    )


def manley_rowe_residual(
    fields: np.ndarray,
    grid: FieldGrid,
    scheme: LevelScheme,
) -> ManleyRoweCheck:
    """Check photon-number bookkeeping of a march's field history.

    fields must be the (nz+1, nt, 4) envelope history on exactly this grid;
    the scheme must be the one the grid was built for.
    """
    if tuple(scheme.signature) != tuple(grid.signature):
        raise ValueError(
            f"scheme signature {scheme.signature} does not match the grid's "
            f"{grid.signature}"
        )
    expected = (grid.nz + 1, grid.nt, 4)
    if fields.shape != expected:
        raise ValueError(
            f"field history shape {fields.shape} does not match grid {expected}"
        )
    return manley_rowe_from_arrays(
        fields, grid.tau, scheme.dipoles, grid.nus, grid.signature)


def manley_rowe_energy_bound(
    input_energy_j: float,
    lambda_input_m: float,
    lambda_thz_m: float,
) -> float:
    """Hard photon-conversion ceiling on extractable terahertz energy.

    Every generated terahertz photon consumes one input photon, so the bound
    is the input energy scaled by the photon-energy ratio
    lambda_input / lambda_thz.
    """
    if input_energy_j < 0.0:
        raise ValueError(f"input energy cannot be negative: {input_energy_j}")
    if lambda_input_m <= 0.0 or lambda_thz_m <= 0.0:
        raise ValueError("wavelengths must be positive")
    return input_energy_j * lambda_input_m / lambda_thz_m


def analytic_output_field(
    probe_envelope: np.ndarray | complex,
    coherence: np.ndarray | complex,
    eta_thz: float,
    length_m: float,
    delta_k_per_m: float,
    *,
    xi: float = 1.0,
    half_argument: bool = True,
) -> np.ndarray | complex:
    """Closed-form terahertz envelope after one cell in the steady mixing
    regime: xi eta4 rho conj(Omega3) L sinc(dkL/2) e^{i dkL/2}.

    half_argument=False evaluates the phase-matching magnitude as sinc(dkL)
    instead, for comparison against that alternative normalization.  The
    output vanishes for zero coherence and at dkL = 2 pi.
    """
    dkl = delta_k_per_m * length_m
    arg = 0.5 * dkl if half_argument else dkl
    match = _sinc(arg) * np.exp(0.5j * dkl)
    return xi * eta_thz * np.asarray(coherence) \
        * np.conj(np.asarray(probe_envelope)) * length_m * match


def transient_output_field(
    probe_drive: np.ndarray,
    coherence_cb: np.ndarray,
    tau: np.ndarray,
    *,
    coherence_decay: float,
    thz_detuning: float,
    eta_thz: float,
    length_m: float,
    delta_k_per_m: float,
    xi: float = 1.0,
) -> np.ndarray:
    """Terahertz envelope with the finite response of the emitting coherence.

    Integrates d sigma / dt = -(gamma - i Delta) sigma + i q3 rho_cb with an
    exact-decay trapezoid recursion, then applies the same accumulated
    phase-matching factor as the steady formula.  probe_drive is the drive on
    the probe edge in the rotating frame (the conjugated envelope when that
    edge is energetically inverted).
    """
    tau = np.asarray(tau, dtype=np.float64)
    dt = float(tau[1] - tau[0])
    rate = coherence_decay - 1j * thz_detuning
    decay = np.exp(-rate * dt)
    src = 1j * np.asarray(probe_drive) * np.asarray(coherence_cb)
    sigma = np.zeros(tau.size, dtype=np.complex128)
    for i in range(1, tau.size):
        sigma[i] = decay * sigma[i - 1] + 0.5 * dt * (decay * src[i - 1] + src[i])
    dkl = delta_k_per_m * length_m
    match = _sinc(0.5 * dkl) * np.exp(0.5j * dkl)
    return 1j * xi * eta_thz * length_m * match * sigma


def efficiency_formula(
    dipole_probe_cm: float,
    dipole_thz_cm: float,
    number_density_m3: float,
    rho_bc: float,
    tau_s: float,
    length_m: float,
    wavelength_thz_m: float,
    *,
    delta_k_l: float = 0.0,
    xi: float = 1.0,
    half_argument: bool = True,
) -> float:
    """Closed-form energy conversion efficiency of the mixing stage.

    Quadratic in every factor of the polarization: dipole product, density,
    prepared coherence, interaction time and length, divided by the terahertz
    wavelength, all squared, times the phase-matching sinc^2.  Evaluated in
    Gaussian-cgs units, where the combination is dimensionless.

    half_argument selects the exact cell integral sinc^2(dkL/2); False gives
    the sinc^2(dkL) variant seen in some write-ups.
    """
    if abs(rho_bc) > 0.5:
        raise ValueError(
            f"|rho_bc| = {abs(rho_bc)} exceeds the physical maximum 1/2"
        )
    if min(dipole_probe_cm, dipole_thz_cm, number_density_m3, tau_s,
           length_m, wavelength_thz_m) <= 0.0:
        raise ValueError("all physical magnitudes must be positive")
    d3 = dipole_probe_cm * _DIPOLE_SI_TO_CGS
    d4 = dipole_thz_cm * _DIPOLE_SI_TO_CGS
    n_cgs = number_density_m3 * 1.0e-6
    l_cgs = length_m * 1.0e2
    lam_cgs = wavelength_thz_m * 1.0e2
    core = (
        4.0 * np.pi**2 * d3 * d4 * n_cgs * abs(rho_bc) * tau_s * l_cgs
        / (_HBAR_CGS * lam_cgs)
    )
    arg = 0.5 * delta_k_l if half_argument else delta_k_l
    return float(xi**2 * core**2 * _sinc(arg) ** 2)


@dataclass(frozen=True)
class PulseMetrics:
    """Lab observables of one pulse: energy, duration, peak intensity."""

    energy_j: float
    fwhm_s: float | None
    peak_intensity_w_m2: float
    peak_rabi: float
    t_peak: float


def pulse_metrics(
    envelope: np.ndarray,
    tau: np.ndarray,
    dipole_cm: float,
    *,
    beam_area_m2: float = 1.0,
) -> PulseMetrics:
    """Energy (J), intensity FWHM (s) and peak intensity (W/m^2) of a pulse.

    The FWHM is measured on |envelope|^2 by linear interpolation of the
    half-maximum crossings around the global peak; it is absent (None) for a
    zero envelope, whose energy is exactly 0.
    """
    if beam_area_m2 <= 0.0:
        raise ValueError(f"beam area must be positive, got {beam_area_m2}")
    env = np.abs(np.asarray(envelope))
    tau = np.asarray(tau, dtype=np.float64)
    if env.shape != tau.shape:
        raise ValueError("envelope and tau must have matching shapes")
    peak = float(env.max())
    if peak == 0.0:
        return PulseMetrics(0.0, None, 0.0, 0.0, float(tau[0]))
    ipk = int(env.argmax())
    power = env**2
    half = 0.5 * power[ipk]

    def cross(step: int) -> float:
        i = ipk
        while 0 <= i + step < power.size and power[i + step] > half:
            i += step
        j = i + step
        if j < 0 or j >= power.size:
            return float(tau[i])
        f = (power[i] - half) / (power[i] - power[j])
        return float(tau[i] + f * (tau[j] - tau[i]))

    fwhm = cross(+1) - cross(-1)
    e_peak = abs(field_from_rabi(peak, dipole_cm))
    peak_intensity = 0.5 * EPS0 * C_LIGHT * e_peak**2
    energy = field_fluence(env, tau, dipole_cm) * beam_area_m2
    return PulseMetrics(
        energy_j=energy,
        fwhm_s=float(fwhm),
        peak_intensity_w_m2=float(peak_intensity),
        peak_rabi=peak,
        t_peak=float(tau[ipk]),
    )


@dataclass(frozen=True)
class RunReport:
    """One-row summary of a cell march."""

    label: str
    mode: str                       # 'physical' or 'oracle-comparison'
    input_energy_j: tuple[float, float, float, float]
    output_energy_j: tuple[float, float, float, float]
    thz_fwhm_s: float | None
    peak_coherence: float
    efficiency: float               # thz-out over probe-in energy ratio
    mr_residual: float              # signed end drift, worst of the two combos
    mr_residual_max: float          # worst magnitude anywhere along z
    delta_k_l: float
    trace_dev_max: float
    herm_dev_max: float
    min_eigenvalue: float
    beam_area_m2: float

    def columns(self) -> list[str]:
        cols = ["label", "mode"]
        cols += [f"input_energy_{n}_j" for n in FIELD_NAMES]
        cols += [f"output_energy_{n}_j" for n in FIELD_NAMES]
        cols += [
            "thz_fwhm_s", "peak_coherence", "efficiency",
            "mr_residual", "mr_residual_max", "delta_k_l",
            "trace_dev_max", "herm_dev_max", "min_eigenvalue",
            "beam_area_m2",
        ]
        return cols

    def row(self) -> list:
        vals: list = [self.label, self.mode]
        vals += list(self.input_energy_j)
        vals += list(self.output_energy_j)
        vals += [
            self.thz_fwhm_s if self.thz_fwhm_s is not None else "",
            self.peak_coherence, self.efficiency,
            self.mr_residual, self.mr_residual_max, self.delta_k_l,
            self.trace_dev_max, self.herm_dev_max, self.min_eigenvalue,
            self.beam_area_m2,
        ]
        return vals


def build_run_report(
    result: MarchResult,
    scheme: LevelScheme,
    *,
    label: str = "",
    beam_area_m2: float = 1.0,
    mr: ManleyRoweCheck | None = None,
) -> RunReport:
    """Summarize a march into the flat report row.

    Pass an already computed Manley-Rowe check to avoid recomputing it.
    """
    grid = result.grid
    metrics_in = [
        pulse_metrics(result.input_fields[:, k], grid.tau, scheme.dipoles[k],
                      beam_area_m2=beam_area_m2)
        for k in range(4)
    ]
    metrics_out = [
        pulse_metrics(result.output_fields[:, k], grid.tau, scheme.dipoles[k],
                      beam_area_m2=beam_area_m2)
        for k in range(4)
    ]
    probe_in = metrics_in[2].energy_j
    thz_out = metrics_out[3].energy_j
    efficiency = thz_out / probe_in if probe_in > 0.0 else 0.0

    if mr is None:
        mr = manley_rowe_residual(result.fields, grid, scheme)
    return RunReport(
        label=label,
        mode="oracle-comparison" if result.frozen else "physical",
        input_energy_j=tuple(m.energy_j for m in metrics_in),
        output_energy_j=tuple(m.energy_j for m in metrics_out),
        thz_fwhm_s=metrics_out[3].fwhm_s,
        peak_coherence=float(np.max(np.abs(result.coherence_storage))),
        efficiency=float(efficiency),
        mr_residual=mr.signed_residual,
        mr_residual_max=mr.residual,
        delta_k_l=grid.delta_k_l,
        trace_dev_max=result.trace_dev_max,
        herm_dev_max=result.herm_dev_max,
        min_eigenvalue=result.min_eigenvalue,
        beam_area_m2=beam_area_m2,
    )
