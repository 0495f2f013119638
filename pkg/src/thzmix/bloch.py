"""Density-matrix dynamics of the four-level loop in the rotating frame.

Conventions: the drive enters the Hamiltonian as -hbar * Omega (no factor 1/2);
Omega = dipole * E / hbar with E the rotating-wave half-amplitude.  A resonant
two-level system therefore flops as rho_upper(t) = sin^2(|Omega| t).

Rotating frame: ground level at zero, pump upper at nu1, storage at nu1 - nu2,
terahertz upper at nu1 - nu2 + s3 nu3, which removes every carrier
oscillation; detunings are field minus atom throughout.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .levels import Detunings, LevelScheme, RelaxationModel

# Coupling layout: field k drives projector |UPPER_INDEX[k]><LOWER_INDEX[k]|.
UPPER_INDEX = (0, 0, 3, 3)
LOWER_INDEX = (1, 2, 2, 1)


class StabilityError(RuntimeError):
    """Raised when the requested step cannot resolve the fastest rate."""


def rotating_frame_diagonal(scheme: LevelScheme, det: Detunings) -> np.ndarray:
    """Diagonal of H / hbar in the rotating frame, rad/s.

    (-pump detuning, 0, -two-photon detuning, -thz-upper detuning).
    """
    return np.array([
        -det.pump,
        0.0,
        -det.raman,
        -det.thz_upper(scheme.s3),
    ])


def apply_conjugation(drives: np.ndarray, scheme: LevelScheme) -> np.ndarray:
    """Conjugate the drive on edges whose energetic ordering is inverted.

    The stored envelopes always rotate at positive carriers; on an inverted
    edge (the probe edge of the ladder scheme) the fixed projector layout
    requires the conjugate envelope.
    """
    flags = scheme.conjugation_flags()
    q = np.array(drives, dtype=np.complex128, copy=True)
    q[..., flags < 0] = np.conj(q[..., flags < 0])
    return q


def build_rwa_hamiltonian(
    scheme: LevelScheme,
    det: Detunings,
    drives: Sequence[complex],
) -> np.ndarray:
    """Rotating-wave Hamiltonian as H / hbar in rad/s, 4x4 complex Hermitian.

    drives are the four Rabi envelopes (complex phases allowed); the signature
    conjugation is applied here.  Non-finite drives are rejected.
    """
    q = np.asarray(drives, dtype=np.complex128)
    if q.shape != (4,):
        raise ValueError(f"need exactly four Rabi envelopes, got shape {q.shape}")
    if not np.all(np.isfinite(q)):
        raise ValueError(f"non-finite Rabi envelope in {q}")
    q = apply_conjugation(q, scheme)
    h = np.zeros((4, 4), dtype=np.complex128)
    h[np.diag_indices(4)] = rotating_frame_diagonal(scheme, det)
    for k in range(4):
        i, j = UPPER_INDEX[k], LOWER_INDEX[k]
        h[i, j] += -q[k]
        h[j, i] += -np.conj(q[k])
    return h


def liouville_rhs(
    rho: np.ndarray,
    h_over_hbar: np.ndarray,
    relax: RelaxationModel,
) -> np.ndarray:
    """d rho / dt: coherent commutator, decay anticommutator, pure dephasing,
    repopulation of the two lower levels (trace-conserving)."""
    comm = h_over_hbar @ rho - rho @ h_over_hbar
    out = -1j * comm

    gpop = relax.population_decay()
    half = 0.5 * (gpop[:, None] + gpop[None, :])
    out -= (half + relax.dephasing_matrix()) * rho

    fa = relax.decay_pump_upper * rho[0, 0]
    fd = relax.decay_thz_upper * rho[3, 3]
    out[1, 1] += relax.branch_pump_to_ground * fa + relax.branch_thz_to_ground * fd
    out[2, 2] += (1.0 - relax.branch_pump_to_ground) * fa \
        + (1.0 - relax.branch_thz_to_ground) * fd
    return out


DriveSource = Callable[[float], Sequence[complex]] | Sequence[complex]


def _drives_at(fields: DriveSource, t: float) -> np.ndarray:
    if callable(fields):
        return np.asarray(fields(t), dtype=np.complex128)
    return np.asarray(fields, dtype=np.complex128)


def step_density_matrix(
    rho: np.ndarray,
    fields: DriveSource,
    relax: RelaxationModel,
    dt: float,
    *,
    scheme: LevelScheme,
    det: Detunings,
    t: float = 0.0,
) -> np.ndarray:
    """One classical RK4 step of the density matrix; re-Hermitized result.

    fields is either a constant 4-sequence of Rabi envelopes or a callable
    t -> envelopes evaluated at the substep times.  The step refuses to run
    when dt cannot resolve the fastest rate present.
    """
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    q0 = _drives_at(fields, t)
    qm = _drives_at(fields, t + 0.5 * dt)
    q1 = _drives_at(fields, t + dt)
    drive_max = float(max(np.max(np.abs(q0)), np.max(np.abs(qm)), np.max(np.abs(q1))))
    check_time_step(dt, drive_max, scheme, det, relax)

    h0 = build_rwa_hamiltonian(scheme, det, q0)
    hm = build_rwa_hamiltonian(scheme, det, qm)
    h1 = build_rwa_hamiltonian(scheme, det, q1)

    k1 = liouville_rhs(rho, h0, relax)
    k2 = liouville_rhs(rho + 0.5 * dt * k1, hm, relax)
    k3 = liouville_rhs(rho + 0.5 * dt * k2, hm, relax)
    k4 = liouville_rhs(rho + dt * k3, h1, relax)
    out = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return 0.5 * (out + out.conj().T)


def dark_state_coherence(omega_pump, omega_stokes):
    """Ground-storage coherence of the instantaneous dark state.

    -O1 conj(O2) / (|O1|^2 + |O2|^2); magnitude peaks at 1/2 for equal drives.
    Accepts scalars or broadcastable arrays; raises wherever both drives
    vanish (dark state undefined).
    """
    w = np.abs(omega_pump) ** 2 + np.abs(omega_stokes) ** 2
    if np.any(w == 0.0):
        raise ValueError("dark state undefined: both drives are zero")
    return -omega_pump * np.conj(omega_stokes) / w


def validate_density_matrix(
    rho: np.ndarray,
    *,
    herm_tol: float = 1e-10,
    trace_tol: float = 1e-8,
    positivity_tol: float = 1e-8,
) -> dict[str, float]:
    """Physical-state hygiene: Hermiticity, unit trace, eigenvalue positivity.

    Returns the measured deviations; raises ValueError on the first violated
    tolerance.
    """
    herm_dev = float(np.max(np.abs(rho - rho.conj().T)))
    trace_dev = float(abs(np.trace(rho).real - 1.0) + abs(np.trace(rho).imag))
    eigs = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    min_eig = float(eigs[0])
    dev = {"hermiticity": herm_dev, "trace": trace_dev, "min_eigenvalue": min_eig}
    if herm_dev > herm_tol:
        raise ValueError(f"density matrix not Hermitian: deviation {herm_dev:.3e}")
    if trace_dev > trace_tol:
        raise ValueError(f"density matrix trace drifted by {trace_dev:.3e}")
    if min_eig < -positivity_tol:
        raise ValueError(f"density matrix has negative population {min_eig:.3e}")
    return dev


def fastest_rate(
    drives_max: float,
    scheme: LevelScheme,
    det: Detunings,
    relax: RelaxationModel,
) -> float:
    """Largest angular rate the integrator must resolve, rad/s."""
    rates = [
        drives_max,
        abs(det.pump),
        abs(det.raman),
        abs(det.thz_upper(scheme.s3)),
        relax.decay_pump_upper,
        relax.decay_thz_upper,
        relax.gamma_phase,
    ]
    return max(rates)


def check_time_step(
    dt: float,
    drives_max: float,
    scheme: LevelScheme,
    det: Detunings,
    relax: RelaxationModel,
    *,
    limit: float = 0.5,
) -> None:
    """Guard dt * fastest_rate < limit; raises StabilityError naming the fix."""
    rate = fastest_rate(drives_max, scheme, det, relax)
    if rate > 0.0 and dt * rate >= limit:
        raise StabilityError(
            f"time step {dt:.3e} s cannot resolve the fastest rate "
            f"{rate:.3e} rad/s (product {dt * rate:.2f} >= {limit}); "
            f"need dt < {limit / rate:.3e} s or a finer time grid"
        )
