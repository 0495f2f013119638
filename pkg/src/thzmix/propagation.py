"""Field propagation through the cell in the retarded luminal frame.

Envelopes are stored with carrier and linear dispersive phase removed, so
free propagation is the identity and the collective phase mismatch re-enters
analytically through the source terms.  The z march is a Heun
predictor-corrector with the linear loss integrated exactly, which costs two
atomic-column evolutions per z step plus one final diagnostic evolution.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bloch import LOWER_INDEX, UPPER_INDEX, StabilityError, fastest_rate
from .levels import Detunings, LevelScheme, RelaxationModel, carrier_frequencies
from .medium import MediumSpec
from .pulses import ScenarioSpec

MIN_POINTS_PER_FWHM = 40
MIN_Z_STEPS = 50


class NumericsError(RuntimeError):
    """Raised when the march would produce numerically meaningless output."""


@dataclass(frozen=True)
class FieldGrid:
    """Discretization plus every per-field constant the march needs."""

    tau: np.ndarray
    z: np.ndarray
    nus: np.ndarray
    couplings: np.ndarray
    kappa: np.ndarray
    theta_rate: np.ndarray
    conj_flags: np.ndarray
    delta_k: float
    signature: tuple[int, int, int, int]
    dipoles: np.ndarray

    @property
    def nt(self) -> int:
        return self.tau.size

    @property
    def nz(self) -> int:
        return self.z.size - 1

    @property
    def dt(self) -> float:
        return float(self.tau[1] - self.tau[0])

    @property
    def dz(self) -> float:
        return float(self.z[1] - self.z[0])

    @property
    def length_m(self) -> float:
        return float(self.z[-1])

    @property
    def delta_k_l(self) -> float:
        return self.delta_k * self.length_m


def build_field_grid(
    scheme: LevelScheme,
    det: Detunings,
    medium: MediumSpec,
    *,
    t_min: float,
    t_max: float,
    nt: int,
    nz: int,
) -> FieldGrid:
    """Uniform (tau, z) grid with carriers, couplings and mismatch baked in."""
    if not t_max > t_min:
        raise ValueError("need t_max > t_min")
    if nt < 2 or nz < 1:
        raise ValueError("need nt >= 2 and nz >= 1")
    nus = carrier_frequencies(scheme, det)
    return FieldGrid(
        tau=np.linspace(t_min, t_max, nt),
        z=np.linspace(0.0, medium.length_m, nz + 1),
        nus=nus,
        couplings=medium.couplings(scheme, nus),
        kappa=np.asarray(medium.kappa_per_m, dtype=np.float64),
        theta_rate=medium.detrend_phases(nus, 1.0),
        conj_flags=scheme.conjugation_flags(),
        delta_k=medium.phase_mismatch(scheme, nus),
        signature=tuple(scheme.signature),
        dipoles=np.asarray(scheme.dipoles, dtype=np.float64),
    )


@dataclass(frozen=True)
class MarchResult:
    """Full field and matter histories of one cell march."""

    grid: FieldGrid
    fields: np.ndarray            # (nz+1, nt, 4) complex stored envelopes
    populations: np.ndarray       # (nz+1, nt, 4) real
    coherence_storage: np.ndarray  # (nz+1, nt) complex, ground-storage
    coherence_thz: np.ndarray     # (nz+1, nt) complex, thz_upper-ground
    trace_dev_max: float
    herm_dev_max: float
    min_eigenvalue: float
    frozen: bool = False
    extras: dict = field(default_factory=dict)

    @property
    def input_fields(self) -> np.ndarray:
        return self.fields[0]

    @property
    def output_fields(self) -> np.ndarray:
        return self.fields[-1]


def _boundary_array(
    boundary: ScenarioSpec | np.ndarray,
    grid: FieldGrid,
) -> np.ndarray:
    if isinstance(boundary, ScenarioSpec):
        ppf = boundary.shortest_fwhm() / grid.dt
        if ppf < MIN_POINTS_PER_FWHM:
            need = int(np.ceil(
                (grid.nt - 1) * MIN_POINTS_PER_FWHM / ppf
            )) + 1
            raise NumericsError(
                f"time grid under-resolves the shortest pulse: "
                f"{ppf:.1f} points per FWHM, need >= {MIN_POINTS_PER_FWHM} "
                f"(nt >= {need} on this window)"
            )
        arr = boundary.boundary_fields(grid.tau)
    else:
        arr = np.asarray(boundary, dtype=np.complex128)
        if arr.shape != (grid.nt, 4):
            raise ValueError(
                f"boundary array must have shape ({grid.nt}, 4), got {arr.shape}"
            )
    if np.any(arr[:, 3] != 0.0):
        raise ValueError(
            "terahertz input at the cell entrance must be identically zero; "
            "that field is generated inside the cell"
        )
    if not np.all(np.isfinite(arr.view(np.float64))):
        raise ValueError("boundary fields contain non-finite values")
    return arr


def _evolve_at(
    fields_slice: np.ndarray,
    z: float,
    grid: FieldGrid,
    rho0: np.ndarray,
    relax: RelaxationModel,
    diag: np.ndarray,
    *,
    frozen: bool,
    clamp_bc: complex,
    clamp_populations: tuple[float, float],
) -> tuple[np.ndarray, float, float]:
    """Evolve one atomic column at height z; returns (rho history, trace dev,
    herm dev)."""
    from ._kernel import evolve_slice  # deferred: keeps cold CLI start light

    phase = np.exp(1j * grid.theta_rate * z)
    drives = fields_slice * phase[None, :]
    neg = grid.conj_flags < 0
    drives[:, neg] = np.conj(drives[:, neg])
    return evolve_slice(
        rho0,
        drives,
        grid.dt,
        diag,
        relax.population_decay(),
        relax.dephasing_matrix(),
        relax.branch_pump_to_ground,
        relax.branch_thz_to_ground,
        frozen=frozen,
        clamp_bc=clamp_bc,
        clamp_pop_ground=clamp_populations[0],
        clamp_pop_storage=clamp_populations[1],
    )


def _source(
    rho_hist: np.ndarray,
    z: float,
    grid: FieldGrid,
) -> np.ndarray:
    """Per-field source i eta sigma e^{-i theta(z)}, shape (nt, 4)."""
    pol = np.stack(
        [rho_hist[:, UPPER_INDEX[k], LOWER_INDEX[k]] for k in range(4)],
        axis=1,
    )
    neg = grid.conj_flags < 0
    pol[:, neg] = np.conj(pol[:, neg])
    phase = np.exp(-1j * grid.theta_rate * z)
    return 1j * grid.couplings[None, :] * pol * phase[None, :]


def march_cell(
    boundary: ScenarioSpec | np.ndarray,
    grid: FieldGrid,
    scheme: LevelScheme,
    det: Detunings,
    relax: RelaxationModel,
    *,
    rho0: np.ndarray | None = None,
    update_mask: tuple[bool, bool, bool, bool] | None = None,
    frozen: bool = False,
    clamp_bc: complex = 0.0,
    clamp_populations: tuple[float, float] = (0.5, 0.5),
    positivity_stride: int = 1,
) -> MarchResult:
    """March the four fields from z = 0 to z = L through the resonant gas.

    boundary gives the entrance envelopes, either as a scenario or as a
    precomputed (nt, 4) array whose terahertz column must vanish.  frozen
    clamps the two lower populations and their coherence to the given values
    at every step, bypassing their relaxation, which turns the march into the
    analytically solvable mixing regime.  update_mask freezes selected field
    envelopes at their boundary values (undepleted approximations).

    Refuses under-resolved grids: at least 40 time points per shortest pulse
    FWHM and at least 50 z steps.
    """
    if tuple(grid.signature) != tuple(scheme.signature):
        raise ValueError(
            f"grid was built for signature {grid.signature}, "
            f"scheme has {scheme.signature}"
        )
    if grid.nz < MIN_Z_STEPS:
        raise NumericsError(
            f"z grid under-resolved: {grid.nz} steps, need >= {MIN_Z_STEPS}"
        )
    a = _boundary_array(boundary, grid).copy()
    if rho0 is None:
        rho0 = np.zeros((4, 4), dtype=np.complex128)
        rho0[1, 1] = 1.0
    if update_mask is None:
        update_mask = (False, False, False, True) if frozen \
            else (True, True, True, True)
    mask = np.asarray(update_mask, dtype=bool)
    if frozen and abs(clamp_bc) > 0.5:
        raise ValueError(f"|clamped coherence| cannot exceed 1/2, got {abs(clamp_bc)}")

    diag = np.array([
        -det.pump, 0.0, -det.raman, -det.thz_upper(scheme.s3),
    ])
    dz = grid.dz
    decay = np.exp(-grid.kappa * dz)

    nz, nt = grid.nz, grid.nt
    fields = np.zeros((nz + 1, nt, 4), dtype=np.complex128)
    populations = np.zeros((nz + 1, nt, 4), dtype=np.float64)
    coh_bc = np.zeros((nz + 1, nt), dtype=np.complex128)
    coh_db = np.zeros((nz + 1, nt), dtype=np.complex128)

    trace_dev_max = 0.0
    herm_dev_max = 0.0
    min_eig = np.inf

    for iz in range(nz + 1):
        zi = float(grid.z[iz])
        drive_max = float(np.max(np.abs(a))) if a.size else 0.0
        rate = fastest_rate(drive_max, scheme, det, relax)
        if rate > 0.0 and grid.dt * rate >= 0.5:
            raise StabilityError(
                f"time step {grid.dt:.3e} s cannot resolve the fastest rate "
                f"{rate:.3e} rad/s at z step {iz} "
                f"(product {grid.dt * rate:.2f} >= 0.5); refine the time grid"
            )

        hist, tdev, hdev = _evolve_at(
            a, zi, grid, rho0, relax, diag,
            frozen=frozen, clamp_bc=clamp_bc, clamp_populations=clamp_populations,
        )
        if not np.all(np.isfinite(hist.view(np.float64))):
            raise NumericsError(
                f"non-finite density matrix at z = {zi:.4e} m (step {iz}); "
                f"reduce the time step or the drive strength"
            )
        trace_dev_max = max(trace_dev_max, tdev)
        herm_dev_max = max(herm_dev_max, hdev)

        fields[iz] = a
        populations[iz] = np.real(np.einsum("tii->ti", hist))
        coh_bc[iz] = hist[:, 1, 2]
        coh_db[iz] = hist[:, 3, 1]

        if not frozen and (iz % positivity_stride == 0 or iz == nz):
            eigs = np.linalg.eigvalsh(hist)
            min_eig = min(min_eig, float(eigs.min()))

        if iz == nz:
            break

        s0 = _source(hist, zi, grid)
        z1 = float(grid.z[iz + 1])
        a_pred = decay[None, :] * (a + dz * s0)
        a_pred[:, ~mask] = a[:, ~mask]
        hist_pred, _, _ = _evolve_at(
            a_pred, z1, grid, rho0, relax, diag,
            frozen=frozen, clamp_bc=clamp_bc, clamp_populations=clamp_populations,
        )
        s1 = _source(hist_pred, z1, grid)

        a_next = decay[None, :] * a + 0.5 * dz * (decay[None, :] * s0 + s1)
        a_next[:, ~mask] = a[:, ~mask]
        if not np.all(np.isfinite(a_next.view(np.float64))):
            raise NumericsError(
                f"non-finite field envelope after z step {iz} "
                f"(z = {z1:.4e} m); reduce dz or the coupling strength"
            )
        a = a_next

    if frozen:
        min_eig = 0.0

    return MarchResult(
        grid=grid,
        fields=fields,
        populations=populations,
        coherence_storage=coh_bc,
        coherence_thz=coh_db,
        trace_dev_max=trace_dev_max,
        herm_dev_max=herm_dev_max,
        min_eigenvalue=float(min_eig),
        frozen=frozen,
    )
