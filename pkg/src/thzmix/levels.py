"""Level structure, detunings and relaxation for the four-level loop.

Level roles, in storage order: pump upper (0), ground (1), storage (2),
terahertz upper (3).  Four fields couple the edges
(0,1) pump, (0,2) stokes, (3,2) probe, (3,1) terahertz.

The loop signature s = (s1, s2, s3, s4) fixes the energetic orientation of
each edge; the two supported topologies are (+1,-1,+1,-1), where the probe
upper level sits above the storage level, and (+1,-1,-1,-1), where it sits
below.  Carrier closure sum_alpha s_alpha nu_alpha = 0 holds by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SUPPORTED_SIGNATURES = ((1, -1, 1, -1), (1, -1, -1, -1))

PUMP_UPPER, GROUND, STORAGE, THZ_UPPER = 0, 1, 2, 3

LEVEL_NAMES = ("pump_upper", "ground", "storage", "thz_upper")
FIELD_NAMES = ("pump", "stokes", "probe", "thz")


@dataclass(frozen=True)
class LevelScheme:
    """Atomic frequencies (rad/s), dipoles (C m) and loop signature.

    omega_pump, omega_stokes, omega_probe are the magnitudes of the three
    driven transition frequencies; the terahertz transition follows from
    level closure and must come out positive.
    """

    signature: tuple[int, int, int, int]
    omega_pump: float
    omega_stokes: float
    omega_probe: float
    dipoles: tuple[float, float, float, float]

    def __post_init__(self) -> None:
        if tuple(self.signature) not in SUPPORTED_SIGNATURES:
            raise ValueError(
                f"unsupported loop signature {self.signature}; "
                f"supported: {SUPPORTED_SIGNATURES}"
            )
        for name, w in (("omega_pump", self.omega_pump),
                        ("omega_stokes", self.omega_stokes),
                        ("omega_probe", self.omega_probe)):
            if w <= 0.0:
                raise ValueError(f"{name} must be positive, got {w}")
        if len(self.dipoles) != 4:
            raise ValueError("need four dipole moments")
        for d in self.dipoles:
            if d <= 0.0:
                raise ValueError(f"dipole moments must be positive, got {d}")
        if self.omega_thz <= 0.0:
            raise ValueError(
                "level closure puts the terahertz transition at "
                f"{self.omega_thz:.3e} rad/s; it must be positive"
            )

    @property
    def s3(self) -> int:
        return self.signature[2]

    @property
    def omega_thz(self) -> float:
        """Frequency of the terahertz edge fixed by closure of the loop."""
        e = self.level_energies()
        return e[THZ_UPPER] - e[GROUND]

    def level_energies(self) -> np.ndarray:
        """Level energies over hbar (rad/s), ground at zero."""
        e_storage = self.omega_pump - self.omega_stokes
        return np.array([
            self.omega_pump,
            0.0,
            e_storage,
            e_storage + self.s3 * self.omega_probe,
        ])

    def conjugation_flags(self) -> np.ndarray:
        """+1 where the stored envelope enters the coupling directly, -1
        where its conjugate does (edges running against the fixed projector
        orientation)."""
        s = self.signature
        return np.array([s[0], -s[1], s[2], -s[3]])


@dataclass(frozen=True)
class Detunings:
    """Field-minus-atom detunings of the three injected carriers, rad/s."""

    pump: float = 0.0
    stokes: float = 0.0
    probe: float = 0.0

    def __post_init__(self) -> None:
        for name in ("pump", "stokes", "probe"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"detuning {name} must be finite")

    @property
    def raman(self) -> float:
        """Two-photon detuning of the storage coherence."""
        return self.pump - self.stokes

    def thz_upper(self, s3: int) -> float:
        """Rotating-frame offset of the terahertz upper level."""
        return self.raman + s3 * self.probe


def carrier_frequencies(scheme: LevelScheme, det: Detunings) -> np.ndarray:
    """Injected carriers nu_1..3 plus the generated nu_4 from loop closure.

    All four must come out positive; the terahertz carrier inherits every
    injected detuning through sum_alpha s_alpha nu_alpha = 0.
    """
    s = scheme.signature
    nu = np.array([
        scheme.omega_pump + det.pump,
        scheme.omega_stokes + det.stokes,
        scheme.omega_probe + det.probe,
        0.0,
    ])
    nu[3] = -(s[0] * nu[0] + s[1] * nu[1] + s[2] * nu[2]) / s[3]
    if np.any(nu <= 0.0):
        raise ValueError(f"carrier closure produced a non-positive frequency: {nu}")
    return nu


@dataclass(frozen=True)
class RelaxationModel:
    """Population decay, branching and coherence decay, all rad/s.

    The two upper levels decay into the two lower ones with the given
    branching fractions (trace conserving).  gamma_phase is a pressure-type
    pure dephasing applied to every coherence; gamma_overrides pins the total
    decay rate of specific level pairs instead, and each override must be at
    least the lifetime contribution (Gamma_i + Gamma_j) / 2.
    """

    decay_pump_upper: float = 0.0
    decay_thz_upper: float = 0.0
    gamma_phase: float = 0.0
    branch_pump_to_ground: float = 0.5
    branch_thz_to_ground: float = 0.5
    gamma_overrides: tuple[tuple[int, int, float], ...] = ()

    def __post_init__(self) -> None:
        for name in ("decay_pump_upper", "decay_thz_upper", "gamma_phase"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be non-negative")
        for name in ("branch_pump_to_ground", "branch_thz_to_ground"):
            b = getattr(self, name)
            if not 0.0 <= b <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {b}")
        gpop = self.population_decay()
        for i, j, g in self.gamma_overrides:
            if not (0 <= i < 4 and 0 <= j < 4 and i != j):
                raise ValueError(f"override pair ({i}, {j}) is not a coherence")
            floor = 0.5 * (gpop[i] + gpop[j])
            if g < floor:
                raise ValueError(
                    f"override gamma[{i},{j}] = {g:.3e} is below the lifetime "
                    f"floor (Gamma_{i} + Gamma_{j}) / 2 = {floor:.3e}"
                )

    def population_decay(self) -> np.ndarray:
        """Total decay rate Gamma_i of each level."""
        return np.array([self.decay_pump_upper, 0.0, 0.0, self.decay_thz_upper])

    def dephasing_matrix(self) -> np.ndarray:
        """Pure-dephasing part added on top of (Gamma_i + Gamma_j) / 2.

        Uniform gamma_phase off the diagonal; overridden pairs carry exactly
        their pinned total rate instead.
        """
        deph = np.full((4, 4), self.gamma_phase)
        np.fill_diagonal(deph, 0.0)
        gpop = self.population_decay()
        for i, j, g in self.gamma_overrides:
            excess = g - 0.5 * (gpop[i] + gpop[j])
            deph[i, j] = excess
            deph[j, i] = excess
        return deph

    def coherence_decay_rate(self, i: int, j: int) -> float:
        """Total decay rate of the (i, j) coherence, rad/s."""
        if i == j:
            raise ValueError("diagonal entries are populations, not coherences")
        gpop = self.population_decay()
        return 0.5 * (gpop[i] + gpop[j]) + float(self.dephasing_matrix()[i, j])
