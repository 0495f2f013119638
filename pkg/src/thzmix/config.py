"""Run configuration: JSON schema with unit-suffixed keys, sweeps, hashing.

Every key carries its unit in the suffix (_um, _fs, _mhz as ordinary MHz,
_per_cm3, _cm, _per_s as rad/s) and is converted to SI once, at load time.
Validation collects every violation before raising so a bad file reads as one
actionable report.
"""

from __future__ import annotations

import copy
import hashlib
import itertools
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .levels import Detunings, LevelScheme, RelaxationModel
from .pulses import OFF, PulseSpec, ScenarioSpec
from .medium import MediumSpec
from .units import (
    cm_to_m,
    debye_to_si,
    fs_to_s,
    mhz_to_angular,
    per_cm3_to_per_m3,
    um_to_m,
    wavelength_to_angular_frequency as wavelength_to_angular,
)


class ConfigError(ValueError):
    """Carries every collected violation of one config document."""

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        joined = "\n  - ".join(self.problems)
        super().__init__(f"{len(self.problems)} config problem(s):\n  - {joined}")


@dataclass(frozen=True)
class NumericsSpec:
    """Solver switches that are not physics: frozen-coherence clamps, which
    fields may evolve, and the beam area used to turn fluence into energy."""

    frozen: bool = False
    clamp_coherence: complex = 0.0
    clamp_pop_ground: float = 0.5
    clamp_pop_storage: float = 0.5
    update_mask: tuple[bool, bool, bool, bool] | None = None
    beam_area_m2: float = 1.0

    def __post_init__(self) -> None:
        if abs(self.clamp_coherence) > 0.5:
            raise ValueError(
                f"|clamp_coherence| cannot exceed 1/2, got {abs(self.clamp_coherence)}"
            )
        for name in ("clamp_pop_ground", "clamp_pop_storage"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        if self.beam_area_m2 <= 0.0:
            raise ValueError(f"beam_area_m2 must be positive, got {self.beam_area_m2}")


@dataclass(frozen=True)
class GridSpec:
    """Uniform retarded-time window and z-step count."""

    t_min_s: float
    t_max_s: float
    nt: int
    nz: int

    def __post_init__(self) -> None:
        if not self.t_max_s > self.t_min_s:
            raise ValueError("grid needs t_max > t_min")
        if self.nt < 2:
            raise ValueError(f"grid needs nt >= 2, got {self.nt}")
        if self.nz < 1:
            raise ValueError(f"grid needs nz >= 1, got {self.nz}")


@dataclass(frozen=True)
class RunConfig:
    """Fully parsed, SI-unit run description."""

    label: str
    scheme: LevelScheme
    detunings: Detunings
    relaxation: RelaxationModel
    medium: MediumSpec
    scenario: ScenarioSpec
    grid: GridSpec
    numerics: NumericsSpec
    metadata: dict = field(default_factory=dict)
    raw: dict = field(default_factory=dict)


_TOP_KEYS = {
    "label", "metadata", "scheme", "detunings", "relaxation",
    "medium", "scenario", "grid", "numerics",
}

_SCHEME_KEYS = {
    "signature", "lambda_pump_um", "lambda_stokes_um", "lambda_probe_um",
    "lambda_thz_um", "dipole_pump_debye", "dipole_stokes_debye",
    "dipole_probe_debye", "dipole_thz_debye",
}
_DET_KEYS = {"pump_mhz", "stokes_mhz", "probe_mhz"}
_RELAX_KEYS = {
    "decay_pump_upper_mhz", "decay_thz_upper_mhz", "gamma_phase_mhz",
    "branch_pump_to_ground", "branch_thz_to_ground", "gamma_overrides_mhz",
}
_MEDIUM_KEYS = {
    "density_per_cm3", "length_cm", "refractive_index", "kappa_per_cm", "mode",
}
_SCENARIO_KEYS = {"kind", "pump", "stokes", "probe"}
_PULSE_KEYS = {"peak_rabi_per_s", "center_fs", "fwhm_fs", "phase_rad"}
_GRID_KEYS = {"t_min_fs", "t_max_fs", "nt", "nz"}
_NUMERICS_KEYS = {
    "frozen", "clamp_coherence", "clamp_pop_ground", "clamp_pop_storage",
    "update_mask", "beam_area_m2",
}

_PULSE_DEFAULTS = {"peak_rabi_per_s": 0.0, "center_fs": 0.0,
                   "fwhm_fs": 100.0, "phase_rad": 0.0}
_NUMERICS_DEFAULTS = {
    "frozen": False, "clamp_coherence": [0.0, 0.0],
    "clamp_pop_ground": 0.5, "clamp_pop_storage": 0.5,
    "update_mask": None, "beam_area_m2": 1.0,
}
_RELAX_DEFAULTS = {
    "decay_pump_upper_mhz": 0.0, "decay_thz_upper_mhz": 0.0,
    "gamma_phase_mhz": 0.0, "branch_pump_to_ground": 0.5,
    "branch_thz_to_ground": 0.5, "gamma_overrides_mhz": [],
}
_MEDIUM_DEFAULTS = {
    "refractive_index": [1.0, 1.0, 1.0, 1.0],
    "kappa_per_cm": [0.0, 0.0, 0.0, 0.0],
    "mode": "uniform",
}
_DET_DEFAULTS = {"pump_mhz": 0.0, "stokes_mhz": 0.0, "probe_mhz": 0.0}


def _require_number(block: dict, key: str, problems: list[str], where: str,
                    default: float | None = None) -> float | None:
    if key not in block:
        if default is not None:
            return default
        problems.append(f"{where}: missing required key '{key}'")
        return None
    v = block[key]
    if not isinstance(v, (int, float)) or isinstance(v, bool):
        problems.append(f"{where}.{key}: expected a number, got {v!r}")
        return None
    return float(v)


def _check_keys(block: dict, allowed: set[str], where: str,
                problems: list[str]) -> None:
    for k in block:
        if k not in allowed:
            problems.append(
                f"{where}: unknown key '{k}' (allowed: {sorted(allowed)})"
            )


def _parse_pulse(block: Any, where: str, problems: list[str]) -> PulseSpec:
    if block is None:
        return OFF
    if not isinstance(block, dict):
        problems.append(f"{where}: expected an object, got {block!r}")
        return OFF
    _check_keys(block, _PULSE_KEYS, where, problems)
    filled = {**_PULSE_DEFAULTS, **block}
    peak = _require_number(filled, "peak_rabi_per_s", problems, where)
    center = _require_number(filled, "center_fs", problems, where)
    fwhm = _require_number(filled, "fwhm_fs", problems, where)
    phase = _require_number(filled, "phase_rad", problems, where)
    if None in (peak, center, fwhm, phase):
        return OFF
    try:
        return PulseSpec(
            peak_rabi=peak * complex(math.cos(phase), math.sin(phase)),
            center_s=fs_to_s(center),
            fwhm_s=fs_to_s(fwhm),
        )
    except ValueError as exc:
        problems.append(f"{where}: {exc}")
        return OFF


def parse_config(raw: dict) -> RunConfig:
    """Build a RunConfig from the JSON document, collecting all violations."""
    problems: list[str] = []
    if not isinstance(raw, dict):
        raise ConfigError([f"top level must be an object, got {type(raw).__name__}"])
    _check_keys(raw, _TOP_KEYS, "config", problems)

    label = raw.get("label", "")
    if not isinstance(label, str):
        problems.append(f"label: expected a string, got {label!r}")
        label = ""
    metadata = raw.get("metadata", {})
    if not isinstance(metadata, dict):
        problems.append(f"metadata: expected an object, got {metadata!r}")
        metadata = {}

    normalized: dict = {"label": label, "metadata": copy.deepcopy(metadata)}

    # ---- scheme -----------------------------------------------------------
    scheme = None
    sb = raw.get("scheme")
    if not isinstance(sb, dict):
        problems.append("scheme: missing or not an object")
    else:
        _check_keys(sb, _SCHEME_KEYS, "scheme", problems)
        sig = sb.get("signature")
        if (not isinstance(sig, (list, tuple)) or len(sig) != 4
                or any(s not in (-1, 1) for s in sig)):
            problems.append(
                f"scheme.signature: expected four entries of +-1, got {sig!r}"
            )
            sig = None
        lam_pump = _require_number(sb, "lambda_pump_um", problems, "scheme")
        lam_probe = _require_number(sb, "lambda_probe_um", problems, "scheme")
        lam_stokes = sb.get("lambda_stokes_um")
        lam_thz = sb.get("lambda_thz_um")
        if lam_stokes is None and lam_thz is None:
            problems.append(
                "scheme: give lambda_stokes_um or lambda_thz_um "
                "(the other follows from loop closure)"
            )
        dips = [
            _require_number(sb, f"dipole_{n}_debye", problems, "scheme")
            for n in ("pump", "stokes", "probe", "thz")
        ]
        bad_scalar = False
        for key, v in (("lambda_pump_um", lam_pump),
                       ("lambda_probe_um", lam_probe),
                       ("lambda_stokes_um", lam_stokes),
                       ("lambda_thz_um", lam_thz)):
            if v is not None and float(v) <= 0.0:
                problems.append(f"scheme.{key}: must be positive, got {v}")
                bad_scalar = True
        for n, d in zip(("pump", "stokes", "probe", "thz"), dips):
            if d is not None and float(d) <= 0.0:
                problems.append(
                    f"scheme.dipole_{n}_debye: must be positive, got {d}")
                bad_scalar = True
        if (not bad_scalar and sig is not None
                and lam_pump is not None and lam_probe is not None
                and None not in dips):
            try:
                w1 = wavelength_to_angular(um_to_m(lam_pump))
                w3 = wavelength_to_angular(um_to_m(lam_probe))
                if lam_stokes is not None:
                    w2 = wavelength_to_angular(um_to_m(float(lam_stokes)))
                else:
                    w4 = wavelength_to_angular(um_to_m(float(lam_thz)))
                    # closure: s1 w1 + s2 w2 + s3 w3 + s4 w4 = 0, s2 = -1
                    w2 = sig[0] * w1 + sig[2] * w3 + sig[3] * w4
                    if w2 <= 0.0:
                        raise ValueError(
                            "loop closure gives a non-positive second transition"
                        )
                scheme = LevelScheme(
                    signature=tuple(int(s) for s in sig),
                    omega_pump=w1,
                    omega_stokes=w2,
                    omega_probe=w3,
                    dipoles=tuple(debye_to_si(d) for d in dips),
                )
                if lam_stokes is not None and lam_thz is not None:
                    w4_given = wavelength_to_angular(um_to_m(float(lam_thz)))
                    mismatch = abs(scheme.omega_thz - w4_given)
                    if mismatch > 1e-6 * w4_given:
                        problems.append(
                            "scheme: the four wavelengths violate loop closure "
                            f"by {mismatch:.3e} rad/s; drop one of "
                            "lambda_stokes_um / lambda_thz_um or fix the values"
                        )
            except ValueError as exc:
                problems.append(f"scheme: {exc}")

    # ---- detunings --------------------------------------------------------
    det = None
    db = raw.get("detunings", {})
    if not isinstance(db, dict):
        problems.append(f"detunings: expected an object, got {db!r}")
        db = {}
    _check_keys(db, _DET_KEYS, "detunings", problems)
    dfill = {**_DET_DEFAULTS, **db}
    dvals = {k: _require_number(dfill, k, problems, "detunings")
             for k in _DET_KEYS}
    if all(v is not None for v in dvals.values()):
        try:
            det = Detunings(
                pump=mhz_to_angular(dvals["pump_mhz"]),
                stokes=mhz_to_angular(dvals["stokes_mhz"]),
                probe=mhz_to_angular(dvals["probe_mhz"]),
            )
        except ValueError as exc:
            problems.append(f"detunings: {exc}")

    # ---- relaxation -------------------------------------------------------
    relax = None
    rb = raw.get("relaxation", {})
    if not isinstance(rb, dict):
        problems.append(f"relaxation: expected an object, got {rb!r}")
        rb = {}
    _check_keys(rb, _RELAX_KEYS, "relaxation", problems)
    rfill = {**_RELAX_DEFAULTS, **rb}
    overrides = rfill.get("gamma_overrides_mhz", [])
    parsed_overrides: list[tuple[int, int, float]] = []
    if not isinstance(overrides, list):
        problems.append("relaxation.gamma_overrides_mhz: expected a list")
    else:
        for entry in overrides:
            if (not isinstance(entry, (list, tuple)) or len(entry) != 3):
                problems.append(
                    "relaxation.gamma_overrides_mhz: each entry is "
                    f"[level_i, level_j, gamma_mhz], got {entry!r}"
                )
                continue
            parsed_overrides.append(
                (int(entry[0]), int(entry[1]), mhz_to_angular(float(entry[2])))
            )
    rvals = {
        k: _require_number(rfill, k, problems, "relaxation")
        for k in _RELAX_KEYS if k != "gamma_overrides_mhz"
    }
    if all(v is not None for v in rvals.values()):
        try:
            relax = RelaxationModel(
                decay_pump_upper=mhz_to_angular(rvals["decay_pump_upper_mhz"]),
                decay_thz_upper=mhz_to_angular(rvals["decay_thz_upper_mhz"]),
                gamma_phase=mhz_to_angular(rvals["gamma_phase_mhz"]),
                branch_pump_to_ground=rvals["branch_pump_to_ground"],
                branch_thz_to_ground=rvals["branch_thz_to_ground"],
                gamma_overrides=tuple(parsed_overrides),
            )
        except ValueError as exc:
            problems.append(f"relaxation: {exc}")

    # ---- medium -----------------------------------------------------------
    medium = None
    mb = raw.get("medium")
    if not isinstance(mb, dict):
        problems.append("medium: missing or not an object")
    else:
        _check_keys(mb, _MEDIUM_KEYS, "medium", problems)
        mfill = {**_MEDIUM_DEFAULTS, **mb}
        dens = _require_number(mfill, "density_per_cm3", problems, "medium")
        length = _require_number(mfill, "length_cm", problems, "medium")
        nidx = mfill.get("refractive_index")
        kap = mfill.get("kappa_per_cm")
        mode = mfill.get("mode", "uniform")
        ok = True
        for name, vec in (("refractive_index", nidx), ("kappa_per_cm", kap)):
            if (not isinstance(vec, (list, tuple)) or len(vec) != 4
                    or not all(isinstance(x, (int, float)) for x in vec)):
                problems.append(f"medium.{name}: expected four numbers, got {vec!r}")
                ok = False
        for key, v in (("density_per_cm3", dens), ("length_cm", length)):
            if v is not None and float(v) <= 0.0:
                problems.append(f"medium.{key}: must be positive, got {v}")
                ok = False
        if dens is not None and length is not None and ok:
            try:
                medium = MediumSpec(
                    number_density_m3=per_cm3_to_per_m3(dens),
                    length_m=cm_to_m(length),
                    refractive_index=tuple(float(x) for x in nidx),
                    kappa_per_m=tuple(float(x) * 100.0 for x in kap),
                    mode=str(mode),
                )
            except ValueError as exc:
                problems.append(f"medium: {exc}")

    # ---- scenario ---------------------------------------------------------
    scenario = None
    cb = raw.get("scenario")
    if not isinstance(cb, dict):
        problems.append("scenario: missing or not an object")
    else:
        _check_keys(cb, _SCENARIO_KEYS, "scenario", problems)
        kind = cb.get("kind")
        if kind not in ("sequential", "stirap"):
            problems.append(
                f"scenario.kind: expected 'sequential' or 'stirap', got {kind!r}"
            )
        pulses = {
            n: _parse_pulse(cb.get(n), f"scenario.{n}", problems)
            for n in ("pump", "stokes", "probe")
        }
        if kind in ("sequential", "stirap"):
            try:
                scenario = ScenarioSpec(
                    kind=kind,
                    pump=pulses["pump"],
                    stokes=pulses["stokes"],
                    probe=pulses["probe"],
                    label=label,
                )
            except ValueError as exc:
                problems.append(f"scenario: {exc}")

    # ---- grid -------------------------------------------------------------
    grid = None
    gb = raw.get("grid")
    if not isinstance(gb, dict):
        problems.append("grid: missing or not an object")
    else:
        _check_keys(gb, _GRID_KEYS, "grid", problems)
        t0 = _require_number(gb, "t_min_fs", problems, "grid")
        t1 = _require_number(gb, "t_max_fs", problems, "grid")
        nt = gb.get("nt")
        nz = gb.get("nz")
        counts_ok = True
        for name, v, floor in (("nt", nt, 2), ("nz", nz, 1)):
            if not isinstance(v, int) or isinstance(v, bool):
                problems.append(f"grid.{name}: expected an integer, got {v!r}")
                counts_ok = False
            elif v < floor:
                problems.append(f"grid.{name}: need at least {floor}, got {v}")
                counts_ok = False
        if t0 is not None and t1 is not None and counts_ok:
            try:
                grid = GridSpec(
                    t_min_s=fs_to_s(t0), t_max_s=fs_to_s(t1), nt=nt, nz=nz,
                )
            except ValueError as exc:
                problems.append(f"grid: {exc}")

    # ---- numerics ---------------------------------------------------------
    numerics = None
    nb = raw.get("numerics", {})
    if not isinstance(nb, dict):
        problems.append(f"numerics: expected an object, got {nb!r}")
        nb = {}
    _check_keys(nb, _NUMERICS_KEYS, "numerics", problems)
    nfill = {**_NUMERICS_DEFAULTS, **nb}
    clamp = nfill.get("clamp_coherence")
    if isinstance(clamp, (int, float)) and not isinstance(clamp, bool):
        clamp_c = complex(float(clamp), 0.0)
    elif (isinstance(clamp, (list, tuple)) and len(clamp) == 2
            and all(isinstance(x, (int, float)) for x in clamp)):
        clamp_c = complex(float(clamp[0]), float(clamp[1]))
    else:
        problems.append(
            f"numerics.clamp_coherence: expected a number or [re, im], got {clamp!r}"
        )
        clamp_c = 0.0
    mask_raw = nfill.get("update_mask")
    mask: tuple[bool, bool, bool, bool] | None
    if mask_raw is None:
        mask = None
    elif (isinstance(mask_raw, (list, tuple)) and len(mask_raw) == 4
            and all(isinstance(x, bool) for x in mask_raw)):
        mask = tuple(mask_raw)
    else:
        problems.append(
            f"numerics.update_mask: expected four booleans or null, got {mask_raw!r}"
        )
        mask = None
    frozen = nfill.get("frozen")
    if not isinstance(frozen, bool):
        problems.append(f"numerics.frozen: expected a boolean, got {frozen!r}")
        frozen = False
    pg = _require_number(nfill, "clamp_pop_ground", problems, "numerics")
    ps = _require_number(nfill, "clamp_pop_storage", problems, "numerics")
    area = _require_number(nfill, "beam_area_m2", problems, "numerics")
    if pg is not None and ps is not None and area is not None:
        try:
            numerics = NumericsSpec(
                frozen=frozen,
                clamp_coherence=clamp_c,
                clamp_pop_ground=pg,
                clamp_pop_storage=ps,
                update_mask=mask,
                beam_area_m2=area,
            )
        except ValueError as exc:
            problems.append(f"numerics: {exc}")

    if problems:
        raise ConfigError(problems)
    assert scheme and det and relax and medium and scenario and grid and numerics

    # materialize defaults so dump -> load is the identity
    normalized["scheme"] = {k: sb[k] for k in sorted(sb)}
    normalized["detunings"] = {k: dfill[k] for k in sorted(dfill)}
    normalized["relaxation"] = {k: rfill[k] for k in sorted(rfill)}
    normalized["medium"] = {k: mfill[k] for k in sorted(mfill)}
    normalized["scenario"] = {
        "kind": cb["kind"],
        **{
            n: ({**_PULSE_DEFAULTS, **cb[n]} if isinstance(cb.get(n), dict)
                else None)
            for n in ("pump", "stokes", "probe")
        },
    }
    normalized["grid"] = {k: gb[k] for k in sorted(gb)}
    normalized["numerics"] = {k: nfill[k] for k in sorted(nfill)}

    return RunConfig(
        label=label,
        scheme=scheme,
        detunings=det,
        relaxation=relax,
        medium=medium,
        scenario=scenario,
        grid=grid,
        numerics=numerics,
        metadata=copy.deepcopy(metadata),
        raw=normalized,
    )


def load_config(path: str | Path) -> RunConfig:
    """Parse a JSON config file; syntax errors carry line and column."""
    text = Path(path).read_text()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([
            f"{path}: JSON syntax error at line {exc.lineno}, "
            f"column {exc.colno}: {exc.msg}"
        ]) from exc
    return parse_config(raw)


def dump_config(config: RunConfig) -> dict:
    """The normalized JSON document; load(dump(c)) reproduces c exactly."""
    return copy.deepcopy(config.raw)


def save_config(config: RunConfig, path: str | Path) -> None:
    Path(path).write_text(json.dumps(dump_config(config), indent=2,
                                     sort_keys=True) + "\n")


def _canonical(value: Any) -> Any:
    if isinstance(value, float):
        return float(f"{value:.17g}")
    if isinstance(value, complex):
        return [float(f"{value.real:.17g}"), float(f"{value.imag:.17g}")]
    if isinstance(value, (list, tuple)):
        return [_canonical(v) for v in value]
    if isinstance(value, dict):
        return {k: _canonical(value[k]) for k in sorted(value)}
    return value


def config_hash(config: RunConfig) -> str:
    """Hash of the physics content in SI units; metadata and label excluded.

    Stable against re-expressing the same physics in the file (the parsed SI
    values are hashed, not the raw text) and insensitive to metadata edits.
    """
    s = config.scheme
    n = config.numerics
    physics = {
        "signature": list(s.signature),
        "omega_pump": s.omega_pump,
        "omega_stokes": s.omega_stokes,
        "omega_probe": s.omega_probe,
        "dipoles": list(s.dipoles),
        "detunings": [config.detunings.pump, config.detunings.stokes,
                      config.detunings.probe],
        "relaxation": [
            config.relaxation.decay_pump_upper,
            config.relaxation.decay_thz_upper,
            config.relaxation.gamma_phase,
            config.relaxation.branch_pump_to_ground,
            config.relaxation.branch_thz_to_ground,
            [list(o) for o in config.relaxation.gamma_overrides],
        ],
        "medium": [
            config.medium.number_density_m3,
            config.medium.length_m,
            list(config.medium.refractive_index),
            list(config.medium.kappa_per_m),
            config.medium.mode,
        ],
        "scenario": {
            "kind": config.scenario.kind,
            "pulses": [
                [p.peak_rabi, p.center_s, p.fwhm_s]
                for p in config.scenario.pulses
            ],
        },
        "grid": [config.grid.t_min_s, config.grid.t_max_s,
                 config.grid.nt, config.grid.nz],
        "numerics": [n.frozen, n.clamp_coherence, n.clamp_pop_ground,
                     n.clamp_pop_storage,
                     list(n.update_mask) if n.update_mask else None,
                     n.beam_area_m2],
    }
    blob = json.dumps(_canonical(physics), sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


# ---- sweeps ---------------------------------------------------------------

@dataclass(frozen=True)
class SweepAxis:
    path: str
    values: tuple[float, ...]


@dataclass(frozen=True)
class SweepSpec:
    """One or two config-key axes swept over a base run, row-major."""

    label: str
    base_raw: dict
    axes: tuple[SweepAxis, ...]


@dataclass(frozen=True)
class SweepPoint:
    index: int
    coords: dict
    config: RunConfig


def _walk(raw: dict, path: str) -> tuple[dict, str]:
    parts = path.split(".")
    node = raw
    for p in parts[:-1]:
        if not isinstance(node, dict) or p not in node:
            raise KeyError(path)
        node = node[p]
    if not isinstance(node, dict) or parts[-1] not in node:
        raise KeyError(path)
    return node, parts[-1]


def parse_sweep(raw: dict, *, base_dir: Path | None = None) -> SweepSpec:
    """Validate a sweep document against its base config."""
    problems: list[str] = []
    if not isinstance(raw, dict):
        raise ConfigError(["sweep: top level must be an object"])
    base = raw.get("base")
    base_raw: dict | None = None
    if isinstance(base, str):
        base_path = Path(base)
        if base_dir is not None and not base_path.is_absolute():
            base_path = base_dir / base_path
        if not base_path.exists():
            problems.append(f"sweep.base: file not found: {base_path}")
        else:
            base_raw = json.loads(base_path.read_text())
    elif isinstance(base, dict):
        base_raw = copy.deepcopy(base)
    else:
        problems.append("sweep.base: expected a config path or inline object")

    axes_raw = raw.get("axes")
    axes: list[SweepAxis] = []
    if not isinstance(axes_raw, list) or not 1 <= len(axes_raw) <= 2:
        problems.append(
            f"sweep.axes: expected one or two axes, got {axes_raw!r}"
        )
    else:
        for i, ax in enumerate(axes_raw):
            where = f"sweep.axes[{i}]"
            if not isinstance(ax, dict) or "path" not in ax or "values" not in ax:
                problems.append(f"{where}: expected {{path, values}}")
                continue
            vals = ax["values"]
            if (not isinstance(vals, list) or len(vals) < 2
                    or not all(isinstance(v, (int, float))
                               and not isinstance(v, bool) for v in vals)):
                problems.append(
                    f"{where}.values: need at least two numeric values, got {vals!r}"
                )
                continue
            path = str(ax["path"])
            if base_raw is not None:
                try:
                    _walk(base_raw, path)
                except KeyError:
                    problems.append(
                        f"{where}.path: '{path}' does not exist in the base config"
                    )
                    continue
            axes.append(SweepAxis(path=path, values=tuple(float(v) for v in vals)))

    if base_raw is not None and not problems:
        try:
            parse_config(base_raw)
        except ConfigError as exc:
            problems.extend(f"sweep.base: {p}" for p in exc.problems)

    if problems:
        raise ConfigError(problems)
    assert base_raw is not None
    return SweepSpec(
        label=str(raw.get("label", "sweep")),
        base_raw=base_raw,
        axes=tuple(axes),
    )


def load_sweep(path: str | Path) -> SweepSpec:
    p = Path(path)
    try:
        raw = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError([
            f"{path}: JSON syntax error at line {exc.lineno}, "
            f"column {exc.colno}: {exc.msg}"
        ]) from exc
    return parse_sweep(raw, base_dir=p.parent)


def expand_sweep(spec: SweepSpec) -> list[SweepPoint]:
    """All sweep points in row-major order (first axis outermost)."""
    grids = [ax.values for ax in spec.axes]
    points: list[SweepPoint] = []
    for idx, combo in enumerate(itertools.product(*grids)):
        raw = copy.deepcopy(spec.base_raw)
        coords = {}
        for ax, v in zip(spec.axes, combo):
            node, leaf = _walk(raw, ax.path)
            node[leaf] = v
            coords[ax.path] = v
        raw["label"] = f"{spec.label}-{idx:03d}"
        points.append(SweepPoint(index=idx, coords=coords,
                                 config=parse_config(raw)))
    return points
