"""Turn a validated RunConfig into a finished run: march, report, artifacts."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from .analytics import (
    ManleyRoweCheck,
    RunReport,
    build_run_report,
    manley_rowe_residual,
)
from .artifacts import write_run_artifacts
from .config import RunConfig, config_hash
from .propagation import FieldGrid, MarchResult, build_field_grid, march_cell

OUT_DIR_ENV = "THZMIX_OUT_DIR"

MR_STRICT_THRESHOLD = 1e-6


@dataclass(frozen=True)
class RunResult:
    """Everything one simulation produced, ready for reporting or disk."""

    config: RunConfig
    grid: FieldGrid
    march: MarchResult
    report: RunReport
    mr: ManleyRoweCheck


def is_lossless(config: RunConfig) -> bool:
    """True when nothing in the model dissipates photons or coherence."""
    relax = config.relaxation
    return (
        relax.decay_pump_upper == 0.0
        and relax.decay_thz_upper == 0.0
        and relax.gamma_phase == 0.0
        and not relax.gamma_overrides
        and all(k == 0.0 for k in config.medium.kappa_per_m)
    )


def run_simulation(
    config: RunConfig,
    *,
    frozen_override: bool | None = None,
) -> RunResult:
    """March the configured scenario through the cell and summarize it."""
    num = config.numerics
    frozen = num.frozen if frozen_override is None else frozen_override
    g = config.grid
    grid = build_field_grid(
        config.scheme, config.detunings, config.medium,
        t_min=g.t_min_s, t_max=g.t_max_s, nt=g.nt, nz=g.nz,
    )
    march = march_cell(
        config.scenario, grid, config.scheme, config.detunings,
        config.relaxation,
        update_mask=num.update_mask,
        frozen=frozen,
        clamp_bc=num.clamp_coherence,
        clamp_populations=(num.clamp_pop_ground, num.clamp_pop_storage),
    )
    mr = manley_rowe_residual(march.fields, grid, config.scheme)
    report = build_run_report(
        march, config.scheme, label=config.label,
        beam_area_m2=num.beam_area_m2, mr=mr,
    )
    return RunResult(config=config, grid=grid, march=march, report=report, mr=mr)


def default_out_dir(label: str) -> Path:
    root = os.environ.get(OUT_DIR_ENV, "runs")
    return Path(root) / label


def write_result(result: RunResult, out_dir: str | Path) -> Path:
    return write_run_artifacts(
        result.march, result.report, out_dir,
        config_hash=config_hash(result.config),
        lossless=is_lossless(result.config),
    )
