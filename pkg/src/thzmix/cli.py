"""Command-line front door: simulate, efficiency, sweep, check-mr, presets.

Exit codes: 0 success, 1 physics-validation failure, 2 usage or config error.
Every flag that carries a unit says so in its name.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .analytics import (
    efficiency_formula,
    manley_rowe_energy_bound,
    manley_rowe_from_arrays,
)
from .artifacts import read_fields_csv, read_manifest
from .bloch import StabilityError
from .config import ConfigError, load_config, load_sweep, expand_sweep
from .presets import PRESET_SUMMARIES, get_preset, preset_names
from .propagation import NumericsError
from .runner import (
    MR_STRICT_THRESHOLD,
    default_out_dir,
    is_lossless,
    run_simulation,
    write_result,
)
from .units import cm_to_m, debye_to_si, per_cm3_to_per_m3, ps_to_s, um_to_m

OK, PHYSICS_FAIL, USAGE_ERROR = 0, 1, 2


@dataclass(frozen=True)
class CommandOutcome:
    """What a command produced: exit code, printable summary, written paths."""

    exit_code: int
    summary: str
    artifact_paths: tuple[str, ...] = field(default=())


def _report_lines(result) -> list[str]:
    rep = result.report
    fwhm = "n/a" if rep.thz_fwhm_s is None else f"{rep.thz_fwhm_s:.6g} s"
    return [
        f"label: {rep.label}  mode: {rep.mode}",
        f"efficiency (thz out / probe in): {rep.efficiency:.6g}",
        f"peak |rho_bc|: {rep.peak_coherence:.6g}",
        f"thz fwhm: {fwhm}",
        f"mr residual: end {rep.mr_residual:+.3e}  max {rep.mr_residual_max:.3e}",
        f"delta_k * L: {rep.delta_k_l:.6g} rad",
        f"state checks: trace {rep.trace_dev_max:.2e}  herm {rep.herm_dev_max:.2e}"
        f"  min eig {rep.min_eigenvalue:+.2e}",
    ]


def cmd_simulate(args: argparse.Namespace) -> CommandOutcome:
    try:
        if args.preset:
            config = get_preset(args.preset)
        else:
            config = load_config(args.config)
    except KeyError:
        known = "\n  ".join(preset_names())
        return CommandOutcome(
            USAGE_ERROR,
            f"unknown preset {args.preset!r}; available presets:\n  {known}")
    except (ConfigError, OSError) as exc:
        return CommandOutcome(USAGE_ERROR, f"config error: {exc}")

    frozen_override = True if args.frozen_coherence else None
    try:
        result = run_simulation(config, frozen_override=frozen_override)
    except (StabilityError, NumericsError, ValueError) as exc:
        return CommandOutcome(PHYSICS_FAIL, f"run failed: {exc}")

    out = Path(args.out) if args.out else default_out_dir(config.label or "run")
    manifest = write_result(result, out)
    lines = _report_lines(result)
    lines.append(f"artifacts: {out}")

    if args.strict_mr:
        if result.march.frozen:
            lines.append(
                "strict-mr: coherence was held externally; photon "
                "bookkeeping is not meaningful")
            return CommandOutcome(PHYSICS_FAIL, "\n".join(lines),
                                  (str(manifest),))
        if not is_lossless(config):
            lines.append(
                "strict-mr: model is lossy; photon bookkeeping not conserved")
            return CommandOutcome(PHYSICS_FAIL, "\n".join(lines),
                                  (str(manifest),))
        if result.mr.residual >= MR_STRICT_THRESHOLD:
            lines.append(
                f"strict-mr: residual {result.mr.residual:.3e} exceeds "
                f"{MR_STRICT_THRESHOLD:g}")
            return CommandOutcome(PHYSICS_FAIL, "\n".join(lines),
                                  (str(manifest),))
        lines.append(
            f"strict-mr: residual {result.mr.residual:.3e} within "
            f"{MR_STRICT_THRESHOLD:g}")
    return CommandOutcome(OK, "\n".join(lines), (str(manifest),))


def cmd_efficiency(args: argparse.Namespace) -> CommandOutcome:
    try:
        eps = efficiency_formula(
            debye_to_si(args.dipole_probe_debye),
            debye_to_si(args.dipole_thz_debye),
            per_cm3_to_per_m3(args.density_per_cm3),
            args.rho_bc,
            ps_to_s(args.tau_ps),
            cm_to_m(args.length_cm),
            um_to_m(args.lambda_thz_um),
            delta_k_l=args.delta_k_l,
            xi=args.xi,
            half_argument=not args.printed_sinc,
        )
        bound = manley_rowe_energy_bound(
            args.input_energy_uj * 1e-6,
            um_to_m(args.lambda_input_um),
            um_to_m(args.lambda_thz_um),
        )
    except ValueError as exc:
        return CommandOutcome(USAGE_ERROR, f"invalid input: {exc}")
    note = "  (order unity)" if eps >= 0.1 else ""
    lines = [
        f"conversion efficiency: {eps:.6g}{note}",
        f"photon-number energy bound for {args.input_energy_uj:g} uJ at "
        f"{args.lambda_input_um:g} um -> {args.lambda_thz_um:g} um: "
        f"{bound * 1e6:.6g} uJ",
    ]
    return CommandOutcome(OK, "\n".join(lines))


def _sweep_point_payload(point, out_root: Path) -> tuple:
    return (point.index, point.config.raw, str(out_root / f"point_{point.index:03d}"))


def _run_sweep_point(payload: tuple) -> tuple:
    """Worker: run one sweep point and persist its artifacts.

    Returns (index, status, report row or error message).  Must stay a
    module-level function so process pools can pickle it.
    """
    index, raw, out_dir = payload
    from .config import parse_config

    try:
        config = parse_config(raw)
        result = run_simulation(config)
        write_result(result, out_dir)
        return (index, "ok", result.report.row())
    except Exception as exc:  # noqa: BLE001 - worker must not crash the pool
        return (index, "failed", f"{type(exc).__name__}: {exc}")


def cmd_sweep(args: argparse.Namespace) -> CommandOutcome:
    from .artifacts import _fmt

    try:
        spec = load_sweep(args.sweep)
        points = expand_sweep(spec)
    except (ConfigError, OSError) as exc:
        return CommandOutcome(USAGE_ERROR, f"sweep error: {exc}")
    if args.parallel < 1:
        return CommandOutcome(USAGE_ERROR, "--parallel must be at least 1")

    out_root = Path(args.out) if args.out else default_out_dir(spec.label)
    out_root.mkdir(parents=True, exist_ok=True)
    payloads = [_sweep_point_payload(p, out_root) for p in points]

    if args.parallel > 1:
        with ProcessPoolExecutor(max_workers=args.parallel) as pool:
            results = list(pool.map(_run_sweep_point, payloads))
    else:
        results = [_run_sweep_point(p) for p in payloads]
    results.sort(key=lambda r: r[0])

    axis_paths = [ax.path for ax in spec.axes]
    report_cols = _report_column_names()
    header = ["index", *axis_paths, *report_cols, "status", "error"]
    lines = [",".join(header)]
    n_failed = 0
    for (index, status, body), point in zip(results, points):
        coords = [_fmt(point.coords[p]) for p in axis_paths]
        if status == "ok":
            cells = [_fmt(index), *coords, *(_fmt(v) for v in body), "ok", ""]
        else:
            n_failed += 1
            cells = [_fmt(index), *coords, *[""] * len(report_cols),
                     "failed", str(body).replace(",", ";")]
        lines.append(",".join(cells))
    (out_root / "sweep.csv").write_text("\n".join(lines) + "\n")

    summary = (
        f"swept {len(points)} points ({n_failed} failed); "
        f"aggregate: {out_root / 'sweep.csv'}"
    )
    code = PHYSICS_FAIL if n_failed else OK
    return CommandOutcome(code, summary, (str(out_root / "sweep.csv"),))


def _report_column_names() -> list[str]:
    from .analytics import RunReport
    probe = RunReport(
        label="", mode="", input_energy_j=(0, 0, 0, 0),
        output_energy_j=(0, 0, 0, 0), thz_fwhm_s=None, peak_coherence=0.0,
        efficiency=0.0, mr_residual=0.0, mr_residual_max=0.0, delta_k_l=0.0,
        trace_dev_max=0.0, herm_dev_max=0.0, min_eigenvalue=0.0,
        beam_area_m2=1.0,
    )
    return probe.columns()


def cmd_check_mr(args: argparse.Namespace) -> CommandOutcome:
    try:
        manifest = read_manifest(args.run)
        z, tau, fields = read_fields_csv(args.run)
        signature = tuple(int(s) for s in manifest["signature"].split())
        dipoles = tuple(
            float(manifest[f"dipole_{n}_cm"])
            for n in ("pump", "stokes", "probe", "thz"))
        nus = np.array([
            float(manifest[f"nu_{n}_per_s"])
            for n in ("pump", "stokes", "probe", "thz")])
        lossless = manifest.get("lossless", "false") == "true"
        frozen = manifest.get("frozen", "false") == "true"
    except (OSError, ValueError, KeyError) as exc:
        return CommandOutcome(USAGE_ERROR, f"cannot read run artifacts: {exc}")

    try:
        mr = manley_rowe_from_arrays(fields, tau, dipoles, nus, signature)
    except ValueError as exc:
        return CommandOutcome(USAGE_ERROR, f"cannot audit run: {exc}")

    lines = [f"photon bookkeeping for {args.run} "
             f"({'lossless' if lossless else 'lossy'} model)"]
    lines.append("z_m,drift_total,drift_raman_pair,drift_conversion_pair")
    nz1 = z.size
    stride = max(1, (nz1 - 1) // 10) if nz1 > 1 else 1
    shown = sorted(set(range(0, nz1, stride)) | {nz1 - 1})
    for iz in shown:
        lines.append(
            f"{z[iz]:.6g},{mr.drift_total[iz]:+.6e},"
            f"{mr.drift_raman[iz]:+.6e},{mr.drift_conversion[iz]:+.6e}")
    lines.append(f"max |drift|: {mr.residual:.6e}  threshold {args.threshold:g}")

    if frozen:
        lines.append("coherence was held externally; conservation not expected")
        return CommandOutcome(PHYSICS_FAIL, "\n".join(lines))
    if not lossless:
        lines.append("model dissipates photons; conservation not expected")
        return CommandOutcome(PHYSICS_FAIL, "\n".join(lines))
    if mr.residual >= args.threshold:
        lines.append("FAIL: residual exceeds threshold")
        return CommandOutcome(PHYSICS_FAIL, "\n".join(lines))
    lines.append("OK: photon bookkeeping conserved")
    return CommandOutcome(OK, "\n".join(lines))


def cmd_presets(args: argparse.Namespace) -> CommandOutcome:
    lines = [f"{n:18s} {PRESET_SUMMARIES.get(n, '')}" for n in preset_names()]
    return CommandOutcome(OK, "\n".join(lines))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="thzmix",
        description="Coherence-driven terahertz four-wave mixing simulator.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sim = sub.add_parser(
        "simulate", help="run one configured cell march and write artifacts")
    src = sim.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", help="path to a run configuration (JSON)")
    src.add_argument("--preset", help="bundled preset name (see 'presets')")
    sim.add_argument("--out", help="artifact directory "
                     "(default $THZMIX_OUT_DIR/<label> or runs/<label>)")
    sim.add_argument("--frozen-coherence", action="store_true",
                     help="clamp the prepared coherence (oracle-comparison mode)")
    sim.add_argument("--strict-mr", action="store_true",
                     help="fail (exit 1) unless lossless photon bookkeeping "
                          "holds to 1e-6")
    sim.set_defaults(func=cmd_simulate)

    eff = sub.add_parser(
        "efficiency", help="closed-form conversion efficiency and energy bound")
    eff.add_argument("--dipole-probe-debye", type=float, default=1.0)
    eff.add_argument("--dipole-thz-debye", type=float, default=1.0)
    eff.add_argument("--density-per-cm3", type=float, default=5.0e16)
    eff.add_argument("--rho-bc", type=float, default=0.5,
                     help="prepared coherence magnitude, at most 0.5")
    eff.add_argument("--tau-ps", type=float, default=1.0,
                     help="probe duration in picoseconds")
    eff.add_argument("--length-cm", type=float, default=10.0)
    eff.add_argument("--lambda-thz-um", type=float, default=100.0)
    eff.add_argument("--delta-k-l", type=float, default=0.0,
                     help="collective phase mismatch times length, radians")
    eff.add_argument("--xi", type=float, default=1.0,
                     help="waveguide fill factor")
    eff.add_argument("--printed-sinc", action="store_true",
                     help="use sinc(dkL) instead of the exact sinc(dkL/2)")
    eff.add_argument("--input-energy-uj", type=float, default=90.0,
                     help="input pulse energy for the photon-number bound")
    eff.add_argument("--lambda-input-um", type=float, default=9.55)
    eff.set_defaults(func=cmd_efficiency)

    swp = sub.add_parser("sweep", help="run a 1D/2D parameter sweep")
    swp.add_argument("--sweep", required=True, help="path to a sweep spec (JSON)")
    swp.add_argument("--out", help="output root (default like simulate)")
    swp.add_argument("--parallel", type=int, default=1, metavar="K",
                     help="worker processes (default 1; aggregate order is "
                          "deterministic either way)")
    swp.set_defaults(func=cmd_sweep)

    chk = sub.add_parser(
        "check-mr", help="re-audit photon bookkeeping from run artifacts")
    chk.add_argument("--run", required=True, help="run artifact directory")
    chk.add_argument("--threshold", type=float, default=MR_STRICT_THRESHOLD,
                     help="residual threshold for lossless runs")
    chk.set_defaults(func=cmd_check_mr)

    lst = sub.add_parser("presets", help="list bundled presets")
    lst.set_defaults(func=cmd_presets)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    outcome: CommandOutcome = args.func(args)
    print(outcome.summary)
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
