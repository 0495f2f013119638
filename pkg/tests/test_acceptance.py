"""End-to-end acceptance gates for the terahertz mixing simulator.

Each test prints one PASS line on success; pytest -v adds its own verdict
per criterion. The heavy runs are shared through module fixtures so the
whole file stays within its runtime budgets.
"""
from __future__ import annotations

import copy
import subprocess
import sys
import time

import numpy as np
import pytest

from thzmix import (
    analytic_output_field,
    dark_state_coherence,
    manley_rowe_energy_bound,
    overlap_window,
    parse_config,
    preset_raw,
    pulse_metrics,
)
from thzmix.cli import main
from thzmix.levels import carrier_frequencies
from thzmix.runner import run_simulation
from thzmix.units import C_LIGHT, debye_to_si

HYGIENE: dict[str, object] = {}


def run_preset(name: str, mutate=None):
    raw = preset_raw(name)
    if mutate is not None:
        mutate(raw)
    res = run_simulation(parse_config(raw))
    HYGIENE[res.config.label + (f"#{id(mutate):x}" if mutate else "")] = res
    return res


@pytest.fixture(scope="module")
def mr_double():
    return run_preset("mr-check-double")


@pytest.fixture(scope="module")
def mr_ladder():
    return run_preset("mr-check-ladder")


@pytest.fixture(scope="module")
def stirap():
    return run_preset("ch3f-stirap")


@pytest.fixture(scope="module")
def oracle_scan():
    """Frozen, undepleted-probe marches at five phase mismatches."""
    targets = [0.0, np.pi / 2, np.pi, 2 * np.pi, 3 * np.pi]
    base = preset_raw("fwm-oracle")
    cfg0 = parse_config(base)
    nus = carrier_frequencies(cfg0.scheme, cfg0.detunings)
    runs = []
    t0 = time.perf_counter()
    for tgt in targets:
        raw = copy.deepcopy(base)
        if tgt > 0.0:
            n4 = 1.0 + tgt * C_LIGHT / (nus[3] * cfg0.medium.length_m)
            raw["medium"]["refractive_index"] = [1.0, 1.0, 1.0, float(n4)]
        res = run_simulation(parse_config(raw))
        HYGIENE[f"fwm-oracle dkl={tgt:.3f}"] = res
        runs.append(res)
    return targets, runs, time.perf_counter() - t0


@pytest.fixture(scope="module")
def scaling_runs():
    base = run_preset("fwm-oracle")

    def double_n(raw):
        raw["medium"]["density_per_cm3"] *= 2.0

    def double_l(raw):
        raw["medium"]["length_cm"] *= 2.0

    return base, run_preset("fwm-oracle", double_n), \
        run_preset("fwm-oracle", double_l)


def test_criterion_1_closed_form_efficiency_from_the_cli():
    t0 = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "thzmix.cli", "efficiency",
         "--tau-ps", "1.0", "--length-cm", "10", "--dipole-probe-debye", "1",
         "--dipole-thz-debye", "1", "--density-per-cm3", "5e16",
         "--lambda-thz-um", "100", "--rho-bc", "0.5", "--xi", "1",
         "--delta-k-l", "0"],
        capture_output=True, text=True)
    elapsed = time.perf_counter() - t0
    assert proc.returncode == 0, proc.stdout + proc.stderr
    value = None
    for tok in proc.stdout.split():
        try:
            value = float(tok)
            break
        except ValueError:
            continue
    assert value is not None, proc.stdout
    assert 0.8 <= value <= 1.0
    assert elapsed < 1.0
    print(f"PASS criterion 1: efficiency {value:.6f} in [0.8, 1.0], "
          f"{elapsed * 1e3:.0f} ms")


def test_criterion_2_photon_number_conservation(mr_double, mr_ladder):
    t0 = time.perf_counter()
    for res in (mr_double, mr_ladder):
        assert res.grid.nz == 100 and res.grid.nt == 4096
        assert abs(res.grid.delta_k_l) < 1e-6
        assert res.mr.residual < 1e-6, res.config.label
    elapsed = time.perf_counter() - t0
    assert elapsed < 120.0
    print(f"PASS criterion 2: residual double {mr_double.mr.residual:.3e}, "
          f"ladder {mr_ladder.mr.residual:.3e}, both < 1e-6")


def test_criterion_3_closed_form_oracle_equivalence(oracle_scan):
    targets, runs, elapsed = oracle_scan
    peaks_march, peaks_closed = [], []
    for res in runs:
        g = res.grid
        probe_in = res.march.input_fields[:, 2]
        rho = res.config.numerics.clamp_coherence
        closed = analytic_output_field(
            probe_in, np.conj(rho), g.couplings[3], g.length_m, g.delta_k)
        peaks_march.append(float(np.max(np.abs(res.march.output_fields[:, 3]))))
        peaks_closed.append(float(np.max(np.abs(closed))))
    shape_march = np.array(peaks_march) / peaks_march[0]
    shape_closed = np.array(peaks_closed) / peaks_closed[0]
    dev = np.abs(shape_march - shape_closed)
    assert np.all(dev < 0.05), dev
    null = shape_march[targets.index(2 * np.pi)]
    assert null < 1e-3
    assert elapsed < 300.0
    print(f"PASS criterion 3: max shape deviation {dev.max():.2e} < 5%, "
          f"2pi null {null:.2e} < 1e-3")


def test_criterion_4_adiabatic_passage_builds_half_coherence(stirap):
    rep = stirap.report
    sc = stirap.config.scenario
    area = abs(sc.pump.peak_rabi) * sc.pump.fwhm_s
    assert area >= 30.0
    assert rep.peak_coherence >= 0.4
    assert 0.1 <= rep.peak_coherence <= 0.5

    lo, hi = overlap_window(sc.pump, sc.stokes)
    g = stirap.grid
    sel = (g.tau >= lo) & (g.tau <= hi)
    env = sc.boundary_fields(g.tau)
    dark = dark_state_coherence(env[sel, 0], env[sel, 1])
    sim = stirap.march.coherence_storage[0, sel]
    tracking = float(np.max(np.abs(sim - dark) / np.abs(dark)))
    assert tracking < 0.05
    print(f"PASS criterion 4: peak |rho_bc| {rep.peak_coherence:.4f} >= 0.4, "
          f"area {area:.1f} >= 30, dark-state tracking {tracking:.2%} < 5%")


def test_criterion_5_generated_pulse_beats_the_probe(stirap):
    rep = stirap.report
    sc = stirap.config.scenario
    # probe width is pinned near three coherence windows
    coh = pulse_metrics(np.abs(stirap.march.coherence_storage[0]),
                        stirap.grid.tau, debye_to_si(1.0))
    ratio = sc.probe.fwhm_s / coh.fwhm_s
    assert 2.5 <= ratio <= 3.5
    assert rep.thz_fwhm_s is not None
    assert rep.thz_fwhm_s < sc.probe.fwhm_s
    print(f"PASS criterion 5: thz fwhm {rep.thz_fwhm_s * 1e15:.1f} fs < "
          f"probe {sc.probe.fwhm_s * 1e15:.1f} fs "
          f"(probe = {ratio:.2f} coherence windows)")


def test_criterion_6_quadratic_density_and_length_scalings(scaling_runs):
    base, dbl_n, dbl_l = scaling_runs
    e0 = base.report.output_energy_j[3]
    rn = dbl_n.report.output_energy_j[3] / e0
    rl = dbl_l.report.output_energy_j[3] / e0
    assert abs(rn - 4.0) <= 0.08, rn
    assert abs(rl - 4.0) <= 0.08, rl
    print(f"PASS criterion 6: energy ratios N x2 -> {rn:.4f}, "
          f"L x2 -> {rl:.4f}, both 4.0 +- 2%")


def test_criterion_7_photon_conversion_energy_bounds():
    b90 = manley_rowe_energy_bound(90e-6, 9.55e-6, 500e-6)
    b5m = manley_rowe_energy_bound(5e-3, 9.55e-6, 500e-6)
    assert b90 == pytest.approx(1.72e-6, rel=1e-2)
    assert b5m == pytest.approx(95.5e-6, rel=1e-3)
    # reported pulse energies stay below their photon ceilings
    assert 6e-9 < b90
    assert 10e-6 < b5m
    print(f"PASS criterion 7: bounds {b90 * 1e6:.3f} uJ and "
          f"{b5m * 1e6:.1f} uJ; 6 nJ and 10 uJ lie below them")


def test_criterion_8_numerical_hygiene(mr_double, mr_ladder, stirap,
                                       oracle_scan, scaling_runs):
    worst = {"trace": 0.0, "herm": 0.0, "mineig": 0.0}
    for label, res in HYGIENE.items():
        m = res.march
        assert m.trace_dev_max < 1e-9, label
        assert m.herm_dev_max < 1e-12, label
        assert m.min_eigenvalue > -1e-8, label
        worst["trace"] = max(worst["trace"], m.trace_dev_max)
        worst["herm"] = max(worst["herm"], m.herm_dev_max)
        worst["mineig"] = min(worst["mineig"], m.min_eigenvalue)

    base = scaling_runs[0]
    raw = preset_raw("fwm-oracle")
    raw["grid"]["nt"] *= 2
    raw["grid"]["nz"] *= 2
    refined = run_simulation(parse_config(raw))
    e0 = base.report.output_energy_j[3]
    change = abs(refined.report.output_energy_j[3] - e0) / e0
    assert change < 0.01
    print(f"PASS criterion 8: worst trace {worst['trace']:.1e} < 1e-9, "
          f"herm {worst['herm']:.1e} < 1e-12, min eig {worst['mineig']:.1e} "
          f"> -1e-8 over {len(HYGIENE)} runs; grid refinement moved the "
          f"output energy {change:.2%} < 1%")


def test_criterion_9_determinism_and_parallel_sweeps(tmp_path, capsys):
    import json

    a = tmp_path / "a"
    b = tmp_path / "b"
    assert main(["simulate", "--preset", "ch3f-seq", "--out", str(a)]) == 0
    assert main(["simulate", "--preset", "ch3f-seq", "--out", str(b)]) == 0
    for name in ("fields.csv", "coherence.csv", "report.csv", "manifest"):
        assert (a / name).read_bytes() == (b / name).read_bytes(), name

    doc = {
        "label": "determinism-sweep",
        "base": preset_raw("fwm-oracle"),
        "axes": [
            {"path": "medium.density_per_cm3",
             "values": [5.0e13, 1.0e14, 2.0e14, 4.0e14]},
            {"path": "scenario.probe.fwhm_fs",
             "values": [280.0, 300.0, 320.0]},
        ],
    }
    sweep_path = tmp_path / "sweep.json"
    sweep_path.write_text(json.dumps(doc))
    serial = tmp_path / "serial"
    parallel = tmp_path / "parallel"
    assert main(["sweep", "--sweep", str(sweep_path),
                 "--out", str(serial)]) == 0
    assert main(["sweep", "--sweep", str(sweep_path),
                 "--out", str(parallel), "--parallel", "4"]) == 0
    text_serial = (serial / "sweep.csv").read_bytes()
    text_parallel = (parallel / "sweep.csv").read_bytes()
    assert len(text_serial.splitlines()) == 13
    assert text_serial == text_parallel
    capsys.readouterr()
    print("PASS criterion 9: repeated preset runs byte-identical; "
          "12-point sweep with --parallel 4 matches the serial aggregate")
