from __future__ import annotations

import numpy as np
import pytest

from thzmix import parse_config
from thzmix.bloch import StabilityError, step_density_matrix
from thzmix.levels import Detunings, RelaxationModel
from thzmix.medium import MediumSpec
from thzmix.propagation import NumericsError, build_field_grid, march_cell
from thzmix.pulses import OFF, PulseSpec, ScenarioSpec

from conftest import make_scheme, pumped_small_raw, small_oracle_raw

NO_DET = Detunings()
NO_RELAX = RelaxationModel()


def small_setup(signature=(1, -1, -1, -1), *, nt=256, nz=50, **medium_kw):
    scheme = make_scheme(signature)
    base = dict(number_density_m3=1.0e20, length_m=0.01)
    base.update(medium_kw)
    medium = MediumSpec(**base)
    grid = build_field_grid(scheme, NO_DET, medium,
                            t_min=-6.0e-13, t_max=9.0e-13, nt=nt, nz=nz)
    sc = ScenarioSpec(
        kind="sequential", pump=OFF, stokes=OFF,
        probe=PulseSpec(peak_rabi=1.0e11, center_s=0.0, fwhm_s=3.0e-13))
    return scheme, grid, sc


def test_grid_properties():
    scheme, grid, _ = small_setup()
    assert grid.nt == 256 and grid.nz == 50
    assert np.isclose(grid.dt, 1.5e-12 / 255)
    assert np.isclose(grid.dz, 0.01 / 50)
    assert grid.length_m == 0.01
    assert np.isclose(grid.delta_k_l, grid.delta_k * 0.01)


def test_all_fields_held_is_an_exact_identity():
    scheme, grid, sc = small_setup()
    res = march_cell(sc, grid, scheme, NO_DET, NO_RELAX,
                     update_mask=(False, False, False, False))
    assert np.array_equal(res.output_fields, res.input_fields)


def test_linear_loss_beers_law():
    # near-vacuum density so mixing is negligible against the set loss
    scheme, grid, sc = small_setup(number_density_m3=1.0,
                                   kappa_per_m=(0.0, 0.0, 200.0, 0.0))
    res = march_cell(sc, grid, scheme, NO_DET, NO_RELAX)
    ratio = np.max(np.abs(res.output_fields[:, 2])) \
        / np.max(np.abs(res.input_fields[:, 2]))
    assert np.isclose(ratio, np.exp(-200.0 * 0.01), rtol=1e-12)


def test_no_spurious_gain_without_inversion():
    raw = pumped_small_raw()
    cfg = parse_config(raw)
    grid = build_field_grid(cfg.scheme, cfg.detunings, cfg.medium,
                            t_min=cfg.grid.t_min_s, t_max=cfg.grid.t_max_s,
                            nt=cfg.grid.nt, nz=cfg.grid.nz)
    res = march_cell(cfg.scenario, grid, cfg.scheme, cfg.detunings,
                     cfg.relaxation)
    e_in = np.sum(np.abs(res.input_fields) ** 2)
    e_out = np.sum(np.abs(res.output_fields) ** 2)
    assert e_out <= e_in * (1.0 + 1e-9)


def test_zero_boundary_stays_dark():
    scheme, grid, _ = small_setup()
    dark = np.zeros((grid.nt, 4), dtype=np.complex128)
    res = march_cell(dark, grid, scheme, NO_DET, NO_RELAX)
    assert np.all(res.fields == 0.0)
    assert np.allclose(res.populations[:, :, 1], 1.0, atol=1e-15)


def test_all_off_scenario_has_no_resolution_scale():
    scheme, grid, _ = small_setup()
    sc = ScenarioSpec(kind="sequential", pump=OFF, stokes=OFF, probe=OFF)
    with pytest.raises(ValueError, match="no active pulse"):
        march_cell(sc, grid, scheme, NO_DET, NO_RELAX)


def test_march_refuses_coarse_z_grid():
    scheme, grid, sc = small_setup(nz=20)
    with pytest.raises(NumericsError, match="z grid"):
        march_cell(sc, grid, scheme, NO_DET, NO_RELAX)


def test_march_refuses_coarse_time_grid():
    scheme, grid, sc = small_setup(nt=64)
    with pytest.raises(NumericsError, match="40"):
        march_cell(sc, grid, scheme, NO_DET, NO_RELAX)


def test_march_refuses_unresolvable_drive():
    scheme, grid, _ = small_setup()
    sc = ScenarioSpec(
        kind="sequential", pump=OFF, stokes=OFF,
        probe=PulseSpec(peak_rabi=1.0e18, center_s=0.0, fwhm_s=3.0e-13))
    with pytest.raises(StabilityError):
        march_cell(sc, grid, scheme, NO_DET, NO_RELAX)


def test_march_rejects_signature_mismatch():
    scheme_l, grid, sc = small_setup((1, -1, -1, -1))
    scheme_d = make_scheme((1, -1, 1, -1))
    with pytest.raises(ValueError, match="signature"):
        march_cell(sc, grid, scheme_d, NO_DET, NO_RELAX)


def test_march_rejects_terahertz_input():
    scheme, grid, sc = small_setup()
    arr = sc.boundary_fields(grid.tau).copy()
    arr[:, 3] = 1.0e9
    with pytest.raises(ValueError, match="terahertz"):
        march_cell(arr, grid, scheme, NO_DET, NO_RELAX)


def test_frozen_march_rejects_overfull_coherence():
    scheme, grid, sc = small_setup()
    with pytest.raises(ValueError):
        march_cell(sc, grid, scheme, NO_DET, NO_RELAX,
                   frozen=True, clamp_bc=0.7)


def test_history_shapes_and_boundary_slice(small_run):
    march = small_run.march
    g = march.grid
    assert march.fields.shape == (g.nz + 1, g.nt, 4)
    assert march.populations.shape == (g.nz + 1, g.nt, 4)
    assert march.coherence_storage.shape == (g.nz + 1, g.nt)
    assert np.array_equal(march.input_fields, march.fields[0])
    assert np.array_equal(march.output_fields, march.fields[-1])


def test_entry_slice_matches_single_atom_integration():
    # matter at z = 0 sees exactly the boundary drive, so the march there
    # must agree with stepping one density matrix through the same times
    raw = pumped_small_raw()
    cfg = parse_config(raw)
    grid = build_field_grid(cfg.scheme, cfg.detunings, cfg.medium,
                            t_min=cfg.grid.t_min_s, t_max=cfg.grid.t_max_s,
                            nt=cfg.grid.nt, nz=cfg.grid.nz)
    res = march_cell(cfg.scenario, grid, cfg.scheme, cfg.detunings,
                     cfg.relaxation)
    bc = cfg.scenario.boundary_fields(grid.tau)
    flags = cfg.scheme.conjugation_flags()

    def drives(t):
        w = np.interp(t, grid.tau, np.arange(grid.nt, dtype=np.float64))
        i = int(np.floor(w))
        i = min(i, grid.nt - 2)
        f = w - i
        q = (1.0 - f) * bc[i] + f * bc[i + 1]
        return np.where(flags > 0, q, np.conj(q))

    rho = np.zeros((4, 4), dtype=np.complex128)
    rho[1, 1] = 1.0
    pops = [rho.diagonal().real.copy()]
    for i in range(grid.nt - 1):
        rho = step_density_matrix(rho, drives, cfg.relaxation, grid.dt,
                                  scheme=cfg.scheme, det=cfg.detunings,
                                  t=grid.tau[i])
        pops.append(rho.diagonal().real.copy())
    assert np.allclose(np.array(pops), res.populations[0], atol=5e-4)


def test_frozen_march_marks_result(small_run):
    assert small_run.march.frozen
    assert np.allclose(np.abs(small_run.march.coherence_storage), 0.35)
