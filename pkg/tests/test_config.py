from __future__ import annotations

import copy
import json

import numpy as np
import pytest

from thzmix import (
    ConfigError,
    config_hash,
    dump_config,
    expand_sweep,
    load_config,
    load_sweep,
    parse_config,
    parse_sweep,
    preset_names,
    preset_raw,
    save_config,
)
from thzmix.runner import run_simulation

from conftest import small_oracle_raw


@pytest.mark.parametrize("name", preset_names())
def test_presets_parse_and_round_trip(name):
    cfg = parse_config(preset_raw(name))
    again = parse_config(dump_config(cfg))
    assert config_hash(again) == config_hash(cfg)
    assert again.label == cfg.label


def test_save_and_load_round_trip(tmp_path, small_raw):
    cfg = parse_config(small_raw)
    path = tmp_path / "run.json"
    save_config(cfg, path)
    loaded = load_config(path)
    assert config_hash(loaded) == config_hash(cfg)


def test_unit_conversions_reach_si(small_raw):
    small_raw["medium"]["density_per_cm3"] = 1.0e17
    small_raw["medium"]["length_cm"] = 2.5
    cfg = parse_config(small_raw)
    assert cfg.medium.number_density_m3 == pytest.approx(1.0e23)
    assert cfg.medium.length_m == pytest.approx(0.025)
    # pulse times arrive in femtoseconds
    assert cfg.scenario.probe.fwhm_s == pytest.approx(300.0e-15)


def test_all_violations_collected_in_one_error(small_raw):
    bad = copy.deepcopy(small_raw)
    bad["medium"]["density_per_cm3"] = -1.0
    bad["grid"]["nt"] = 1
    bad["scheme"]["lambda_pump_um"] = 0.0
    with pytest.raises(ConfigError) as err:
        parse_config(bad)
    problems = err.value.problems
    assert len(problems) >= 3
    text = "\n".join(problems)
    assert "medium.density_per_cm3" in text
    assert "grid.nt" in text
    assert "scheme.lambda_pump_um" in text


def test_unknown_keys_are_named(small_raw):
    small_raw["medium"]["pressure_torr"] = 5.0
    with pytest.raises(ConfigError, match="pressure_torr"):
        parse_config(small_raw)


def test_missing_section_is_reported(small_raw):
    del small_raw["scheme"]
    with pytest.raises(ConfigError, match="scheme"):
        parse_config(small_raw)


def test_scenario_ordering_enforced_at_parse(small_raw):
    small_raw["scenario"] = {
        "kind": "stirap",
        "pump": {"peak_rabi_per_s": 1e12, "center_fs": 0.0, "fwhm_fs": 150.0},
        "stokes": {"peak_rabi_per_s": 1e12, "center_fs": 100.0,
                   "fwhm_fs": 150.0},
        "probe": {"peak_rabi_per_s": 1e11, "center_fs": 50.0,
                  "fwhm_fs": 150.0},
    }
    with pytest.raises(ConfigError, match="lead"):
        parse_config(small_raw)


def test_clamp_coherence_accepts_number_or_pair(small_raw):
    small_raw["numerics"]["clamp_coherence"] = 0.25
    assert parse_config(small_raw).numerics.clamp_coherence == 0.25
    small_raw["numerics"]["clamp_coherence"] = [0.1, -0.2]
    assert parse_config(small_raw).numerics.clamp_coherence \
        == pytest.approx(0.1 - 0.2j)
    small_raw["numerics"]["clamp_coherence"] = [0.4, 0.4]
    with pytest.raises(ConfigError, match="1/2"):
        parse_config(small_raw)


def test_json_errors_carry_line_and_column(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "label": "x",\n  oops\n}\n')
    with pytest.raises(ConfigError, match=r"line 3"):
        load_config(path)


def test_config_hash_ignores_label_and_metadata(small_raw):
    cfg = parse_config(small_raw)
    renamed = copy.deepcopy(small_raw)
    renamed["label"] = "renamed"
    renamed.setdefault("metadata", {})["note"] = "annotated copy"
    assert config_hash(parse_config(renamed)) == config_hash(cfg)
    changed = copy.deepcopy(small_raw)
    changed["medium"]["density_per_cm3"] *= 1.001
    assert config_hash(parse_config(changed)) != config_hash(cfg)


def test_temperature_metadata_does_not_touch_the_physics(small_raw):
    cold = copy.deepcopy(small_raw)
    cold.setdefault("metadata", {})["temperature_k"] = 4.0
    hot = copy.deepcopy(small_raw)
    hot.setdefault("metadata", {})["temperature_k"] = 300.0
    res_cold = run_simulation(parse_config(cold))
    res_hot = run_simulation(parse_config(hot))
    assert np.array_equal(res_cold.march.fields, res_hot.march.fields)


# --- sweeps -----------------------------------------------------------------

def sweep_doc(**over) -> dict:
    doc = {
        "label": "density-scan",
        "base": small_oracle_raw(),
        "axes": [{"path": "medium.density_per_cm3",
                  "values": [1.0e14, 2.0e14]}],
    }
    doc.update(over)
    return doc


def test_sweep_expansion_order_and_labels():
    doc = sweep_doc(axes=[
        {"path": "medium.density_per_cm3", "values": [1.0e14, 2.0e14]},
        {"path": "scenario.probe.fwhm_fs", "values": [300.0, 400.0, 500.0]},
    ])
    points = expand_sweep(parse_sweep(doc))
    assert len(points) == 6
    assert [p.index for p in points] == list(range(6))
    # row-major: the first axis is the outer loop
    assert points[0].coords["medium.density_per_cm3"] == 1.0e14
    assert points[2].coords["scenario.probe.fwhm_fs"] == 500.0
    assert points[3].coords["medium.density_per_cm3"] == 2.0e14
    assert points[4].config.label == "density-scan-004"


def test_sweep_applies_unit_conversion_per_point():
    doc = sweep_doc(axes=[{"path": "medium.density_per_cm3",
                           "values": [1.0e17, 2.0e17]}])
    points = expand_sweep(parse_sweep(doc))
    assert points[0].config.medium.number_density_m3 == pytest.approx(1.0e23)
    assert points[1].config.medium.number_density_m3 == pytest.approx(2.0e23)


def test_sweep_rejects_unknown_axis_path():
    doc = sweep_doc(axes=[{"path": "medium.pressure_torr",
                           "values": [1.0, 2.0]}])
    with pytest.raises(ConfigError, match="does not exist"):
        parse_sweep(doc)


def test_sweep_rejects_single_valued_axis():
    doc = sweep_doc(axes=[{"path": "medium.density_per_cm3",
                           "values": [1.0e14]}])
    with pytest.raises(ConfigError, match="two"):
        parse_sweep(doc)
    doc = sweep_doc(axes=[{"path": "medium.density_per_cm3", "values": []}])
    with pytest.raises(ConfigError, match="two"):
        parse_sweep(doc)


def test_sweep_rejects_more_than_two_axes():
    ax = {"path": "medium.density_per_cm3", "values": [1.0, 2.0]}
    doc = sweep_doc(axes=[ax, ax, ax])
    with pytest.raises(ConfigError, match="two axes"):
        parse_sweep(doc)


def test_sweep_base_may_live_in_a_file(tmp_path):
    base_path = tmp_path / "base.json"
    base_path.write_text(json.dumps(small_oracle_raw()))
    doc = sweep_doc(base="base.json")
    sweep_path = tmp_path / "sweep.json"
    sweep_path.write_text(json.dumps(doc))
    spec = load_sweep(sweep_path)
    assert len(expand_sweep(spec)) == 2


def test_sweep_missing_base_file_is_an_error(tmp_path):
    doc = sweep_doc(base="nope.json")
    sweep_path = tmp_path / "sweep.json"
    sweep_path.write_text(json.dumps(doc))
    with pytest.raises(ConfigError, match="not found"):
        load_sweep(sweep_path)
