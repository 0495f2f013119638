from __future__ import annotations

import json

import pytest

from thzmix.cli import OK, PHYSICS_FAIL, USAGE_ERROR, build_parser, main
from thzmix.runner import write_result

from conftest import small_oracle_raw


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_presets_lists_known_names(capsys):
    code, out = run_cli(capsys, "presets")
    assert code == OK
    for name in ("ch3f-seq", "ch3f-stirap", "methanol-eff",
                 "mr-check-double", "mr-check-ladder", "fwm-oracle"):
        assert name in out


def test_efficiency_defaults_hit_order_unity(capsys):
    code, out = run_cli(capsys, "efficiency")
    assert code == OK
    assert "0.875885" in out
    assert "order unity" in out
    assert "bound" in out


def test_efficiency_rejects_overfull_coherence(capsys):
    code, out = run_cli(capsys, "efficiency", "--rho-bc", "0.7")
    assert code == USAGE_ERROR
    assert "1/2" in out


def test_efficiency_printed_sinc_variant(capsys):
    code, out = run_cli(capsys, "efficiency", "--delta-k-l", "3.14159265")
    code2, out2 = run_cli(capsys, "efficiency", "--delta-k-l", "3.14159265",
                          "--printed-sinc")
    assert code == OK and code2 == OK
    assert out != out2


def test_simulate_unknown_preset_lists_catalog(capsys):
    code, out = run_cli(capsys, "simulate", "--preset", "no-such-gas")
    assert code == USAGE_ERROR
    assert "ch3f-seq" in out


def test_simulate_missing_config_file(capsys, tmp_path):
    code, out = run_cli(capsys, "simulate",
                        "--config", str(tmp_path / "nope.json"))
    assert code == USAGE_ERROR


def test_simulate_invalid_config_reports_problems(capsys, tmp_path):
    raw = small_oracle_raw()
    raw["medium"]["density_per_cm3"] = -5.0
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(raw))
    code, out = run_cli(capsys, "simulate", "--config", str(path))
    assert code == USAGE_ERROR
    assert "density_per_cm3" in out


def test_simulate_writes_artifacts_and_reports(capsys, tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps(small_oracle_raw()))
    out_dir = tmp_path / "out"
    code, out = run_cli(capsys, "simulate", "--config", str(path),
                        "--out", str(out_dir))
    assert code == OK
    assert (out_dir / "fields.csv").is_file()
    assert (out_dir / "manifest").is_file()
    assert "peak |rho_bc|" in out
    assert "artifacts:" in out


def test_simulate_honors_output_dir_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("THZMIX_OUT_DIR", str(tmp_path / "env-root"))
    path = tmp_path / "run.json"
    path.write_text(json.dumps(small_oracle_raw()))
    code, out = run_cli(capsys, "simulate", "--config", str(path))
    assert code == OK
    assert (tmp_path / "env-root" / "fwm-oracle" / "fields.csv").is_file()


def test_strict_mr_rejects_held_coherence_runs(capsys, tmp_path):
    # frozen-coherence run cannot claim photon bookkeeping
    path = tmp_path / "run.json"
    path.write_text(json.dumps(small_oracle_raw()))
    code, out = run_cli(capsys, "simulate", "--config", str(path),
                        "--out", str(tmp_path / "o"), "--strict-mr")
    assert code == PHYSICS_FAIL


def test_check_mr_flags_held_coherence_run(capsys, tmp_path, small_run):
    out_dir = tmp_path / "frozen-run"
    write_result(small_run, out_dir)
    code, out = run_cli(capsys, "check-mr", "--run", str(out_dir))
    assert code == PHYSICS_FAIL
    assert "conservation not expected" in out


def test_check_mr_missing_run_dir(capsys, tmp_path):
    code, out = run_cli(capsys, "check-mr", "--run", str(tmp_path / "gone"))
    assert code == USAGE_ERROR
    assert "cannot read" in out


def test_check_mr_tampered_fields(capsys, tmp_path, small_run):
    out_dir = tmp_path / "tampered"
    write_result(small_run, out_dir)
    p = out_dir / "fields.csv"
    text = p.read_text()
    i = text.find("7", len(text) // 2)
    p.write_text(text[:i] + "8" + text[i + 1:])
    code, out = run_cli(capsys, "check-mr", "--run", str(out_dir))
    assert code == USAGE_ERROR
    assert "checksum" in out


def test_sweep_empty_axis_is_usage_error(capsys, tmp_path):
    doc = {"label": "s", "base": small_oracle_raw(),
           "axes": [{"path": "medium.density_per_cm3", "values": []}]}
    path = tmp_path / "sweep.json"
    path.write_text(json.dumps(doc))
    code, out = run_cli(capsys, "sweep", "--sweep", str(path),
                        "--out", str(tmp_path / "o"))
    assert code == USAGE_ERROR


def test_sweep_runs_members_and_aggregates(capsys, tmp_path):
    doc = {"label": "s", "base": small_oracle_raw(),
           "axes": [{"path": "medium.density_per_cm3",
                     "values": [5.0e13, 1.0e14]}]}
    path = tmp_path / "sweep.json"
    path.write_text(json.dumps(doc))
    out_dir = tmp_path / "o"
    code, out = run_cli(capsys, "sweep", "--sweep", str(path),
                        "--out", str(out_dir))
    assert code == OK
    lines = (out_dir / "sweep.csv").read_text().splitlines()
    assert len(lines) == 3
    assert lines[0].startswith("index,medium.density_per_cm3")
    assert (out_dir / "point_000" / "fields.csv").is_file()
    assert (out_dir / "point_001" / "manifest").is_file()


def test_sweep_marks_failed_members(capsys, tmp_path):
    doc = {"label": "s", "base": small_oracle_raw(),
           "axes": [{"path": "scenario.probe.peak_rabi_per_s",
                     "values": [1.0e11, 1.0e19]}]}
    path = tmp_path / "sweep.json"
    path.write_text(json.dumps(doc))
    out_dir = tmp_path / "o"
    code, out = run_cli(capsys, "sweep", "--sweep", str(path),
                        "--out", str(out_dir))
    assert code == PHYSICS_FAIL
    lines = (out_dir / "sweep.csv").read_text().splitlines()
    assert ",ok," in lines[1] or lines[1].endswith(",ok,")
    assert "failed" in lines[2]
    # the survivor's artifacts are preserved
    assert (out_dir / "point_000" / "fields.csv").is_file()


def test_parser_rejects_preset_plus_config(capsys):
    parser = build_parser()
    with pytest.raises(SystemExit):
        parser.parse_args(["simulate", "--preset", "a", "--config", "b"])


def test_main_requires_a_command(capsys):
    with pytest.raises(SystemExit):
        main([])
