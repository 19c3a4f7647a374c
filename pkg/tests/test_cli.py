import json
import shutil
import subprocess

import numpy as np
import pytest

import dbfrx
from dbfrx import capture_io
from dbfrx.cli import main, parse_freq, validate_against_schema

from conftest import SPEED_OF_LIGHT


def run_cli(*argv) -> int:
    return main(list(argv))


def base_config(tmp_path, **overrides):
    carrier = 2.0e9
    cfg = {
        "version": 1,
        "array": {
            "num_elements": 4,
            "spacing_m": SPEED_OF_LIGHT / carrier / 2,
            "carrier_hz": carrier,
        },
        "signal": {
            "kind": "iq_two_tone",
            "parameters": {"i_tone_hz": 30e6, "q_tone_hz": 5e6},
            "arrival_angle_deg": 0.0,
            "amplitude": 0.9,
            "noise_power_db": None,
            "seed": 12345,
        },
        "adc": {"fs_hz": 1.6e9},
        "weights": {"mode": "steer", "steer_angle_deg": 0.0},
        "window": {},
        "fir": {"num_taps": 64, "coeff_bits": 10, "cutoff_hz": 2e8, "design_window": "hamming"},
        "run": {
            "architecture": "both",
            "arithmetic": "float",
            "num_samples": 4096,
            "output_dir": str(tmp_path / "out"),
        },
    }
    for key, value in overrides.items():
        section, _, field = key.partition(".")
        if field:
            cfg[section][field] = value
        else:
            cfg[section] = value
    return cfg


def write_config(tmp_path, cfg, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(cfg, indent=2))
    return path


def test_parse_freq_suffixes():
    assert parse_freq("1.6G") == 1.6e9
    assert parse_freq("400M") == 4e8
    assert parse_freq("200k") == 2e5
    assert parse_freq("2e9") == 2e9


def test_plan_zone_report(tmp_path, capsys):
    out = tmp_path / "plan.json"
    assert run_cli("plan", "--fc", "3.6G", "--fs", "1.6G", "--json", str(out)) == 0
    report = json.loads(out.read_text())
    assert report["zone"]["zone_index"] == 5
    assert report["zone"]["spectrum_orientation"] == "direct"
    assert report["zone"]["alias_if_hz"] == pytest.approx(4e8)
    assert "zone 5" in capsys.readouterr().out.replace("Nyquist zone   : 5", "zone 5")


def test_plan_range_report(tmp_path):
    out = tmp_path / "plan.json"
    assert run_cli(
        "plan", "--fc", "2e9", "--bw", "1e8", "--zone", "1", "--placement", "direct",
        "--json", str(out),
    ) == 0
    report = json.loads(out.read_text())
    (row,) = report["ranges"]
    assert row["fs_min_hz"] == pytest.approx(1.3666666666e9, rel=1e-9)
    assert row["fs_max_hz"] == pytest.approx(1.95e9)
    assert row["infeasible"] is False


def test_plan_infeasible_reported_with_exit_zero(tmp_path):
    out = tmp_path / "plan.json"
    assert run_cli(
        "plan", "--fc", "2e9", "--bw", "1e8", "--zone", "10", "--placement", "direct",
        "--json", str(out),
    ) == 0
    report = json.loads(out.read_text())
    assert report["ranges"][0]["infeasible"] is True


def test_plan_zone_edge_reported(tmp_path):
    out = tmp_path / "plan.json"
    assert run_cli("plan", "--fc", "0.8G", "--fs", "1.6G", "--json", str(out)) == 0
    report = json.loads(out.read_text())
    assert report["zone_edge"] is True and report["zone"] is None


def test_plan_first_zone_identity(tmp_path):
    out = tmp_path / "plan.json"
    assert run_cli("plan", "--fc", "1e8", "--fs", "1.6e9", "--json", str(out)) == 0
    report = json.loads(out.read_text())
    assert report["zone"]["zone_index"] == 1
    assert report["zone"]["alias_if_hz"] == pytest.approx(1e8)


def test_plan_needs_fs_or_bw():
    assert run_cli("plan", "--fc", "1G") == 2


def test_internal_error_exits_three(monkeypatch, capsys):
    import dbfrx.cli as cli

    def boom(args):
        raise RuntimeError("wedged")

    monkeypatch.setattr(cli, "cmd_plan", boom)
    parser_default = cli.build_parser()  # parser binds cmd_plan at build time
    args = parser_default.parse_args(["plan", "--fc", "1G", "--fs", "1.6G"])
    monkeypatch.setattr(args, "func", boom)
    # exercise main()'s dispatcher with the raising handler
    monkeypatch.setattr(cli, "build_parser", lambda: _StubParser(args))
    assert cli.main(["plan", "--fc", "1G", "--fs", "1.6G"]) == 3
    assert "internal error" in capsys.readouterr().err


class _StubParser:
    def __init__(self, args):
        self._args = args

    def parse_args(self, argv=None):
        return self._args


def test_malformed_flags_exit_two():
    with pytest.raises(SystemExit) as exc:
        run_cli("plan")
    assert exc.value.code == 2


def test_resources_command(tmp_path, capsys):
    out = tmp_path / "resources.json"
    assert run_cli("resources", "--arch", "proposed", "--channels", "4", "--json", str(out)) == 0
    report = json.loads(out.read_text())
    fir = next(s for s in report["stages"] if s["stage"] == "fir")
    assert fir["real_multipliers"] == 1024
    assert "1024" in capsys.readouterr().out

    assert run_cli("resources", "--arch", "standard", "--channels", "4", "--json", str(out)) == 0
    report = json.loads(out.read_text())
    bf = next(s for s in report["stages"] if s["stage"] == "beamformer")
    assert bf["real_multipliers"] == 128


def test_beampattern_command(tmp_path):
    csv = tmp_path / "bp.csv"
    out = tmp_path / "bp.json"
    assert run_cli(
        "beampattern", "--num-elements", "4", "--spacing", "0.0749",
        "--carrier", "2G", "--steer-deg", "10", "--csv", str(csv), "--json", str(out),
    ) == 0
    report = json.loads(out.read_text())
    assert report["peak_angle_deg"] == pytest.approx(10.0, abs=0.25)
    assert report["peak_gain_db"] == pytest.approx(12.04, abs=0.05)
    lines = csv.read_text().splitlines()
    assert lines[0] == "angle_deg,gain_db"
    assert len(lines) == 1 + report["num_points"]


def test_simulate_float_both(tmp_path):
    cfg = base_config(tmp_path)
    path = write_config(tmp_path, cfg)
    assert run_cli("simulate", "--config", str(path)) == 0

    out = tmp_path / "out"
    for name in (
        "capture.bin", "capture.json", "weights.json", "fir_coeffs.json",
        "baseband_proposed.csv", "baseband_standard.csv",
        "run_proposed.json", "run_standard.json",
        "metrics_proposed.json", "metrics_standard.json", "comparison.json",
    ):
        assert (out / name).exists(), name

    comparison = json.loads((out / "comparison.json").read_text())
    assert comparison["comparison"]["rel_rms_diff"] < 1e-10

    # every emitted JSON validates against its shipped schema
    validate_against_schema(json.loads((out / "capture.json").read_text()), "capture_sidecar")
    validate_against_schema(json.loads((out / "run_proposed.json").read_text()), "run_metadata")
    validate_against_schema(json.loads((out / "metrics_proposed.json").read_text()), "metrics")
    validate_against_schema(comparison, "comparison")


def test_simulate_fixed_metrics_locate_tones(tmp_path):
    cfg = base_config(
        tmp_path, **{"run.arithmetic": "fixed", "run.architecture": "proposed",
                     "run.num_samples": 16384}
    )
    path = write_config(tmp_path, cfg)
    assert run_cli("simulate", "--config", str(path)) == 0
    out = tmp_path / "out"

    i, q = capture_io.read_baseband_csv(out / "baseband_proposed.csv")
    m_i = dbfrx.spectral_metrics(i[63:], 1.6e9)
    m_q = dbfrx.spectral_metrics(q[63:], 1.6e9)
    bin_hz = 1.6e9 / m_i.fft_size
    assert abs(m_i.fundamental_hz - 30e6) <= bin_hz
    assert abs(m_q.fundamental_hz - 5e6) <= bin_hz

    # metrics subcommand agrees
    mjson = tmp_path / "metrics.json"
    assert run_cli(
        "metrics", "--input", str(out / "baseband_proposed.csv"), "--fs", "1.6G",
        "--component", "i", "--skip", "63", "--json", str(mjson),
        "--spectrum-csv", str(tmp_path / "spec.csv"),
    ) == 0
    report = json.loads(mjson.read_text())
    assert abs(report["metrics"]["fundamental_hz"] - 30e6) <= bin_hz
    assert (tmp_path / "spec.csv").read_text().startswith("frequency_hz,power_db")


def test_simulate_byte_identical_reruns(tmp_path):
    cfg_a = base_config(tmp_path, **{"run.output_dir": str(tmp_path / "a"),
                                     "run.num_samples": 2048})
    cfg_b = base_config(tmp_path, **{"run.output_dir": str(tmp_path / "b"),
                                     "run.num_samples": 2048})
    run_cli("simulate", "--config", str(write_config(tmp_path, cfg_a, "a.json")))
    run_cli("simulate", "--config", str(write_config(tmp_path, cfg_b, "b.json")))
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert names == sorted(p.name for p in (tmp_path / "b").iterdir())
    for name in names:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes(), name


def test_simulate_workers_do_not_change_results(tmp_path):
    cfg_a = base_config(tmp_path, **{"run.output_dir": str(tmp_path / "w1"),
                                     "run.num_samples": 2048})
    cfg_b = base_config(tmp_path, **{"run.output_dir": str(tmp_path / "w2"),
                                     "run.num_samples": 2048})
    run_cli("simulate", "--config", str(write_config(tmp_path, cfg_a, "w1.json")))
    assert run_cli(
        "simulate", "--config", str(write_config(tmp_path, cfg_b, "w2.json")), "--workers", "2"
    ) == 0
    for name in ("baseband_proposed.csv", "baseband_standard.csv", "comparison.json"):
        assert (tmp_path / "w1" / name).read_bytes() == (tmp_path / "w2" / name).read_bytes()


def test_simulate_tiny_amplitude_reports_no_fundamental(tmp_path):
    cfg = base_config(
        tmp_path,
        **{
            "signal.kind": "tone", "signal.parameters": {}, "signal.amplitude": 1e-9,
            "run.architecture": "proposed", "run.arithmetic": "fixed",
            "run.num_samples": 2048,
        },
    )
    path = write_config(tmp_path, cfg)
    assert run_cli("simulate", "--config", str(path)) == 0
    i, q = capture_io.read_baseband_csv(tmp_path / "out" / "baseband_proposed.csv")
    assert np.all(i == 0) and np.all(q == 0)
    metrics = json.loads((tmp_path / "out" / "metrics_proposed.json").read_text())
    assert metrics["no_fundamental"] is True and metrics["metrics"] is None


def test_simulate_warns_on_overflow_but_exits_zero(tmp_path, capsys):
    # LSB-aligned window on a loud signal wraps; warning goes to stderr
    cfg = base_config(
        tmp_path,
        **{
            "signal.kind": "tone", "signal.parameters": {}, "signal.amplitude": 1.0,
            "window": {"lsb_offset": 0},
            "run.architecture": "proposed", "run.arithmetic": "fixed",
            "run.num_samples": 2048,
        },
    )
    path = write_config(tmp_path, cfg)
    assert run_cli("simulate", "--config", str(path)) == 0
    err = capsys.readouterr().err
    assert "overflow" in err
    meta = json.loads((tmp_path / "out" / "run_proposed.json").read_text())
    assert meta["diagnostics"]["beamformer_window_overflows"] > 0


def test_simulate_rejects_unknown_keys(tmp_path, capsys):
    cfg = base_config(tmp_path)
    cfg["adc"]["frequency"] = 1.6e9  # typo'd key
    path = write_config(tmp_path, cfg)
    assert run_cli("simulate", "--config", str(path)) == 2
    err = capsys.readouterr().err
    assert "adc" in err


def test_simulate_rejects_missing_steer_angle(tmp_path):
    cfg = base_config(tmp_path, **{"weights": {"mode": "steer"}})
    path = write_config(tmp_path, cfg)
    assert run_cli("simulate", "--config", str(path)) == 2


def test_simulate_rejects_bad_json_with_line(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "version": 1,\n  "array": [,]\n}\n')
    assert run_cli("simulate", "--config", str(path)) == 2
    assert ":3" in capsys.readouterr().err


def test_explicit_weights_round_trip(tmp_path):
    w = dbfrx.steering_weights(
        dbfrx.ArrayConfig(num_elements=4, spacing_m=0.0749, carrier_hz=2e9), np.radians(5.0)
    )
    cfg = base_config(
        tmp_path,
        **{
            "weights": {"mode": "explicit", "explicit": w.to_json()},
            "run.architecture": "proposed", "run.num_samples": 2048,
        },
    )
    path = write_config(tmp_path, cfg)
    assert run_cli("simulate", "--config", str(path)) == 0
    emitted = json.loads((tmp_path / "out" / "weights.json").read_text())
    assert emitted["weights"] == w.to_json()


@pytest.mark.skipif(shutil.which("dbfrx") is None, reason="console script not on PATH")
def test_console_script_smoke():
    proc = subprocess.run(
        ["dbfrx", "plan", "--fc", "2G", "--fs", "1.6G"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "zone" in proc.stdout.lower()
