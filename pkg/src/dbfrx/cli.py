"""Command-line front end: plan, simulate, beampattern, resources, metrics.

Frequencies on the command line accept SI suffixes (k/M/G), angles are in
degrees; stored artifacts always use base SI units and radians are never
written to disk.  Exit codes: 0 success (including "infeasible" planning
answers), 2 usage or configuration errors, 3 internal invariant violations.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from importlib import resources as importlib_resources
from pathlib import Path

import jsonschema
import numpy as np

from . import analysis, capture_io, resource_model
from .adc_model import AdcConfig, capture
from .array_signal import ArrayConfig, TestSignalSpec, synthesize_channels
from .dbf_core import ComplexWeightSet, TruncationWindow, steering_weights
from .errors import NoFundamentalError, ValidationError, ZoneEdgeError
from .fir import FirSpec
from .frequency_plan import (
    all_undersample_ranges,
    nyquist_zone,
    undersample_range_direct,
    undersample_range_inverted,
)
from .reference_chain import PipelineConfig, RunResult, run

_SI = {"k": 1e3, "M": 1e6, "G": 1e9}


def parse_freq(text: str) -> float:
    """'1.6G' -> 1.6e9; plain numbers (including 2e9) pass through."""
    text = text.strip()
    if text and text[-1] in _SI:
        return float(text[:-1]) * _SI[text[-1]]
    return float(text)


def load_schema(name: str) -> dict:
    path = importlib_resources.files("dbfrx.schemas") / f"{name}.schema.json"
    return json.loads(path.read_text())


def validate_against_schema(payload: dict, schema_name: str, source: str = "<memory>") -> None:
    schema = load_schema(schema_name)
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(payload), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        path = ".".join(str(p) for p in e.absolute_path) or "<root>"
        raise ValidationError(f"{source}: {path}: {e.message}")


def _jsonable(obj):
    """Recursively make a payload strict-JSON safe (inf/nan -> strings)."""
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        if math.isinf(f):
            return "inf" if f > 0 else "-inf"
        if math.isnan(f):
            return "nan"
        return f
    return obj


def _anchor(config_text: str, key: str) -> str:
    """Best-effort line anchor for an offending config key."""
    needle = f'"{key}"'
    for ln, line in enumerate(config_text.splitlines(), start=1):
        if needle in line:
            return f":{ln}"
    return ""


# ---------------------------------------------------------------------------
# run configuration
# ---------------------------------------------------------------------------


def load_run_config(path: str | Path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read config {path}: {exc}") from exc
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from exc

    schema = load_schema("runconfig")
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(cfg), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        parts = [str(p) for p in e.absolute_path]
        dotted = ".".join(parts) or "<root>"
        anchor = _anchor(text, parts[-1]) if parts else ""
        raise ValidationError(f"{path}{anchor}: {dotted}: {e.message}")

    _cross_check_config(cfg, path, text)
    return cfg


def _cross_check_config(cfg: dict, path, text: str) -> None:
    def fail(key: str, msg: str):
        raise ValidationError(f"{path}{_anchor(text, key)}: {msg}")

    sig = cfg["signal"]
    params = sig.get("parameters", {})
    kind = sig["kind"]
    if kind == "linear_fm" and not {"base_tone_hz", "deviation_hz"} <= params.keys():
        fail("parameters", "linear_fm needs parameters.base_tone_hz and parameters.deviation_hz")
    if kind == "iq_two_tone" and not {"i_tone_hz", "q_tone_hz"} <= params.keys():
        fail("parameters", "iq_two_tone needs parameters.i_tone_hz and parameters.q_tone_hz")

    w = cfg["weights"]
    if w["mode"] == "steer" and "steer_angle_deg" not in w:
        fail("weights", "weights.mode 'steer' needs steer_angle_deg")
    if w["mode"] == "explicit":
        if "explicit" not in w:
            fail("weights", "weights.mode 'explicit' needs the explicit weight list")
        if len(w["explicit"]) != cfg["array"]["num_elements"]:
            fail("explicit", "explicit weight count must equal array.num_elements")

    fir = cfg["fir"]
    if "coeffs" in fir and "num_taps" in fir and len(fir["coeffs"]) != fir["num_taps"]:
        fail("coeffs", "fir.coeffs length must equal fir.num_taps")


def build_simulation(cfg: dict):
    """Turn a validated RunConfig into domain objects."""
    a = cfg["array"]
    array = ArrayConfig(
        num_elements=a["num_elements"],
        spacing_m=a["spacing_m"],
        carrier_hz=a["carrier_hz"],
        wave_speed_mps=a.get("wave_speed_mps", 2.99792458e8),
    )

    s = cfg["signal"]
    params = s.get("parameters", {})
    spec = TestSignalSpec(
        kind=s["kind"],
        carrier_hz=array.carrier_hz,
        arrival_angle_rad=math.radians(s["arrival_angle_deg"]),
        amplitude=s["amplitude"],
        base_tone_hz=params.get("base_tone_hz"),
        deviation_hz=params.get("deviation_hz"),
        i_tone_hz=params.get("i_tone_hz"),
        q_tone_hz=params.get("q_tone_hz"),
        noise_power_db=s.get("noise_power_db"),
        noise_reference=s.get("noise_reference", "signal"),
        seed=s["seed"],
    )

    adc_cfg = cfg["adc"]
    curve = adc_cfg.get("frontend_curve")
    adc = AdcConfig(
        fs_hz=adc_cfg["fs_hz"],
        frontend_curve=tuple(tuple(p) for p in curve) if curve else None,
    )

    w = cfg["weights"]
    if w["mode"] == "steer":
        weights = steering_weights(array, math.radians(w["steer_angle_deg"]))
    else:
        weights = ComplexWeightSet.from_json(w["explicit"])
    weights_float = weights.dequantize()

    window = TruncationWindow.for_channels(
        array.num_elements, cfg.get("window", {}).get("lsb_offset")
    )

    f = cfg["fir"]
    if "coeffs" in f:
        fir = FirSpec.from_quantized(
            f["coeffs"],
            coeff_bits=f.get("coeff_bits", 10),
            cutoff_hz=f.get("cutoff_hz", 2e8),
            design_window=f.get("design_window", "hamming"),
        )
    else:
        fir = FirSpec.design(
            num_taps=f.get("num_taps", 64),
            coeff_bits=f.get("coeff_bits", 10),
            cutoff_hz=f.get("cutoff_hz", 2e8),
            fs_hz=adc.fs_hz,
            design_window=f.get("design_window", "hamming"),
        )
    return array, spec, adc, weights, weights_float, window, fir


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_plan(args) -> int:
    fc = parse_freq(args.fc)
    report: dict = {"version": 1, "fc_hz": fc}

    if args.fs is not None:
        fs = parse_freq(args.fs)
        report["fs_hz"] = fs
        try:
            plan = nyquist_zone(fc, fs)
            report["zone_edge"] = False
            report["zone"] = {
                "zone_index": plan.zone_index,
                "spectrum_orientation": plan.spectrum_orientation,
                "alias_if_hz": plan.alias_if_hz,
            }
            print(f"fc = {fc:g} Hz sampled at fs = {fs:g} Hz:")
            print(f"  Nyquist zone   : {plan.zone_index}")
            print(f"  orientation    : {plan.spectrum_orientation}")
            print(f"  alias IF       : {plan.alias_if_hz:g} Hz")
        except ZoneEdgeError as exc:
            report["zone_edge"] = True
            report["zone"] = None
            print(f"fc = {fc:g} Hz sampled at fs = {fs:g} Hz: ZONE EDGE ({exc})")

    if args.bw is not None:
        bw = parse_freq(args.bw)
        report["bw_hz"] = bw
        ranges = []
        if args.zone is not None:
            n = args.zone
            if args.placement in ("direct", "both"):
                ranges.append(("direct", 2 * n + 1, undersample_range_direct(fc, bw, n)))
            if args.placement in ("inverted", "both") and n >= 1:
                ranges.append(("inverted", 2 * n, undersample_range_inverted(fc, bw, n)))
        else:
            for r in all_undersample_ranges(fc, bw):
                ranges.append((r.placement, r.zone_index, r))

        rows = []
        print(f"under-sampling windows for fc = {fc:g} Hz, bw = {bw:g} Hz:")
        print(f"  {'zone':>4} {'placement':>9} {'fs_min (Hz)':>14} {'fs_max (Hz)':>14}")
        for placement, zone, r in ranges:
            if r is None:
                rows.append(
                    {
                        "zone_index": zone,
                        "placement": placement,
                        "fs_min_hz": None,
                        "fs_max_hz": None,
                        "infeasible": True,
                    }
                )
                print(f"  {zone:>4} {placement:>9} {'infeasible':>14}")
            else:
                rows.append(
                    {
                        "zone_index": r.zone_index,
                        "placement": r.placement,
                        "fs_min_hz": r.fs_min,
                        "fs_max_hz": r.fs_max,
                        "infeasible": False,
                    }
                )
                hi = "inf" if math.isinf(r.fs_max) else f"{r.fs_max:.6g}"
                print(f"  {r.zone_index:>4} {r.placement:>9} {r.fs_min:>14.6g} {hi:>14}")
        report["ranges"] = rows

    if args.fs is None and args.bw is None:
        raise ValidationError("plan needs --fs (zone report) and/or --bw (rate ranges)")

    payload = _jsonable(report)
    validate_against_schema(payload, "plan")
    if args.json:
        capture_io.write_json(args.json, payload)
    return 0


def _run_metadata(result: RunResult, num_samples: int) -> dict:
    return {
        "version": 1,
        "architecture": result.architecture,
        "arithmetic": result.arithmetic,
        "bit_width": result.bit_width,
        "warmup": result.warmup,
        "fs_hz": result.fs_hz,
        "num_samples": num_samples,
        "stage_bits": result.stage_bits,
        "diagnostics": result.diagnostics.as_dict(),
        "nominal_scale": result.nominal_scale,
    }


def _metrics_payload(result: RunResult, fs: float) -> dict:
    payload = {"version": 1, "fs_hz": fs, "component": "complex"}
    try:
        m = analysis.spectral_metrics(result.steady_state(), fs)
        payload["no_fundamental"] = False
        payload["metrics"] = m.as_dict()
    except NoFundamentalError:
        payload["no_fundamental"] = True
        payload["metrics"] = None
    return payload


def cmd_simulate(args) -> int:
    cfg = load_run_config(args.config)
    array, spec, adc, weights, weights_float, window, fir = build_simulation(cfg)
    run_cfg = cfg["run"]
    out_dir = Path(args.output_dir or run_cfg["output_dir"])
    out_dir.mkdir(parents=True, exist_ok=True)

    streams = synthesize_channels(array, spec, adc.fs_hz, run_cfg["num_samples"])
    cap = capture(streams, adc, carrier_hz=array.carrier_hz)

    capture_io.write_capture(cap, out_dir / "capture.bin", out_dir / "capture.json")
    capture_io.write_json(out_dir / "weights.json", {"weights": weights.to_json()})
    capture_io.write_json(
        out_dir / "fir_coeffs.json", {"coeffs": [int(c) for c in fir.coeffs_q]}
    )

    architectures = (
        ["proposed", "standard"] if run_cfg["architecture"] == "both" else [run_cfg["architecture"]]
    )
    pipelines = {
        arch: PipelineConfig(
            architecture=arch,
            arithmetic=run_cfg["arithmetic"],
            array=array,
            weights=weights,
            weights_float=weights_float,
            window=window,
            fir=fir,
        )
        for arch in architectures
    }

    if args.workers > 1 and len(architectures) > 1:
        with ThreadPoolExecutor(max_workers=args.workers) as pool:
            futures = {arch: pool.submit(run, cap, pc) for arch, pc in pipelines.items()}
            results = {arch: fut.result() for arch, fut in futures.items()}
    else:
        results = {arch: run(cap, pc) for arch, pc in pipelines.items()}

    for arch, result in results.items():
        capture_io.write_baseband_csv(out_dir / f"baseband_{arch}.csv", result.i, result.q)
        meta = _jsonable(_run_metadata(result, cap.num_samples))
        validate_against_schema(meta, "run_metadata")
        capture_io.write_json(out_dir / f"run_{arch}.json", meta)

        metrics = _jsonable(_metrics_payload(result, cap.fs_hz))
        validate_against_schema(metrics, "metrics")
        capture_io.write_json(out_dir / f"metrics_{arch}.json", metrics)

        d = result.diagnostics
        overflow_total = d.beamformer_window_overflows + d.final_window_overflows + d.ddc_saturations
        if overflow_total:
            print(
                f"warning: {arch} chain counted {overflow_total} overflow/saturation events "
                f"(window {d.beamformer_window_overflows}, final {d.final_window_overflows}, "
                f"ddc {d.ddc_saturations})",
                file=sys.stderr,
            )

    if len(architectures) == 2:
        report = analysis.compare(
            results["proposed"], results["standard"], warmup=fir.num_taps - 1
        )
        payload = _jsonable(
            {
                "version": 1,
                "arithmetic": run_cfg["arithmetic"],
                "a": "proposed",
                "b": "standard",
                "comparison": report.as_dict(),
            }
        )
        validate_against_schema(payload, "comparison")
        capture_io.write_json(out_dir / "comparison.json", payload)
        print(f"proposed vs standard ({run_cfg['arithmetic']}): rel RMS = {report.rel_rms_diff:.3e}")

    print(f"artifacts written to {out_dir}")
    return 0


def cmd_beampattern(args) -> int:
    if args.config:
        cfg = load_run_config(args.config)
        array, _, _, weights, _, _, _ = build_simulation(cfg)
    else:
        if args.num_elements is None or args.spacing is None or args.carrier is None:
            raise ValidationError(
                "beampattern needs --config, or --num-elements/--spacing/--carrier"
            )
        array = ArrayConfig(
            num_elements=args.num_elements,
            spacing_m=parse_freq(args.spacing),
            carrier_hz=parse_freq(args.carrier),
        )
        weights = steering_weights(array, math.radians(args.steer_deg))

    start, stop, step = args.grid_start_deg, args.grid_stop_deg, args.grid_step_deg
    if not (start < stop and step > 0):
        raise ValidationError("bad angle grid")
    grid_deg = np.arange(start, stop + step / 2, step)
    pattern = analysis.beam_pattern(array, weights, np.radians(grid_deg))

    peak_angle, peak_gain = pattern.peak()
    null_left, null_right = pattern.first_nulls()
    summary = {
        "version": 1,
        "num_elements": array.num_elements,
        "spacing_m": array.spacing_m,
        "carrier_hz": array.carrier_hz,
        "num_points": len(grid_deg),
        "peak_angle_deg": math.degrees(peak_angle),
        "peak_gain_db": peak_gain,
        "first_null_left_deg": None if null_left is None else math.degrees(null_left),
        "first_null_right_deg": None if null_right is None else math.degrees(null_right),
    }
    payload = _jsonable(summary)
    validate_against_schema(payload, "beampattern")

    print(f"peak {peak_gain:.2f} dB at {math.degrees(peak_angle):.2f} deg")
    if null_right is not None:
        print(f"first null right of peak at {math.degrees(null_right):.2f} deg")

    if args.csv:
        lines = ["angle_deg,gain_db"]
        for a, g in zip(grid_deg, pattern.gains_db):
            lines.append(f"{a!r},{g!r}")
        Path(args.csv).write_text("\n".join(lines) + "\n")
    if args.json:
        capture_io.write_json(args.json, payload)
    return 0


def cmd_resources(args) -> int:
    report = resource_model.estimate(args.arch, args.channels, args.taps, args.parallel)
    print(
        f"{report.architecture} architecture, N={report.num_channels}, "
        f"T={report.taps}, P={report.parallel}:"
    )
    print(f"  {'stage':<12} {'multipliers':>12} {'adders':>10} {'fused MACs':>11}")
    for s in report.stages:
        print(
            f"  {s.stage:<12} {s.real_multipliers:>12} {s.real_adders:>10} "
            f"{s.dsp_fused_macs:>11}"
        )
    print(
        f"  {'total':<12} {report.total_multipliers:>12} {report.total_adders:>10} "
        f"{report.total_fused_macs:>11}"
    )
    if report.calibration_dsp_slices:
        print(f"  synthesized DSP slices (calibration): {report.calibration_dsp_slices['total']}")

    payload = _jsonable({"version": 1, **report.as_dict()})
    validate_against_schema(payload, "resources")
    if args.json:
        capture_io.write_json(args.json, payload)
    return 0


def cmd_metrics(args) -> int:
    i, q = capture_io.read_baseband_csv(args.input)
    fs = parse_freq(args.fs)
    if args.component == "complex":
        samples = i + 1j * q
    elif args.component == "i":
        samples = i
    else:
        samples = q

    payload: dict = {"version": 1, "fs_hz": fs, "component": args.component}
    try:
        m = analysis.spectral_metrics(
            samples[args.skip :], fs, harmonics=args.harmonics, window=args.window
        )
        payload["no_fundamental"] = False
        payload["metrics"] = m.as_dict()
        print(f"fundamental : {m.fundamental_hz:g} Hz")
        print(f"SNR         : {m.snr_db:.2f} dB")
        print(f"SNDR        : {m.sndr_db:.2f} dB")
        print(f"SFDR        : {m.sfdr_db:.2f} dB")
        print(f"THD         : {m.thd_db:.2f} dB")
        print(f"window      : {m.window}, {m.fft_size}-point FFT")
    except NoFundamentalError:
        payload["no_fundamental"] = True
        payload["metrics"] = None
        print("no-fundamental: the record has no non-DC spectral content")

    payload = _jsonable(payload)
    validate_against_schema(payload, "metrics")
    if args.json:
        capture_io.write_json(args.json, payload)
    if args.spectrum_csv:
        freqs, pdb = analysis.power_spectrum(samples[args.skip :], fs)
        capture_io.write_spectrum_csv(args.spectrum_csv, freqs, pdb)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dbfrx",
        description="Desk-scale simulator for a beamform-before-DDC receiver chain.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="Nyquist-zone and under-sampling rate planning")
    p.add_argument("--fc", required=True, help="carrier frequency (Hz, SI suffixes ok)")
    p.add_argument("--fs", help="sampling rate for a zone/alias report")
    p.add_argument("--bw", help="signal bandwidth for rate-range planning")
    p.add_argument("--zone", type=int, help="restrict rate planning to index n")
    p.add_argument(
        "--placement", choices=["direct", "inverted", "both"], default="both",
        help="spectral placement for --zone planning",
    )
    p.add_argument("--json", help="write the report to this JSON file")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("simulate", help="run the full chain from a JSON config")
    p.add_argument("--config", required=True, help="RunConfig JSON path")
    p.add_argument("--output-dir", help="override run.output_dir")
    p.add_argument("--workers", type=int, default=1, help="parallel runs for 'both'")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("beampattern", help="array-factor pattern for a weight set")
    p.add_argument("--config", help="RunConfig JSON (array + weights sections)")
    p.add_argument("--num-elements", type=int)
    p.add_argument("--spacing", help="element spacing in meters")
    p.add_argument("--carrier", help="carrier frequency (Hz)")
    p.add_argument("--steer-deg", type=float, default=0.0)
    p.add_argument("--grid-start-deg", type=float, default=-90.0)
    p.add_argument("--grid-stop-deg", type=float, default=90.0)
    p.add_argument("--grid-step-deg", type=float, default=0.25)
    p.add_argument("--csv", help="write (angle_deg, gain_db) CSV here")
    p.add_argument("--json", help="write the summary JSON here")
    p.set_defaults(func=cmd_beampattern)

    p = sub.add_parser("resources", help="arithmetic cost model for an architecture")
    p.add_argument("--arch", choices=["proposed", "standard"], required=True)
    p.add_argument("--channels", type=int, required=True)
    p.add_argument("--taps", type=int, default=64)
    p.add_argument("--parallel", type=int, default=8)
    p.add_argument("--json", help="write the report to this JSON file")
    p.set_defaults(func=cmd_resources)

    p = sub.add_parser("metrics", help="spectral metrics of a baseband CSV")
    p.add_argument("--input", required=True, help="baseband CSV path")
    p.add_argument("--fs", required=True, help="sample rate of the record")
    p.add_argument("--component", choices=["complex", "i", "q"], default="complex")
    p.add_argument("--harmonics", type=int, default=5)
    p.add_argument("--window", choices=["auto", "rectangular", "blackman_harris"], default="auto")
    p.add_argument("--skip", type=int, default=0, help="samples to drop (e.g. FIR warm-up)")
    p.add_argument("--json", help="write the metrics JSON here")
    p.add_argument("--spectrum-csv", help="write (frequency_hz, power_db) CSV here")
    p.set_defaults(func=cmd_metrics)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # internal invariant violation
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
