"""On-disk formats: binary captures with JSON sidecars, baseband CSV.

Capture container: each 12-bit code is stored in a little-endian signed
16-bit word, channel-interleaved (ch0[k], ch1[k], ..., chN-1[k], ch0[k+1],
...), with framing metadata in a JSON sidecar next to it.  See
docs/formats.md for the byte-exact layout.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .adc_model import Capture
from .errors import ValidationError

SIDECAR_VERSION = 1


def write_capture(cap: Capture, bin_path, sidecar_path) -> None:
    data = cap.codes.T.astype("<i2")  # (K, N) -> channel-interleaved words
    Path(bin_path).write_bytes(data.tobytes(order="C"))
    sidecar = {
        "version": SIDECAR_VERSION,
        "fs_hz": cap.fs_hz,
        "num_channels": cap.num_channels,
        "parallel_factor": 8,
        "num_samples": cap.num_samples,
        "num_frames": cap.num_frames,
        "padded_samples": cap.padded_samples,
        "bits": 12,
        "sample_format": "int16le",
        "interleaving": "channel",
    }
    Path(sidecar_path).write_text(json.dumps(sidecar, indent=2, sort_keys=True) + "\n")


def read_capture(bin_path, sidecar_path) -> Capture:
    meta = json.loads(Path(sidecar_path).read_text())
    if meta.get("version") != SIDECAR_VERSION:
        raise ValidationError(f"unsupported capture sidecar version {meta.get('version')!r}")
    n = meta["num_channels"]
    k = meta["num_samples"]
    raw = np.frombuffer(Path(bin_path).read_bytes(), dtype="<i2")
    if len(raw) != n * k:
        raise ValidationError(
            f"capture file holds {len(raw)} words, sidecar promises {n * k}"
        )
    codes = raw.reshape(k, n).T
    return Capture(
        codes=codes.astype(np.int64),
        fs_hz=meta["fs_hz"],
        padded_samples=meta.get("padded_samples", 0),
    )


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def write_baseband_csv(path, i, q, parallel: int = 8) -> None:
    """frame_index,slot,i,q rows; ints verbatim, floats shortest-round-trip."""
    i = np.asarray(i)
    q = np.asarray(q)
    lines = ["frame_index,slot,i,q"]
    for k in range(len(i)):
        lines.append(f"{k // parallel},{k % parallel},{_fmt(i[k])},{_fmt(q[k])}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_baseband_csv(path) -> tuple[np.ndarray, np.ndarray]:
    """Returns (i, q) as float64 (exact for integer payloads up to 2^53)."""
    text = Path(path).read_text().splitlines()
    if not text or text[0].strip() != "frame_index,slot,i,q":
        raise ValidationError(f"{path}: not a baseband CSV (bad header)")
    i_vals, q_vals = [], []
    for ln, line in enumerate(text[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 4:
            raise ValidationError(f"{path}:{ln}: expected 4 columns")
        i_vals.append(float(parts[2]))
        q_vals.append(float(parts[3]))
    return np.array(i_vals), np.array(q_vals)


def write_spectrum_csv(path, freqs, power_db) -> None:
    lines = ["frequency_hz,power_db"]
    for f, p in zip(freqs, power_db):
        lines.append(f"{_fmt(f)},{_fmt(p)}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_json(path, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
