import json

import numpy as np
import pytest

import dbfrx
from dbfrx import capture_io
from dbfrx.cli import validate_against_schema
from dbfrx.errors import ValidationError


def test_capture_round_trip(tmp_path):
    rng = np.random.default_rng(41)
    cap = dbfrx.Capture(
        codes=rng.integers(-2048, 2048, (4, 256)), fs_hz=1.6e9, padded_samples=3
    )
    capture_io.write_capture(cap, tmp_path / "c.bin", tmp_path / "c.json")
    again = capture_io.read_capture(tmp_path / "c.bin", tmp_path / "c.json")
    assert np.array_equal(again.codes, cap.codes)
    assert again.fs_hz == cap.fs_hz
    assert again.padded_samples == 3


def test_capture_binary_layout(tmp_path):
    # channel-interleaved int16le: ch0[0], ch1[0], ch0[1], ch1[1], ...
    cap = dbfrx.Capture(codes=np.array([[1, 2, 3, 4, 5, 6, 7, 8],
                                        [-1, -2, -3, -4, -5, -6, -7, -8]]), fs_hz=1.6e9)
    capture_io.write_capture(cap, tmp_path / "c.bin", tmp_path / "c.json")
    raw = np.frombuffer((tmp_path / "c.bin").read_bytes(), dtype="<i2")
    assert list(raw[:6]) == [1, -1, 2, -2, 3, -3]


def test_sidecar_schema_and_mismatch(tmp_path):
    cap = dbfrx.Capture(codes=np.zeros((2, 64), dtype=np.int64), fs_hz=1.6e9)
    capture_io.write_capture(cap, tmp_path / "c.bin", tmp_path / "c.json")
    sidecar = json.loads((tmp_path / "c.json").read_text())
    validate_against_schema(sidecar, "capture_sidecar")

    (tmp_path / "c.bin").write_bytes(b"\x00\x00" * 10)  # wrong length
    with pytest.raises(ValidationError):
        capture_io.read_capture(tmp_path / "c.bin", tmp_path / "c.json")


def test_baseband_csv_round_trip_int(tmp_path):
    i = np.array([1, -2, 3, 2**35 - 1], dtype=np.int64)
    q = np.array([0, 5, -6, -(2**35)], dtype=np.int64)
    capture_io.write_baseband_csv(tmp_path / "b.csv", i, q)
    ri, rq = capture_io.read_baseband_csv(tmp_path / "b.csv")
    assert np.array_equal(ri.astype(np.int64), i)
    assert np.array_equal(rq.astype(np.int64), q)


def test_baseband_csv_round_trip_float(tmp_path):
    rng = np.random.default_rng(6)
    i = rng.standard_normal(16)
    q = rng.standard_normal(16)
    capture_io.write_baseband_csv(tmp_path / "b.csv", i, q)
    ri, rq = capture_io.read_baseband_csv(tmp_path / "b.csv")
    assert np.array_equal(ri, i)  # repr round-trips float64 exactly
    assert np.array_equal(rq, q)


def test_baseband_csv_header_check(tmp_path):
    (tmp_path / "bad.csv").write_text("a,b,c\n1,2,3\n")
    with pytest.raises(ValidationError):
        capture_io.read_baseband_csv(tmp_path / "bad.csv")


def test_write_capture_is_deterministic(tmp_path):
    rng = np.random.default_rng(42)
    cap = dbfrx.Capture(codes=rng.integers(-2048, 2048, (4, 64)), fs_hz=1.6e9)
    capture_io.write_capture(cap, tmp_path / "a.bin", tmp_path / "a.json")
    capture_io.write_capture(cap, tmp_path / "b.bin", tmp_path / "b.json")
    assert (tmp_path / "a.bin").read_bytes() == (tmp_path / "b.bin").read_bytes()
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
