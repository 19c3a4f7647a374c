import numpy as np
import pytest

import dbfrx
from dbfrx.errors import ValidationError
from dbfrx.fixedpoint import fits_signed


def dtft_mag(coeffs, freq_fracs):
    """|H(e^{j2*pi*f})| evaluated densely: the frequency-response oracle."""
    k = np.arange(len(coeffs))
    return np.array(
        [abs(np.sum(coeffs * np.exp(-2j * np.pi * f * k))) for f in np.atleast_1d(freq_fracs)]
    )


def test_design_rectangular_is_normalized_sinc():
    fs = 1.6e9
    h = dbfrx.design_lowpass(64, fs / 4, fs, "rectangular")
    k = np.arange(64) - 31.5
    raw = 0.5 * np.sinc(0.5 * k)
    assert np.allclose(h, raw / raw.sum(), rtol=0, atol=1e-15)
    # center pair of the raw prototype is 0.5*sinc(+/-0.25)
    assert raw[31] == pytest.approx(0.5 * np.sinc(0.25), rel=1e-12)
    assert raw[32] == pytest.approx(0.5 * np.sinc(0.25), rel=1e-12)


def test_design_symmetry_and_dc_gain():
    for win in ("hamming", "blackman", "rectangular"):
        h = dbfrx.design_lowpass(64, 2e8, 1.6e9, win)
        assert np.array_equal(h, h[::-1])
        assert h.sum() == pytest.approx(1.0, rel=1e-12)


def test_design_hamming_stopband():
    # >= 50 dB rejection beyond 1.5x cutoff, checked with a dense DTFT oracle
    fs, cutoff = 1.6e9, 2e8
    h = dbfrx.design_lowpass(64, cutoff, fs, "hamming")
    stop = np.linspace(1.5 * cutoff / fs, 0.5, 400)
    mags = dtft_mag(h, stop)
    assert 20 * np.log10(mags.max()) < -50.0


def test_design_domain_errors():
    with pytest.raises(ValidationError):
        dbfrx.design_lowpass(64, 0.0, 1.6e9)
    with pytest.raises(ValidationError):
        dbfrx.design_lowpass(64, 9e8, 1.6e9)
    with pytest.raises(ValidationError):
        dbfrx.design_lowpass(64, 1e8, 1.6e9, "kaiser")


def test_quantize_coeffs_examples():
    assert list(dbfrx.quantize_coeffs([1.0])) == [511]
    assert list(dbfrx.quantize_coeffs([0.5, 1.0, 0.5])) == [256, 511, 256]
    with pytest.raises(ValidationError):
        dbfrx.quantize_coeffs([0.0, 0.0])


def test_quantize_coeffs_symmetry_exact():
    h = dbfrx.design_lowpass(64, 2e8, 1.6e9, "hamming")
    q = dbfrx.quantize_coeffs(h)
    assert np.array_equal(q, q[::-1])
    assert np.max(np.abs(q)) == 511
    # odd-length filters mirror around the center tap
    q3 = dbfrx.quantize_coeffs(dbfrx.design_lowpass(33, 2e8, 1.6e9, "hamming"))
    assert np.array_equal(q3, q3[::-1])


def fir_spec():
    return dbfrx.FirSpec.design()


def test_impulse_response_is_coefficients():
    spec = fir_spec()
    i_in = np.zeros(128, dtype=np.int64)
    i_in[0] = 1
    out_i, out_q = dbfrx.filter_stream(i_in, np.zeros_like(i_in), spec.coeffs_q)
    assert np.array_equal(out_i[:64], spec.coeffs_q)
    assert np.all(out_i[64:] == 0)
    assert np.all(out_q == 0)


def test_dc_gain():
    spec = fir_spec()
    k = 37
    i_in = np.full(256, k, dtype=np.int64)
    out_i, _ = dbfrx.filter_stream(i_in, np.zeros_like(i_in), spec.coeffs_q)
    assert np.all(out_i[63:] == k * spec.dc_gain_q)


def test_nyquist_rejection():
    # alternating +/-A input: steady state bounded by the stopband leakage
    spec = fir_spec()
    a = 2**19 - 1
    i_in = a * (-1) ** np.arange(256)
    out_i, _ = dbfrx.filter_stream(i_in.astype(np.int64), np.zeros(256, dtype=np.int64), spec.coeffs_q)
    steady = np.abs(out_i[63:])
    bound = a * 512 * 10 ** (-50 / 20)
    assert steady.max() < bound
    # cross-check against the DTFT oracle at Nyquist
    h_nyq = abs(np.sum(spec.coeffs_q * (-1.0) ** np.arange(64)))
    assert steady.max() == a * h_nyq


def test_bit_width_conservation_randomized():
    spec = fir_spec()
    rng = np.random.default_rng(21)
    i_in = rng.integers(-(2**19), 2**19, 20000)
    q_in = rng.integers(-(2**19), 2**19, 20000)
    out_i, out_q = dbfrx.filter_stream(i_in, q_in, spec.coeffs_q)
    assert fits_signed(out_i, 36).all()
    assert fits_signed(out_q, 36).all()


def test_rail_independence():
    spec = fir_spec()
    rng = np.random.default_rng(22)
    i_in = rng.integers(-1000, 1000, 512)
    q_in = rng.integers(-1000, 1000, 512)
    z = np.zeros(512, dtype=np.int64)
    i_only, _ = dbfrx.filter_stream(i_in, z, spec.coeffs_q)
    _, q_only = dbfrx.filter_stream(z, q_in, spec.coeffs_q)
    both_i, both_q = dbfrx.filter_stream(i_in, q_in, spec.coeffs_q)
    assert np.array_equal(both_i, i_only)
    assert np.array_equal(both_q, q_only)


def test_streaming_equals_one_shot():
    spec = fir_spec()
    rng = np.random.default_rng(23)
    i_in = rng.integers(-(2**19), 2**19, 1024)
    q_in = rng.integers(-(2**19), 2**19, 1024)
    one_i, one_q = dbfrx.filter_stream(i_in, q_in, spec.coeffs_q)

    state = dbfrx.FirState.zeros(spec.num_taps)
    outs_i, outs_q = [], []
    for k in range(0, 1024, 8):
        frame = dbfrx.IqFrame(i=i_in[k : k + 8], q=q_in[k : k + 8], bit_width=20, frame_index=k // 8)
        state, out = dbfrx.filter_frame(state, frame, spec)
        assert out.bit_width == 36
        outs_i.append(out.i)
        outs_q.append(out.q)
    assert np.array_equal(np.concatenate(outs_i), one_i)
    assert np.array_equal(np.concatenate(outs_q), one_q)


def test_filter_frame_operation_counters():
    spec = fir_spec()
    diag = dbfrx.ChainDiagnostics()
    state = dbfrx.FirState.zeros(spec.num_taps)
    frame = dbfrx.IqFrame(i=np.ones(8, dtype=np.int64), q=np.zeros(8, dtype=np.int64), bit_width=20)
    dbfrx.filter_frame(state, frame, spec, diag)
    assert diag.fir_mults == 64 * 8 * 2
    assert diag.fir_adds == 63 * 8 * 2


def test_filter_frame_requires_20_bit_input():
    spec = fir_spec()
    state = dbfrx.FirState.zeros(spec.num_taps)
    frame = dbfrx.IqFrame(i=np.zeros(8, dtype=np.int64), q=np.zeros(8, dtype=np.int64), bit_width=36)
    with pytest.raises(ValidationError):
        dbfrx.filter_frame(state, frame, spec)


def test_from_quantized_round_trip():
    spec = fir_spec()
    again = dbfrx.FirSpec.from_quantized([int(c) for c in spec.coeffs_q])
    assert np.array_equal(again.coeffs_q, spec.coeffs_q)
    assert again.coeffs_float.sum() == pytest.approx(1.0)
