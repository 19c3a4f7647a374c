import numpy as np
import pytest

import dbfrx
from dbfrx.ddc_fs4 import COS_SEQ, SIN_SEQ
from dbfrx.errors import ValidationError


def iq_frame(i, q, width=20, idx=0):
    return dbfrx.IqFrame(i=np.asarray(i), q=np.asarray(q), bit_width=width, frame_index=idx)


def mixing_oracle(i_in, q_in, start_phase=0):
    """Explicit exp(-j*pi*n/2) multiplication with the documented saturation."""
    n = (start_phase + np.arange(len(i_in))) % 4
    lo = np.array([1, -1j, -1, 1j])[n]
    z = (np.asarray(i_in, dtype=np.int64) + 1j * np.asarray(q_in, dtype=np.int64)) * lo
    i_out = np.minimum(z.real.astype(np.int64), 2**19 - 1)
    q_out = np.minimum(z.imag.astype(np.int64), 2**19 - 1)
    return i_out, q_out


def test_single_sample_at_phase_one():
    # y = (1, 2) at n=1: I' = 1*0 + 2*1 = 2; Q' = -1*1 + 2*0 = -1
    frame = iq_frame([1] + [0] * 7, [2] + [0] * 7)
    out, _ = dbfrx.ddc_frame(frame, dbfrx.DdcPhase(1))
    assert out.i[0] == 2 and out.q[0] == -1


def test_real_cosine_at_quarter_rate():
    a = 1000
    i_in = np.array([a, 0, -a, 0, a, 0, -a, 0])
    out, _ = dbfrx.ddc_frame(iq_frame(i_in, np.zeros(8)), dbfrx.DdcPhase(0))
    assert np.array_equal(out.i, [a, 0, a, 0, a, 0, a, 0])
    assert np.all(out.q == 0)
    assert out.i.mean() == a / 2  # low-pass mean lands at A/2


def test_zero_frame_advances_phase():
    frame = iq_frame(np.zeros(8), np.zeros(8))
    out, phase = dbfrx.ddc_frame(frame, dbfrx.DdcPhase(0))
    assert np.all(out.i == 0) and np.all(out.q == 0)
    assert phase.phase_index == 0  # advanced by 8 = 0 mod 4


def test_equivalence_to_explicit_mixing():
    rng = np.random.default_rng(11)
    i_in = rng.integers(-(2**19), 2**19, 4096)
    q_in = rng.integers(-(2**19), 2**19, 4096)
    for start in range(4):
        got_i, got_q, _ = dbfrx.mix_quarter_rate(i_in, q_in, dbfrx.DdcPhase(start), 20)
        exp_i, exp_q = mixing_oracle(i_in, q_in, start)
        assert np.array_equal(got_i, exp_i)
        assert np.array_equal(got_q, exp_q)


def test_no_bit_growth():
    rng = np.random.default_rng(12)
    i_in = rng.integers(-(2**19) + 1, 2**19, 4096)
    q_in = rng.integers(-(2**19) + 1, 2**19, 4096)
    got_i, got_q, _ = dbfrx.mix_quarter_rate(i_in, q_in, dbfrx.DdcPhase(0), 20)
    assert np.max(np.abs(got_i)) <= max(np.abs(i_in).max(), np.abs(q_in).max())
    assert np.max(np.abs(got_q)) <= max(np.abs(i_in).max(), np.abs(q_in).max())


def test_period_four_phase_shift():
    rng = np.random.default_rng(13)
    i_in = rng.integers(-1000, 1000, 64)
    q_in = rng.integers(-1000, 1000, 64)
    a_i, a_q, _ = dbfrx.mix_quarter_rate(i_in, q_in, dbfrx.DdcPhase(0), 20)
    # shifting input by 4 samples and phase by 4 (i.e. not at all) matches
    b_i, b_q, _ = dbfrx.mix_quarter_rate(i_in[4:], q_in[4:], dbfrx.DdcPhase(0), 20)
    assert np.array_equal(a_i[4:], b_i)
    assert np.array_equal(a_q[4:], b_q)


def test_saturation_of_minimum_code():
    diag = dbfrx.ChainDiagnostics()
    # at n=2 the cos sequence is -1: I' = -(-2^19) which saturates
    i_in = np.array([0, 0, -(2**19), 0, 0, 0, 0, 0])
    out, _ = dbfrx.ddc_frame(iq_frame(i_in, np.zeros(8)), dbfrx.DdcPhase(0), diag)
    assert out.i[2] == 2**19 - 1
    assert diag.ddc_saturations == 1


def test_phase_carried_across_frames():
    rng = np.random.default_rng(14)
    i_in = rng.integers(-1000, 1000, 32)
    q_in = rng.integers(-1000, 1000, 32)
    one_i, one_q, _ = dbfrx.mix_quarter_rate(i_in, q_in, dbfrx.DdcPhase(0), 20)

    phase = dbfrx.DdcPhase(0)
    outs = []
    for k in range(4):
        frame = iq_frame(i_in[k * 8 : k * 8 + 8], q_in[k * 8 : k * 8 + 8], idx=k)
        out, phase = dbfrx.ddc_frame(frame, phase)
        outs.append(out)
    assert np.array_equal(np.concatenate([o.i for o in outs]), one_i)
    assert np.array_equal(np.concatenate([o.q for o in outs]), one_q)


def test_ddc_frame_requires_20_bit_input():
    frame = iq_frame(np.zeros(8), np.zeros(8), width=12)
    with pytest.raises(ValidationError):
        dbfrx.ddc_frame(frame, dbfrx.DdcPhase(0))
    with pytest.raises(ValidationError):
        dbfrx.DdcPhase(4)


def test_sequences_are_the_documented_ones():
    assert list(COS_SEQ) == [1, 0, -1, 0]
    assert list(SIN_SEQ) == [0, 1, 0, -1]
