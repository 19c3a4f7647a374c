"""Quarter-rate complex down-conversion with no multipliers.

With the intermediate frequency pinned at fs/4, the local-oscillator samples
collapse to the four-element sequences

    cos(pi*n/2) = 1, 0, -1, 0        sin(pi*n/2) = 0, 1, 0, -1

so the mixer

    I'[n] =  Re(y[n])*cos(pi*n/2) + Im(y[n])*sin(pi*n/2)
    Q'[n] = -Re(y[n])*sin(pi*n/2) + Im(y[n])*cos(pi*n/2)

is pure selection and sign inversion -- exactly multiplication by
exp(-j*pi*n/2), in integer arithmetic, with no rounding and no bit growth.

n is the global sample index; the phase (n mod 4) is carried explicitly
across frames so a capture processed frame-by-frame is identical to one
contiguous stream.  The single edge case is negating the most negative code,
whose true magnitude is unrepresentable: it saturates to the positive maximum
and bumps a diagnostic counter (with the MSB-aligned beamformer window it can
never fire).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dbf_core import ChainDiagnostics, IqFrame
from .errors import ValidationError
from .fixedpoint import signed_max, signed_min

COS_SEQ = np.array([1, 0, -1, 0], dtype=np.int64)
SIN_SEQ = np.array([0, 1, 0, -1], dtype=np.int64)


@dataclass(frozen=True)
class DdcPhase:
    """Mixer phase state: sample k of the stream uses phase k mod 4."""

    phase_index: int = 0

    def __post_init__(self):
        if self.phase_index not in (0, 1, 2, 3):
            raise ValidationError("phase_index must be in {0, 1, 2, 3}")

    def advanced(self, num_samples: int) -> "DdcPhase":
        return DdcPhase((self.phase_index + num_samples) % 4)


def mix_quarter_rate(
    i_in: np.ndarray,
    q_in: np.ndarray,
    phase: DdcPhase,
    bit_width: int,
    diag: ChainDiagnostics | None = None,
) -> tuple[np.ndarray, np.ndarray, DdcPhase]:
    """Apply the sign-sequence mixer to int64 I/Q streams of any length."""
    i_in = np.asarray(i_in, dtype=np.int64)
    q_in = np.asarray(q_in, dtype=np.int64)
    n = (phase.phase_index + np.arange(len(i_in))) % 4
    c = COS_SEQ[n]
    s = SIN_SEQ[n]
    i_out = i_in * c + q_in * s
    q_out = q_in * c - i_in * s

    # Negating signed_min(bit_width) is the only way to leave the range.
    top = signed_max(bit_width)
    overflow = np.count_nonzero(i_out > top) + np.count_nonzero(q_out > top)
    if overflow:
        i_out = np.minimum(i_out, top)
        q_out = np.minimum(q_out, top)
    if diag is not None:
        diag.ddc_saturations += int(overflow)
    assert i_out.min(initial=0) >= signed_min(bit_width)
    return i_out, q_out, phase.advanced(len(i_in))


def ddc_frame(
    frame: IqFrame,
    phase: DdcPhase,
    diag: ChainDiagnostics | None = None,
) -> tuple[IqFrame, DdcPhase]:
    """Down-convert one 20-bit frame; returns the frame and advanced phase."""
    if frame.bit_width != 20:
        raise ValidationError("ddc_frame expects 20-bit beamformer output")
    i, q, next_phase = mix_quarter_rate(frame.i, frame.q, phase, frame.bit_width, diag)
    out = IqFrame(i=i, q=q, bit_width=frame.bit_width, frame_index=frame.frame_index)
    return out, next_phase
