"""Fixed-point digital beamformer: weight, sum, and truncate.

Each channel's real IF codes are multiplied by a per-channel complex weight
(signed 12-bit Q1.11 components) and the channels are summed:

    acc[p] = sum_i s_i[p] * (re_i + j*im_i)

The accumulator is exact; its width for N channels is

    12 + 12 + ceil(log2 N) + 1   (24-bit product, log2(N) sum growth, guard)

The 20-bit output is a plain bit-slice [lsb_offset+19 : lsb_offset] of that
accumulator, reinterpreted as signed -- a wrap, not a saturation, matching a
register-configured hardware window.  Whenever the discarded MSBs are not a
pure sign extension the per-capture overflow counter is bumped, so silent
wraps are visible.  The default window is MSB-aligned (lsb_offset =
accumulator_width - 20), which provably cannot overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .adc_model import ChannelFrame
from .array_signal import ArrayConfig, SteeringVector, steering_vector
from .errors import ValidationError
from .fixedpoint import fits_signed, round_half_away, wrap_to_signed

WEIGHT_BITS = 12
WEIGHT_SCALE = 2047  # +1.0 maps to 2047 so unit phasors stay representable
OUTPUT_BITS = 20


@dataclass(frozen=True)
class ComplexWeightSet:
    """Per-channel complex multipliers, signed 12-bit per component.

    These are the values the hardware multiplies the channel samples by
    (the e^{j*phi_i} registers).  Magnitudes are <= 2047, i.e. Q1.11 with
    +1.0 = 2047/2048ths of full scale.
    """

    re: np.ndarray = field(repr=False)  # (N,) int64
    im: np.ndarray = field(repr=False)  # (N,) int64

    def __post_init__(self):
        re = np.asarray(self.re, dtype=np.int64)
        im = np.asarray(self.im, dtype=np.int64)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)
        if re.shape != im.shape or re.ndim != 1:
            raise ValidationError("re and im must be equal-length vectors")
        if not (fits_signed(re, WEIGHT_BITS).all() and fits_signed(im, WEIGHT_BITS).all()):
            raise ValidationError("weight components exceed the 12-bit range")

    @property
    def num_channels(self) -> int:
        return len(self.re)

    def dequantize(self) -> np.ndarray:
        """Back to complex floats with the Q1.11 scale removed."""
        return (self.re + 1j * self.im) / WEIGHT_SCALE

    def to_json(self) -> list[list[int]]:
        return [[int(r), int(i)] for r, i in zip(self.re, self.im)]

    @classmethod
    def from_json(cls, pairs: list[list[int]]) -> "ComplexWeightSet":
        arr = np.asarray(pairs, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValidationError("weights JSON must be a list of [re, im] pairs")
        return cls(re=arr[:, 0], im=arr[:, 1])


@dataclass(frozen=True)
class TruncationWindow:
    """The configurable 20-bit slice of the beamformer accumulator."""

    accumulator_width: int
    lsb_offset: int
    width: int = OUTPUT_BITS

    def __post_init__(self):
        if self.lsb_offset < 0:
            raise ValidationError("lsb_offset must be >= 0")
        if self.lsb_offset + self.width > self.accumulator_width:
            raise ValidationError("window extends past the accumulator MSB")

    @classmethod
    def for_channels(cls, num_channels: int, lsb_offset: int | None = None) -> "TruncationWindow":
        """Default MSB-aligned window for an N-channel accumulator."""
        acc = 2 * WEIGHT_BITS + max(0, math.ceil(math.log2(num_channels))) + 1
        if lsb_offset is None:
            lsb_offset = acc - OUTPUT_BITS
        return cls(accumulator_width=acc, lsb_offset=lsb_offset)


@dataclass(frozen=True)
class IqFrame:
    """P parallel complex samples at a declared signed bit width."""

    i: np.ndarray = field(repr=False)  # (P,) int64
    q: np.ndarray = field(repr=False)  # (P,) int64
    bit_width: int = OUTPUT_BITS
    frame_index: int = 0

    def __post_init__(self):
        i = np.asarray(self.i, dtype=np.int64)
        q = np.asarray(self.q, dtype=np.int64)
        object.__setattr__(self, "i", i)
        object.__setattr__(self, "q", q)
        if i.shape != q.shape or i.ndim != 1:
            raise ValidationError("i and q must be equal-length vectors")
        if not (fits_signed(i, self.bit_width).all() and fits_signed(q, self.bit_width).all()):
            raise ValidationError(f"values exceed the declared {self.bit_width}-bit range")


@dataclass
class ChainDiagnostics:
    """Per-capture event and operation counters, carried through a run."""

    beamformer_window_overflows: int = 0
    final_window_overflows: int = 0  # standard chain's output window
    ddc_saturations: int = 0
    beamformer_mults: int = 0
    beamformer_adds: int = 0
    fir_mults: int = 0
    fir_adds: int = 0

    def as_dict(self) -> dict:
        return dict(vars(self))


def quantize_weights(sv: SteeringVector) -> ComplexWeightSet:
    """Round unit phasors to 12-bit signed components (scale 2047)."""
    re = round_half_away(np.real(sv.phasors) * WEIGHT_SCALE)
    im = round_half_away(np.imag(sv.phasors) * WEIGHT_SCALE)
    return ComplexWeightSet(re=re, im=im)


def steering_weights(cfg: ArrayConfig, theta: float) -> ComplexWeightSet:
    """Quantized weights that point the beam at `theta`.

    The applied multiplier must undo the arrival phase -jwc*tau_n, so it is
    the conjugate of the steering vector: e^{+j*wc*tau_n}.  With these
    weights the quarter-rate mixer (which keeps the positive-frequency
    sideband) sees the channels coherently summed.
    """
    return quantize_weights(steering_vector(cfg, theta).conjugate())


def beamform_stream(
    codes: np.ndarray,
    weights: ComplexWeightSet,
    window: TruncationWindow,
    diag: ChainDiagnostics | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Beamform an (N, K) code block into 20-bit I/Q streams of length K.

    Exact int64 arithmetic; the bit-slice and overflow accounting are as
    described in the module docstring.
    """
    codes = np.asarray(codes, dtype=np.int64)
    if codes.ndim != 2 or codes.shape[0] != weights.num_channels:
        raise ValidationError(
            f"capture has {codes.shape[0]} channels, weight set has {weights.num_channels}"
        )

    acc_re = weights.re @ codes
    acc_im = weights.im @ codes
    shifted_re = acc_re >> window.lsb_offset
    shifted_im = acc_im >> window.lsb_offset
    out_i = wrap_to_signed(shifted_re, window.width)
    out_q = wrap_to_signed(shifted_im, window.width)

    if diag is not None:
        diag.beamformer_window_overflows += int(
            np.count_nonzero(out_i != shifted_re) + np.count_nonzero(out_q != shifted_im)
        )
        n, k = codes.shape
        diag.beamformer_mults += n * k * 2
        diag.beamformer_adds += (n - 1) * k * 2
    return out_i, out_q


def beamform_frame(
    frame: ChannelFrame,
    weights: ComplexWeightSet,
    window: TruncationWindow,
    diag: ChainDiagnostics | None = None,
) -> IqFrame:
    """Beamform one parallel frame (the hardware's per-tick operation)."""
    i, q = beamform_stream(frame.samples, weights, window, diag)
    return IqFrame(i=i, q=q, bit_width=window.width, frame_index=frame.frame_index)
