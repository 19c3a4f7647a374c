"""Model of the quad-channel 12-bit 1.6 GSps ADC front end.

The converter is modelled as an ideal mid-tread quantizer: round to the
nearest code (ties away from zero) with full scale 1.0 mapping to code 2048,
then clipped to the signed 12-bit range [-2048, 2047].  Mid-tread keeps 0.0
exactly representable, which matters for the all-zero test patterns.

Each channel's codes are delivered 8 at a time ("parallel factor" P), mirroring
a deserialized link that runs the downstream fabric at fs/P = 200 MHz.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .errors import ValidationError
from .fixedpoint import clamp, round_half_away

ADC_BITS = 12
PARALLEL_FACTOR = 8
CODE_MIN = -2048
CODE_MAX = 2047


@dataclass(frozen=True)
class AdcConfig:
    """Converter settings.  bits and parallel_factor are fixed by the part.

    frontend_curve, when given, is a list of (frequency_hz, attenuation_db)
    points describing the analog input rolloff; the attenuation at the signal
    carrier is looked up by linear interpolation in dB and applied as a flat
    gain before quantization.  Default is a flat response.
    """

    fs_hz: float = 1.6e9
    bits: int = ADC_BITS
    fullscale: float = 1.0
    parallel_factor: int = PARALLEL_FACTOR
    frontend_curve: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self):
        if self.fs_hz <= 0:
            raise ValidationError("fs_hz must be > 0")
        if self.bits != ADC_BITS:
            raise ValidationError("the modelled converter is 12-bit only")
        if self.parallel_factor != PARALLEL_FACTOR:
            raise ValidationError("the modelled link delivers 8 samples per frame")
        if self.fullscale <= 0:
            raise ValidationError("fullscale must be > 0")
        if self.frontend_curve is not None:
            pts = tuple((float(f), float(a)) for f, a in self.frontend_curve)
            if len(pts) < 2:
                raise ValidationError("frontend_curve needs at least 2 points")
            freqs = [f for f, _ in pts]
            if sorted(freqs) != freqs:
                raise ValidationError("frontend_curve frequencies must be ascending")
            object.__setattr__(self, "frontend_curve", pts)

    @property
    def frame_clock_hz(self) -> float:
        return self.fs_hz / self.parallel_factor

    def frontend_attenuation_db(self, carrier_hz: float) -> float:
        if self.frontend_curve is None:
            return 0.0
        freqs = np.array([f for f, _ in self.frontend_curve])
        atten = np.array([a for _, a in self.frontend_curve])
        return float(np.interp(carrier_hz, freqs, atten))


@dataclass(frozen=True)
class ChannelFrame:
    """One 200 MHz tick: N channels x P parallel signed 12-bit codes."""

    samples: np.ndarray = field(repr=False)  # (N, P) int64
    frame_index: int = 0

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=np.int64)
        object.__setattr__(self, "samples", s)
        if s.ndim != 2 or s.shape[1] != PARALLEL_FACTOR:
            raise ValidationError(f"frame must be (N, {PARALLEL_FACTOR})")
        if s.min(initial=0) < CODE_MIN or s.max(initial=0) > CODE_MAX:
            raise ValidationError("frame contains codes outside the 12-bit range")

    @property
    def num_channels(self) -> int:
        return self.samples.shape[0]


@dataclass(frozen=True)
class Capture:
    """A full ADC record: (N, K) codes plus framing metadata.

    K is always a multiple of the parallel factor; short tails are zero-padded
    and the pad length recorded so downstream stages never special-case.
    """

    codes: np.ndarray = field(repr=False)  # (N, K) int64
    fs_hz: float = 1.6e9
    padded_samples: int = 0

    def __post_init__(self):
        c = np.asarray(self.codes, dtype=np.int64)
        object.__setattr__(self, "codes", c)
        if c.ndim != 2:
            raise ValidationError("codes must be (N, K)")
        if c.shape[1] % PARALLEL_FACTOR != 0:
            raise ValidationError("capture length must be a multiple of 8")

    @property
    def num_channels(self) -> int:
        return self.codes.shape[0]

    @property
    def num_samples(self) -> int:
        return self.codes.shape[1]

    @property
    def num_frames(self) -> int:
        return self.codes.shape[1] // PARALLEL_FACTOR

    def frames(self) -> Iterator[ChannelFrame]:
        for idx in range(self.num_frames):
            lo = idx * PARALLEL_FACTOR
            yield ChannelFrame(self.codes[:, lo : lo + PARALLEL_FACTOR], frame_index=idx)


def quantize(value, cfg: AdcConfig | None = None):
    """Quantize full-scale-fraction values to signed 12-bit codes.

    Mid-tread: code = round(value * 2048), ties away from zero, clipped to
    [-2048, 2047].  Accepts scalars or arrays; NaN raises.
    """
    cfg = cfg or AdcConfig()
    scale = 2 ** (cfg.bits - 1)
    codes = clamp(round_half_away(np.asarray(value) / cfg.fullscale * scale), cfg.bits)
    if np.isscalar(value):
        return int(codes)
    return codes


def capture(
    streams: Sequence[np.ndarray] | np.ndarray,
    cfg: AdcConfig | None = None,
    carrier_hz: float | None = None,
) -> Capture:
    """Digitize N analog streams into a framed capture.

    Applies the front-end attenuation for `carrier_hz` (if a curve is
    configured), quantizes every sample, and zero-pads the tail up to a whole
    frame.  All streams must have equal length.
    """
    cfg = cfg or AdcConfig()
    try:
        arr = np.asarray(streams, dtype=np.float64)
    except ValueError as exc:
        raise ValidationError("streams must all have equal length") from exc
    if arr.ndim == 1:
        arr = arr[np.newaxis, :]
    if arr.ndim != 2:
        raise ValidationError("streams must be a list of equal-length 1-D arrays")

    if cfg.frontend_curve is not None:
        if carrier_hz is None:
            raise ValidationError("carrier_hz is required when frontend_curve is set")
        arr = arr * 10.0 ** (-cfg.frontend_attenuation_db(carrier_hz) / 20.0)

    pad = (-arr.shape[1]) % cfg.parallel_factor
    codes = quantize(arr, cfg)
    if pad:
        codes = np.pad(codes, ((0, 0), (0, pad)))
    return Capture(codes=codes, fs_hz=cfg.fs_hz, padded_samples=pad)
