"""Design, quantization, and streaming application of the low-pass FIR.

The prototype is a windowed sinc, symmetric (linear phase), normalized to
unity DC gain, then scaled so the largest tap hits the top 10-bit code (511)
and rounded half-away-from-zero.  Symmetry survives quantization exactly
because only one half is rounded and then mirrored.

Applied to the I and Q rails independently with identical taps, in exact
integer arithmetic.  Output growth is 20 + 10 + log2(64) = 36 bits and is
provably safe: 2^19 * 511 * 64 < 2^35, so the 36-bit output never wraps and
nothing is rounded or discarded after the accumulator.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dbf_core import ChainDiagnostics, IqFrame
from .errors import ValidationError
from .fixedpoint import fits_signed, round_half_away

DESIGN_WINDOWS = ("hamming", "blackman", "rectangular")
OUTPUT_BITS = 36
INPUT_BITS = 20


def design_lowpass(
    num_taps: int,
    cutoff_hz: float,
    fs_hz: float,
    design_window: str = "hamming",
) -> np.ndarray:
    """Windowed-sinc low-pass prototype, unity DC gain, float64 taps."""
    if num_taps < 1:
        raise ValidationError("num_taps must be >= 1")
    if not 0 < cutoff_hz < fs_hz / 2:
        raise ValidationError("cutoff_hz must lie in (0, fs/2)")
    if design_window not in DESIGN_WINDOWS:
        raise ValidationError(f"unknown design window {design_window!r}")

    mid = (num_taps - 1) / 2.0
    k = np.arange(num_taps) - mid
    frac = 2.0 * cutoff_hz / fs_hz
    h = frac * np.sinc(frac * k)
    if design_window == "hamming":
        h *= np.hamming(num_taps)
    elif design_window == "blackman":
        h *= np.blackman(num_taps)
    return h / h.sum()


def quantize_coeffs(coeffs: np.ndarray, coeff_bits: int = 10) -> np.ndarray:
    """Scale so max|coeff| -> top code, round half away, mirror for symmetry."""
    coeffs = np.asarray(coeffs, dtype=np.float64)
    if coeffs.size == 0 or not np.any(coeffs):
        raise ValidationError("cannot quantize empty or all-zero coefficients")
    top = 2 ** (coeff_bits - 1) - 1
    scaled = coeffs * (top / np.max(np.abs(coeffs)))

    n = len(coeffs)
    half = (n + 1) // 2
    q = np.empty(n, dtype=np.int64)
    q[:half] = round_half_away(scaled[:half])
    q[n - half :] = q[:half][::-1]  # exact linear-phase symmetry
    if not fits_signed(q, coeff_bits).all():
        raise ValidationError("quantized coefficients exceed the coefficient width")
    return q


@dataclass(frozen=True)
class FirSpec:
    """Filter parameters plus the quantized (and float prototype) taps."""

    num_taps: int = 64
    coeff_bits: int = 10
    cutoff_hz: float = 2.0e8
    design_window: str = "hamming"
    coeffs_q: np.ndarray = field(default=None, repr=False)
    coeffs_float: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        if self.coeffs_q is None or self.coeffs_float is None:
            raise ValidationError("use FirSpec.design() or FirSpec.from_quantized()")
        object.__setattr__(self, "coeffs_q", np.asarray(self.coeffs_q, dtype=np.int64))
        object.__setattr__(self, "coeffs_float", np.asarray(self.coeffs_float, dtype=np.float64))
        if len(self.coeffs_q) != self.num_taps or len(self.coeffs_float) != self.num_taps:
            raise ValidationError("coefficient vectors must have num_taps entries")
        if not np.array_equal(self.coeffs_q, self.coeffs_q[::-1]):
            raise ValidationError("quantized coefficients must be symmetric")

    @classmethod
    def design(
        cls,
        num_taps: int = 64,
        coeff_bits: int = 10,
        cutoff_hz: float = 2.0e8,
        fs_hz: float = 1.6e9,
        design_window: str = "hamming",
    ) -> "FirSpec":
        h = design_lowpass(num_taps, cutoff_hz, fs_hz, design_window)
        return cls(
            num_taps=num_taps,
            coeff_bits=coeff_bits,
            cutoff_hz=cutoff_hz,
            design_window=design_window,
            coeffs_q=quantize_coeffs(h, coeff_bits),
            coeffs_float=h,
        )

    @classmethod
    def from_quantized(
        cls,
        coeffs_q,
        coeff_bits: int = 10,
        cutoff_hz: float = 2.0e8,
        design_window: str = "hamming",
    ) -> "FirSpec":
        """Wrap externally supplied integer taps (JSON import path).

        The float prototype is reconstructed by normalizing the integer taps
        to unity DC gain; it is the best available stand-in for oracle runs.
        """
        q = np.asarray(coeffs_q, dtype=np.int64)
        if q.sum() == 0:
            raise ValidationError("integer taps must have nonzero DC gain")
        return cls(
            num_taps=len(q),
            coeff_bits=coeff_bits,
            cutoff_hz=cutoff_hz,
            design_window=design_window,
            coeffs_q=q,
            coeffs_float=q / q.sum(),
        )

    @property
    def dc_gain_q(self) -> int:
        return int(self.coeffs_q.sum())


@dataclass
class FirState:
    """Delay lines: the num_taps-1 most recent input samples per rail."""

    i: np.ndarray
    q: np.ndarray

    @classmethod
    def zeros(cls, num_taps: int) -> "FirState":
        return cls(i=np.zeros(num_taps - 1, dtype=np.int64), q=np.zeros(num_taps - 1, dtype=np.int64))


def filter_stream(
    i_in: np.ndarray,
    q_in: np.ndarray,
    coeffs: np.ndarray,
    diag: ChainDiagnostics | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """One-shot causal convolution of whole rails (zero initial state).

    y[k] = sum_j h[j] * x[k-j]; output length equals input length.  Exact for
    int64 inputs/taps; also usable with float rails for the oracle chains.
    """
    i_in = np.asarray(i_in)
    q_in = np.asarray(q_in)
    i_out = np.convolve(i_in, coeffs)[: len(i_in)]
    q_out = np.convolve(q_in, coeffs)[: len(q_in)]
    if diag is not None:
        taps, k = len(coeffs), len(i_in)
        diag.fir_mults += taps * k * 2
        diag.fir_adds += (taps - 1) * k * 2
    return i_out, q_out


def filter_frame(
    state: FirState,
    frame: IqFrame,
    spec: FirSpec,
    diag: ChainDiagnostics | None = None,
) -> tuple[FirState, IqFrame]:
    """Filter one frame, carrying the delay line across calls."""
    if frame.bit_width != INPUT_BITS:
        raise ValidationError("filter_frame expects 20-bit down-converted input")
    h = spec.coeffs_q
    buf_i = np.concatenate([state.i, frame.i])
    buf_q = np.concatenate([state.q, frame.q])
    out_i = np.convolve(buf_i, h, mode="valid")
    out_q = np.convolve(buf_q, h, mode="valid")
    if diag is not None:
        p = len(frame.i)
        diag.fir_mults += spec.num_taps * p * 2
        diag.fir_adds += (spec.num_taps - 1) * p * 2
    next_state = FirState(i=buf_i[len(frame.i) :], q=buf_q[len(frame.q) :])
    out = IqFrame(i=out_i, q=out_q, bit_width=OUTPUT_BITS, frame_index=frame.frame_index)
    return next_state, out
