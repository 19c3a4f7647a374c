"""End-to-end receiver pipelines: proposed, standard, and float oracles.

proposed  (beamform first):   weight+sum -> quarter-rate DDC -> FIR
standard  (per-channel DDC):  per-channel DDC -> per-channel FIR
                              -> complex-weight multiply -> channel sum

Both are implemented twice: bit-true fixed point, and a double-precision
oracle with unquantized weights and taps.  All four share one dataflow per
architecture; the float oracles exist so that architecture equivalence and
quantization error can each be measured in isolation.

Fixed-point stage widths:

  proposed: 12b codes -> 27b accumulator -> 20b window -> DDC (20b)
            -> 36b FIR output
  standard: 12b codes -> per-channel DDC (12b) -> per-channel FIR (28b)
            -> complex weight multiply + sum (42b) -> output window (36b)

The standard chain's output window reuses the proposed chain's lsb_offset, so
both architectures emit samples on the same numeric scale and can be
subtracted directly.  The first num_taps-1 output samples are filter warm-up
and are flagged for exclusion from steady-state comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .adc_model import Capture
from .array_signal import ArrayConfig, steering_vector
from .dbf_core import (
    WEIGHT_SCALE,
    ChainDiagnostics,
    ComplexWeightSet,
    IqFrame,
    TruncationWindow,
    beamform_stream,
    quantize_weights,
)
from .ddc_fs4 import DdcPhase, mix_quarter_rate
from .errors import ValidationError
from .fixedpoint import wrap_to_signed
from .fir import FirSpec, filter_stream
from .frequency_plan import nyquist_zone

ARCHITECTURES = ("proposed", "standard")
ARITHMETICS = ("fixed", "float")

STANDARD_DDC_BITS = 12
STANDARD_FIR_BITS = 28
OUTPUT_BITS = 36

# Exact quarter-rate LO: exp(-j*pi*n/2) for n = 0..3, no trig rounding.
_LO = np.array([1, -1j, -1, 1j], dtype=np.complex128)


@dataclass(frozen=True)
class PipelineConfig:
    """Everything a run needs besides the capture itself."""

    architecture: str
    arithmetic: str
    array: ArrayConfig
    weights: ComplexWeightSet
    weights_float: np.ndarray = field(repr=False)  # (N,) complex applied multipliers
    window: TruncationWindow = None
    fir: FirSpec = None

    def __post_init__(self):
        if self.architecture not in ARCHITECTURES:
            raise ValidationError(f"unknown architecture {self.architecture!r}")
        if self.arithmetic not in ARITHMETICS:
            raise ValidationError(f"unknown arithmetic {self.arithmetic!r}")
        wf = np.asarray(self.weights_float, dtype=np.complex128)
        object.__setattr__(self, "weights_float", wf)
        if len(wf) != self.weights.num_channels:
            raise ValidationError("weights_float and weights must have equal length")
        if self.window is None:
            object.__setattr__(
                self, "window", TruncationWindow.for_channels(self.weights.num_channels)
            )
        if self.fir is None:
            object.__setattr__(self, "fir", FirSpec.design())


def steered_pipeline(
    array: ArrayConfig,
    steer_theta: float,
    architecture: str = "proposed",
    arithmetic: str = "fixed",
    lsb_offset: int | None = None,
    fir: FirSpec | None = None,
) -> PipelineConfig:
    """Pipeline pointed at `steer_theta`: applied weights = conj(steering)."""
    applied = steering_vector(array, steer_theta).conjugate()
    return PipelineConfig(
        architecture=architecture,
        arithmetic=arithmetic,
        array=array,
        weights=quantize_weights(applied),
        weights_float=applied.phasors,
        window=TruncationWindow.for_channels(array.num_elements, lsb_offset),
        fir=fir,
    )


@dataclass
class RunResult:
    """Baseband output of one pipeline run plus its bookkeeping."""

    architecture: str
    arithmetic: str
    i: np.ndarray
    q: np.ndarray
    bit_width: int | None
    warmup: int
    fs_hz: float
    diagnostics: ChainDiagnostics
    stage_bits: dict
    nominal_scale: float

    @property
    def z(self) -> np.ndarray:
        return self.i + 1j * self.q

    def steady_state(self) -> np.ndarray:
        return self.z[self.warmup :]

    def iq_frames(self, parallel: int = 8) -> Iterator[IqFrame]:
        for idx in range(len(self.i) // parallel):
            lo = idx * parallel
            yield IqFrame(
                i=self.i[lo : lo + parallel],
                q=self.q[lo : lo + parallel],
                bit_width=self.bit_width or OUTPUT_BITS,
                frame_index=idx,
            )


def _validate(cap: Capture, cfg: PipelineConfig) -> None:
    if cap.num_channels != cfg.weights.num_channels:
        raise ValidationError(
            f"capture has {cap.num_channels} channels, config expects "
            f"{cfg.weights.num_channels}"
        )
    # The multiplier-free mixer only works when the carrier aliases to fs/4.
    plan = nyquist_zone(cfg.array.carrier_hz, cap.fs_hz)
    target = cap.fs_hz / 4.0
    if abs(plan.alias_if_hz - target) > 1e-9 * cap.fs_hz:
        raise ValidationError(
            f"carrier aliases to {plan.alias_if_hz:g} Hz, not fs/4 = {target:g} Hz; "
            "the quarter-rate DDC requires fs = 4*IF"
        )


def _nominal_scale(cfg: PipelineConfig) -> float:
    """Fixed-output amplitude per unit float-oracle output."""
    return WEIGHT_SCALE * 2.0 ** (-cfg.window.lsb_offset) * cfg.fir.dc_gain_q


def run_proposed(cap: Capture, cfg: PipelineConfig) -> RunResult:
    """Fixed-point beamform-first chain."""
    _validate(cap, cfg)
    diag = ChainDiagnostics()
    bf_i, bf_q = beamform_stream(cap.codes, cfg.weights, cfg.window, diag)
    dd_i, dd_q, _ = mix_quarter_rate(bf_i, bf_q, DdcPhase(0), cfg.window.width, diag)
    out_i, out_q = filter_stream(dd_i, dd_q, cfg.fir.coeffs_q, diag)
    return RunResult(
        architecture="proposed",
        arithmetic="fixed",
        i=out_i,
        q=out_q,
        bit_width=OUTPUT_BITS,
        warmup=cfg.fir.num_taps - 1,
        fs_hz=cap.fs_hz,
        diagnostics=diag,
        stage_bits={
            "beamformer_accumulator": cfg.window.accumulator_width,
            "beamformer_output": cfg.window.width,
            "ddc_output": cfg.window.width,
            "fir_output": OUTPUT_BITS,
        },
        nominal_scale=_nominal_scale(cfg),
    )


def run_standard(cap: Capture, cfg: PipelineConfig) -> RunResult:
    """Fixed-point conventional chain: DDC and FIR on every channel."""
    _validate(cap, cfg)
    diag = ChainDiagnostics()
    n_ch, k = cap.codes.shape

    fir_i = np.empty((n_ch, k), dtype=np.int64)
    fir_q = np.empty((n_ch, k), dtype=np.int64)
    zeros = np.zeros(k, dtype=np.int64)
    for ch in range(n_ch):
        dd_i, dd_q, _ = mix_quarter_rate(
            cap.codes[ch], zeros, DdcPhase(0), STANDARD_DDC_BITS, diag
        )
        fir_i[ch], fir_q[ch] = filter_stream(dd_i, dd_q, cfg.fir.coeffs_q, diag)

    # Complex x complex weight multiply, then channel sum (exact int64).
    w_re, w_im = cfg.weights.re, cfg.weights.im
    acc_re = w_re @ fir_i - w_im @ fir_q
    acc_im = w_im @ fir_i + w_re @ fir_q
    diag.beamformer_mults += n_ch * k * 4
    diag.beamformer_adds += n_ch * k * 2 + (n_ch - 1) * k * 2

    shift_re = acc_re >> cfg.window.lsb_offset
    shift_im = acc_im >> cfg.window.lsb_offset
    out_i = wrap_to_signed(shift_re, OUTPUT_BITS)
    out_q = wrap_to_signed(shift_im, OUTPUT_BITS)
    diag.final_window_overflows += int(
        np.count_nonzero(out_i != shift_re) + np.count_nonzero(out_q != shift_im)
    )

    return RunResult(
        architecture="standard",
        arithmetic="fixed",
        i=out_i,
        q=out_q,
        bit_width=OUTPUT_BITS,
        warmup=cfg.fir.num_taps - 1,
        fs_hz=cap.fs_hz,
        diagnostics=diag,
        stage_bits={
            "ddc_output": STANDARD_DDC_BITS,
            "fir_output": STANDARD_FIR_BITS,
            "beamformer_accumulator": STANDARD_FIR_BITS + 12 + 2,
            "output_window": OUTPUT_BITS,
        },
        nominal_scale=_nominal_scale(cfg),
    )


def run_float_oracle(cap: Capture, cfg: PipelineConfig) -> RunResult:
    """Double-precision run of the selected architecture.

    Same dataflow as the fixed chain, but: unit-magnitude complex weights,
    float prototype taps, no truncation anywhere.  The LO values are the
    exact constants {1, -j, -1, j}, so the mixer itself introduces no
    rounding.
    """
    _validate(cap, cfg)
    diag = ChainDiagnostics()
    codes = cap.codes.astype(np.float64)
    k = cap.num_samples
    lo = _LO[np.arange(k) % 4]
    h = cfg.fir.coeffs_float

    if cfg.architecture == "proposed":
        beam = cfg.weights_float @ codes
        mixed = beam * lo
        out = np.convolve(mixed, h)[:k]
    else:
        out = np.zeros(k, dtype=np.complex128)
        for ch in range(cap.num_channels):
            mixed = codes[ch] * lo
            out += cfg.weights_float[ch] * np.convolve(mixed, h)[:k]

    return RunResult(
        architecture=cfg.architecture,
        arithmetic="float",
        i=out.real,
        q=out.imag,
        bit_width=None,
        warmup=cfg.fir.num_taps - 1,
        fs_hz=cap.fs_hz,
        diagnostics=diag,
        stage_bits={},
        nominal_scale=1.0,
    )


def run(cap: Capture, cfg: PipelineConfig) -> RunResult:
    """Dispatch on (architecture, arithmetic)."""
    if cfg.arithmetic == "float":
        return run_float_oracle(cap, cfg)
    if cfg.architecture == "proposed":
        return run_proposed(cap, cfg)
    return run_standard(cap, cfg)
