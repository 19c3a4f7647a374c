"""Plane-wave signal synthesis for a uniform linear array.

A far-field source at angle theta (measured from broadside) reaches element n
with an extra path of (n-1)*d*sin(theta), i.e. a time delay

    tau_n = (n-1) * d * sin(theta) / c

Test waveforms are closed-form passband expressions, so the per-element delay
is applied analytically by evaluating the waveform at t - tau_n.  No
interpolation or fractional-delay filtering is involved; the synthesized
streams are exact up to float64 evaluation of cos().
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

SPEED_OF_LIGHT = 2.99792458e8

SIGNAL_KINDS = ("tone", "linear_fm", "iq_two_tone")
NOISE_REFERENCES = ("signal", "fullscale")


@dataclass(frozen=True)
class ArrayConfig:
    """Uniform linear array geometry plus the carrier used for steering."""

    num_elements: int
    spacing_m: float
    carrier_hz: float
    wave_speed_mps: float = SPEED_OF_LIGHT

    def __post_init__(self):
        if self.num_elements < 1:
            raise ValidationError("num_elements must be >= 1")
        if self.spacing_m <= 0:
            raise ValidationError("spacing_m must be > 0")
        if self.wave_speed_mps <= 0:
            raise ValidationError("wave_speed_mps must be > 0")
        if self.carrier_hz <= 0:
            raise ValidationError("carrier_hz must be > 0")

    @property
    def wavelength_m(self) -> float:
        return self.wave_speed_mps / self.carrier_hz

    def is_narrowband(self, bandwidth_hz: float) -> bool:
        """True when the signal bandwidth is under 1% of the carrier.

        Below that ratio the inter-element delay is indistinguishable from a
        phase shift, which is the assumption the whole weight-and-sum
        beamformer rests on.
        """
        return bandwidth_hz / self.carrier_hz < 0.01


@dataclass(frozen=True)
class TestSignalSpec:
    """One of the closed-form RF test waveforms.

    kind selects the waveform:
      tone        -- A*cos(2*pi*fc*t)
      linear_fm   -- sinusoidal FM: instantaneous frequency
                     fc + deviation_hz*sin(2*pi*base_tone_hz*t)
      iq_two_tone -- (A/2)*(cos(2*pi*fi*t)*cos(wc*t) - cos(2*pi*fq*t)*sin(wc*t)),
                     i.e. an IQ-modulated carrier with one tone per rail; the
                     A/2 keeps the envelope within full scale.

    noise_power_db sets the per-channel white Gaussian noise variance in dB.
    With noise_reference="signal" (default) 0 dB means the noise standard
    deviation equals the signal amplitude; with "fullscale" it is relative to
    a full-scale amplitude of 1.0.  The reference level is a convention the
    source material leaves open, hence the switch.
    """

    kind: str
    carrier_hz: float
    arrival_angle_rad: float = 0.0
    amplitude: float = 1.0
    base_tone_hz: float | None = None
    deviation_hz: float | None = None
    i_tone_hz: float | None = None
    q_tone_hz: float | None = None
    noise_power_db: float | None = None
    noise_reference: str = "signal"
    seed: int = 0

    def __post_init__(self):
        if self.kind not in SIGNAL_KINDS:
            raise ValidationError(f"unknown signal kind {self.kind!r}")
        if self.carrier_hz <= 0:
            raise ValidationError("carrier_hz must be > 0")
        if not abs(self.arrival_angle_rad) < math.pi / 2:
            raise ValidationError("|arrival_angle_rad| must be < pi/2")
        if not 0.0 < self.amplitude <= 1.0:
            raise ValidationError("amplitude must be in (0, 1]")
        if self.noise_reference not in NOISE_REFERENCES:
            raise ValidationError(f"unknown noise_reference {self.noise_reference!r}")
        if self.kind == "linear_fm":
            if not self.base_tone_hz or self.base_tone_hz <= 0:
                raise ValidationError("linear_fm requires base_tone_hz > 0")
            if not self.deviation_hz or self.deviation_hz <= 0:
                raise ValidationError("linear_fm requires deviation_hz > 0")
        if self.kind == "iq_two_tone":
            if not self.i_tone_hz or self.i_tone_hz <= 0:
                raise ValidationError("iq_two_tone requires i_tone_hz > 0")
            if not self.q_tone_hz or self.q_tone_hz <= 0:
                raise ValidationError("iq_two_tone requires q_tone_hz > 0")

    def occupied_bandwidth_hz(self) -> float:
        """Rough two-sided RF bandwidth, for the narrowband check."""
        if self.kind == "tone":
            return 0.0
        if self.kind == "linear_fm":
            # Carson's rule
            return 2.0 * (self.deviation_hz + self.base_tone_hz)
        return 2.0 * max(self.i_tone_hz, self.q_tone_hz)


@dataclass(frozen=True)
class SteeringVector:
    """Per-element unit phasors exp(-j*wc*tau_n) for one arrival angle."""

    phasors: np.ndarray = field(repr=False)

    def __post_init__(self):
        p = np.asarray(self.phasors, dtype=np.complex128)
        object.__setattr__(self, "phasors", p)
        if not np.allclose(np.abs(p), 1.0, rtol=0, atol=1e-12):
            raise ValidationError("steering phasors must have unit magnitude")

    def conjugate(self) -> "SteeringVector":
        return SteeringVector(np.conj(self.phasors))

    def __len__(self) -> int:
        return len(self.phasors)


def element_delay(cfg: ArrayConfig, theta: float, n: int) -> float:
    """Arrival delay of element n (1-based) relative to element 1, in seconds."""
    if not 1 <= n <= cfg.num_elements:
        raise IndexError(f"element index {n} outside 1..{cfg.num_elements}")
    return (n - 1) * cfg.spacing_m * math.sin(theta) / cfg.wave_speed_mps


def element_delays(cfg: ArrayConfig, theta: float) -> np.ndarray:
    """All N element delays as a vector."""
    n = np.arange(cfg.num_elements)
    return n * cfg.spacing_m * math.sin(theta) / cfg.wave_speed_mps


def steering_vector(cfg: ArrayConfig, theta: float) -> SteeringVector:
    """Unit phasors exp(-j*wc*tau_n), n = 1..N, with phasors[0] = 1."""
    wc = 2.0 * math.pi * cfg.carrier_hz
    return SteeringVector(np.exp(-1j * wc * element_delays(cfg, theta)))


def _passband(spec: TestSignalSpec, t: np.ndarray) -> np.ndarray:
    """Evaluate the passband waveform at times t (seconds)."""
    wc = 2.0 * math.pi * spec.carrier_hz
    a = spec.amplitude
    if spec.kind == "tone":
        return a * np.cos(wc * t)
    if spec.kind == "linear_fm":
        # phase chosen so that d(phase)/dt / 2pi = fc + dev*sin(2*pi*fm*t)
        beta = spec.deviation_hz / spec.base_tone_hz
        phase = wc * t + beta * (1.0 - np.cos(2.0 * math.pi * spec.base_tone_hz * t))
        return a * np.cos(phase)
    # iq_two_tone
    i_bb = np.cos(2.0 * math.pi * spec.i_tone_hz * t)
    q_bb = np.cos(2.0 * math.pi * spec.q_tone_hz * t)
    return 0.5 * a * (i_bb * np.cos(wc * t) - q_bb * np.sin(wc * t))


def synthesize_channels(
    cfg: ArrayConfig,
    spec: TestSignalSpec,
    fs: float,
    num_samples: int,
) -> np.ndarray:
    """Synthesize the N element streams for one plane-wave test signal.

    Returns an (N, num_samples) float64 array.  Stream n is the passband
    waveform evaluated at t - tau_n for t = k/fs, plus independent seeded
    Gaussian noise per channel (numpy PCG64 generator, so identical specs
    give bit-identical streams).
    """
    if fs <= 0:
        raise ValidationError("fs must be > 0")
    if num_samples <= 0:
        raise ValidationError("num_samples must be > 0")

    taus = element_delays(cfg, spec.arrival_angle_rad)
    t = np.arange(num_samples, dtype=np.float64) / fs
    streams = np.empty((cfg.num_elements, num_samples), dtype=np.float64)
    for n, tau in enumerate(taus):
        streams[n] = _passband(spec, t - tau)

    if spec.noise_power_db is not None:
        sigma = 10.0 ** (spec.noise_power_db / 20.0)
        if spec.noise_reference == "signal":
            sigma *= spec.amplitude
        rng = np.random.default_rng(spec.seed)
        streams += sigma * rng.standard_normal(streams.shape)

    return streams
