"""Spectral metrics, beam patterns, and run comparison.

The spectral estimator mirrors what converter eval tools report: pick the
strongest non-DC bin as the fundamental, attribute folded harmonics, and
split the rest between noise and spurs.

Normalization: every quantity is derived from Pn[k] = |X[k]|^2 / (Nfft*sum(w^2)),
which makes bin sums window-independent estimates of time-domain power
(Parseval).  Tone power is the sum over the window's main lobe, so scalloping
does not bias it; the noise estimate is the mean over noise bins extrapolated
back over the full band, so the exclusion zones do not shrink it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .array_signal import ArrayConfig, element_delays
from .dbf_core import ComplexWeightSet
from .errors import NoFundamentalError, ValidationError

WINDOWS = ("rectangular", "blackman_harris")

# Main-lobe half-width in bins: how far a tone's energy spreads per window.
_LOBE_HALF_WIDTH = {"rectangular": 1, "blackman_harris": 4}

# Auto window selection: a coherent tone leaks less than this into neighbours.
_COHERENT_LEAKAGE = 1e-3


def _blackman_harris(n: int) -> np.ndarray:
    a = (0.35875, 0.48829, 0.14128, 0.01168)
    t = np.arange(n) / (n - 1)
    return (
        a[0]
        - a[1] * np.cos(2 * np.pi * t)
        + a[2] * np.cos(4 * np.pi * t)
        - a[3] * np.cos(6 * np.pi * t)
    )


def _window(name: str, n: int) -> np.ndarray:
    if name == "rectangular":
        return np.ones(n)
    if name == "blackman_harris":
        return _blackman_harris(n)
    raise ValidationError(f"unknown window {name!r}")


@dataclass(frozen=True)
class SpectralMetrics:
    fundamental_hz: float
    fundamental_power_db: float
    snr_db: float
    sndr_db: float
    sfdr_db: float
    thd_db: float
    fft_size: int
    window: str

    def as_dict(self) -> dict:
        return {
            "fundamental_hz": self.fundamental_hz,
            "fundamental_power_db": self.fundamental_power_db,
            "snr_db": self.snr_db,
            "sndr_db": self.sndr_db,
            "sfdr_db": self.sfdr_db,
            "thd_db": self.thd_db,
            "fft_size": self.fft_size,
            "window": self.window,
        }


def _lobe(center: int, half: int, nbins: int) -> np.ndarray:
    return (np.arange(center - half, center + half + 1)) % nbins


def spectral_metrics(
    samples,
    fs: float,
    harmonics: int = 5,
    window: str = "auto",
) -> SpectralMetrics:
    """SNR / SNDR / SFDR / THD of a real or complex record.

    window="auto" measures with a rectangular window when the tone is
    coherently sampled (negligible leakage into the peak's neighbours) and
    falls back to blackman_harris otherwise.
    """
    x = np.asarray(samples)
    if x.ndim != 1 or len(x) < 64:
        raise ValidationError("need a 1-D record of at least 64 samples")
    if fs <= 0:
        raise ValidationError("fs must be > 0")
    if np.all(x == x.flat[0]):
        raise NoFundamentalError("constant input has no fundamental")

    is_complex = np.iscomplexobj(x)
    n = len(x)

    if window == "auto":
        spec = np.abs(np.fft.fft(x)) ** 2
        cand = spec.copy()
        cand[0] = 0.0
        if not is_complex:
            cand[n // 2 :] = 0.0
        k0 = int(np.argmax(cand))
        leak = max(spec[(k0 - 1) % n], spec[(k0 + 1) % n])
        window = "rectangular" if leak <= _COHERENT_LEAKAGE * spec[k0] else "blackman_harris"
    elif window not in WINDOWS:
        raise ValidationError(f"unknown window {window!r}")

    w = _window(window, n)
    half = _LOBE_HALF_WIDTH[window]
    pn = np.abs(np.fft.fft(x * w)) ** 2 / (n * np.sum(w * w))

    # Bins under consideration: one-sided for real input, two-sided otherwise.
    considered = np.zeros(n, dtype=bool)
    if is_complex:
        considered[:] = True
    else:
        considered[1 : n // 2] = True
    dc_lobe = _lobe(0, half, n)
    considered[dc_lobe] = False

    cand = np.where(considered, pn, 0.0)
    k0 = int(np.argmax(cand))
    fund_lobe = _lobe(k0, half, n)
    fund_lobe = fund_lobe[considered[fund_lobe]]
    p_fund = float(np.sum(pn[fund_lobe]))
    if p_fund <= 0.0:
        raise NoFundamentalError("no non-DC spectral content")

    bin_hz = fs / n
    if is_complex and k0 > n // 2:
        f0 = (k0 - n) * bin_hz  # negative-frequency fundamental
    else:
        f0 = k0 * bin_hz

    # Harmonics m*f0, folded back into the measured band.
    harm_bins: list[np.ndarray] = []
    for m in range(2, harmonics + 2):
        fm = m * f0
        if is_complex:
            km = int(round(fm / bin_hz)) % n
        else:
            folded = math.fmod(fm, fs)
            folded = min(folded, fs - folded)
            km = int(round(folded / bin_hz))
        lobe = _lobe(km, half, n)
        lobe = lobe[considered[lobe]]
        lobe = lobe[~np.isin(lobe, fund_lobe)]
        harm_bins.append(lobe)
    all_harm = np.unique(np.concatenate(harm_bins)) if harm_bins else np.array([], dtype=int)
    p_harm = float(np.sum(pn[all_harm]))

    # Noise: everything considered except fundamental and harmonic lobes,
    # extrapolated over the full considered band.
    noise_mask = considered.copy()
    noise_mask[fund_lobe] = False
    noise_mask[all_harm] = False
    n_considered = int(np.count_nonzero(considered))
    n_noise = int(np.count_nonzero(noise_mask))
    if n_noise == 0:
        raise ValidationError("record too short to separate noise from signal")
    p_noise = float(np.mean(pn[noise_mask])) * n_considered

    # Highest spur: strongest single excluded-fundamental bin plus its lobe.
    spur_mask = considered.copy()
    spur_mask[fund_lobe] = False
    spur_powers = np.where(spur_mask, pn, 0.0)
    ks = int(np.argmax(spur_powers))
    spur_lobe = _lobe(ks, half, n)
    spur_lobe = spur_lobe[spur_mask[spur_lobe]]
    p_spur = float(np.sum(pn[spur_lobe]))

    def db(ratio: float) -> float:
        return 10.0 * math.log10(ratio) if ratio > 0 else -math.inf

    return SpectralMetrics(
        fundamental_hz=abs(f0),
        fundamental_power_db=db(p_fund),
        snr_db=db(p_fund / p_noise),
        sndr_db=db(p_fund / (p_noise + p_harm)),
        sfdr_db=db(p_fund / p_spur) if p_spur > 0 else math.inf,
        thd_db=db(p_harm / p_fund),
        fft_size=n,
        window=window,
    )


def power_spectrum(samples, fs: float, window: str = "blackman_harris"):
    """(frequency_hz, power_db) pairs for plotting / CSV export.

    Two-sided and fftshifted for complex input, one-sided for real input.
    Power is normalized like spectral_metrics (bin sums estimate power).
    """
    x = np.asarray(samples)
    n = len(x)
    w = _window(window, n)
    pn = np.abs(np.fft.fft(x * w)) ** 2 / (n * np.sum(w * w))
    floor = np.max(pn) * 1e-30 if np.max(pn) > 0 else 1e-300
    if np.iscomplexobj(x):
        freqs = np.fft.fftshift(np.fft.fftfreq(n, d=1.0 / fs))
        pdb = 10 * np.log10(np.maximum(np.fft.fftshift(pn), floor))
    else:
        freqs = np.arange(n // 2) * fs / n
        pdb = 10 * np.log10(np.maximum(pn[: n // 2], floor))
    return freqs, pdb


def instantaneous_frequency(z, fs: float) -> np.ndarray:
    """Per-sample frequency (Hz) from the phase increment of a complex record."""
    z = np.asarray(z, dtype=np.complex128)
    return np.angle(z[1:] * np.conj(z[:-1])) * fs / (2.0 * np.pi)


@dataclass(frozen=True)
class BeamPattern:
    angles_rad: np.ndarray = field(repr=False)
    gains_db: np.ndarray = field(repr=False)

    def peak(self) -> tuple[float, float]:
        k = int(np.argmax(self.gains_db))
        return float(self.angles_rad[k]), float(self.gains_db[k])

    def first_nulls(self) -> tuple[float | None, float | None]:
        """Angles of the first local minima on each side of the peak."""
        g = self.gains_db
        k = int(np.argmax(g))
        left = None
        for j in range(k - 1, 0, -1):
            if g[j] <= g[j - 1] and g[j] < g[j + 1]:
                left = float(self.angles_rad[j])
                break
        right = None
        for j in range(k + 1, len(g) - 1):
            if g[j] <= g[j + 1] and g[j] < g[j - 1]:
                right = float(self.angles_rad[j])
                break
        return left, right


def beam_pattern(cfg: ArrayConfig, weights, grid) -> BeamPattern:
    """Array response |sum_n w_n * exp(-j*wc*tau_n(theta))| over an angle grid.

    `weights` is a ComplexWeightSet (dequantized before use) or a complex
    vector of unit-magnitude phasors.  With weights built by
    steering_weights(theta_s) the pattern peaks at theta_s, at
    20*log10(N) for an N-element array.
    """
    grid = np.asarray(grid, dtype=np.float64)
    if grid.size == 0:
        raise ValidationError("angle grid must be nonempty")
    if np.any(np.diff(grid) <= 0):
        raise ValidationError("angle grid must be strictly increasing")

    if isinstance(weights, ComplexWeightSet):
        w = weights.dequantize()
    else:
        w = np.asarray(weights, dtype=np.complex128)
    if len(w) != cfg.num_elements:
        raise ValidationError("weight count must match the array")

    wc = 2.0 * np.pi * cfg.carrier_hz
    # (num_angles, N) arrival phasors
    taus = np.array([element_delays(cfg, th) for th in grid])
    arrivals = np.exp(-1j * wc * taus)
    mags = np.abs(arrivals @ w)
    floor = max(len(w), 1) * 1e-16
    gains_db = 20.0 * np.log10(np.maximum(mags, floor))
    return BeamPattern(angles_rad=grid, gains_db=gains_db)


@dataclass(frozen=True)
class ComparisonReport:
    num_samples: int
    warmup: int
    max_abs_diff: float
    rel_rms_diff: float
    i_max_abs_diff: float
    q_max_abs_diff: float
    i_rms_diff: float
    q_rms_diff: float

    def as_dict(self) -> dict:
        return dict(
            num_samples=self.num_samples,
            warmup=self.warmup,
            max_abs_diff=self.max_abs_diff,
            rel_rms_diff=self.rel_rms_diff,
            i_max_abs_diff=self.i_max_abs_diff,
            q_max_abs_diff=self.q_max_abs_diff,
            i_rms_diff=self.i_rms_diff,
            q_rms_diff=self.q_rms_diff,
        )


def compare(a, b, warmup: int = 0) -> ComparisonReport:
    """Element-wise comparison of two baseband records past the warm-up.

    Accepts complex arrays or anything with a .z attribute (RunResult).
    rel_rms_diff is ||a-b|| / ||a|| over the compared span; when both records
    are all-zero it is 0.
    """
    za = np.asarray(getattr(a, "z", a), dtype=np.complex128)
    zb = np.asarray(getattr(b, "z", b), dtype=np.complex128)
    if za.shape != zb.shape:
        raise ValidationError(f"length mismatch: {za.shape} vs {zb.shape}")
    if warmup < 0 or warmup >= len(za):
        raise ValidationError("warmup must be inside the record")

    da = za[warmup:]
    db_ = zb[warmup:]
    diff = da - db_
    ref = float(np.linalg.norm(da))
    rms = float(np.linalg.norm(diff))
    if ref > 0:
        rel = rms / ref
    else:
        rel = 0.0 if rms == 0 else math.inf
    return ComparisonReport(
        num_samples=len(da),
        warmup=warmup,
        max_abs_diff=float(np.max(np.abs(diff))) if len(diff) else 0.0,
        rel_rms_diff=rel,
        i_max_abs_diff=float(np.max(np.abs(diff.real))) if len(diff) else 0.0,
        q_max_abs_diff=float(np.max(np.abs(diff.imag))) if len(diff) else 0.0,
        i_rms_diff=float(np.sqrt(np.mean(diff.real**2))) if len(diff) else 0.0,
        q_rms_diff=float(np.sqrt(np.mean(diff.imag**2))) if len(diff) else 0.0,
    )
