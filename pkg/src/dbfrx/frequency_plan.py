"""Nyquist-zone bookkeeping and under-sampling rate planning.

Nyquist zone k covers [(k-1)*fs/2, k*fs/2).  Sampling folds every zone onto
the first one; odd zones land upright ("direct"), even zones land reversed
("mirrored").  Picking fs so a band of width BW centred on fc stays inside a
single zone gives the classic bandpass-sampling rate windows:

  direct   (zone 2n+1):  (2*fc + BW)/(2n+1) <= fs <= (fc - BW/2)/n,
                         feasible for 0 <= n <= (fc - BW/2)/(2*BW)
  inverted (zone 2n):    (fc + BW/2)/n <= fs <= (2*fc - BW)/(2n-1),
                         feasible for 1 <= n <= (fc + BW/2)/(2*BW)

(The n = 0 direct case has no upper bound: it is ordinary oversampling.)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError, ZoneEdgeError

# Feasibility comparisons are done in float64 with this relative slack.
REL_TOL = 1e-9


@dataclass(frozen=True)
class FrequencyPlan:
    """Where a carrier lands after sampling at fs."""

    zone_index: int
    spectrum_orientation: str  # "direct" | "mirrored"
    alias_if_hz: float
    fs_hz: float
    fc_hz: float


@dataclass(frozen=True)
class RateRange:
    """One feasible [fs_min, fs_max] window; fs_max may be math.inf."""

    fs_min: float
    fs_max: float
    zone_index: int
    placement: str  # "direct" | "inverted"

    def contains(self, fs: float) -> bool:
        lo = self.fs_min * (1.0 - REL_TOL)
        hi = math.inf if math.isinf(self.fs_max) else self.fs_max * (1.0 + REL_TOL)
        return lo <= fs <= hi


def nyquist_zone(fc: float, fs: float) -> FrequencyPlan:
    """Zone index, orientation, and alias frequency of fc sampled at fs.

    Raises ZoneEdgeError when fc sits exactly on a k*fs/2 boundary (within
    REL_TOL): the alias would be DC or fs/2, neither of which is a usable
    intermediate frequency, so edge placements are refused rather than
    silently assigned to a neighbouring zone.
    """
    if fs <= 0:
        raise ValidationError("fs must be > 0")
    if fc < 0:
        raise ValidationError("fc must be >= 0")

    half = fs / 2.0
    ratio = fc / half
    nearest = round(ratio)
    if nearest > 0 and abs(ratio - nearest) <= REL_TOL * nearest:
        raise ZoneEdgeError(
            f"fc = {fc:g} Hz lies on a Nyquist-zone edge ({nearest} * fs/2)"
        )

    zone = int(math.floor(ratio)) + 1
    r = math.fmod(fc, fs)
    alias = r if r < half else fs - r
    orientation = "direct" if zone % 2 == 1 else "mirrored"
    return FrequencyPlan(
        zone_index=zone,
        spectrum_orientation=orientation,
        alias_if_hz=alias,
        fs_hz=fs,
        fc_hz=fc,
    )


def _check_band(fc: float, bw: float) -> None:
    if bw <= 0:
        raise ValidationError("bw must be > 0")
    if fc <= bw / 2:
        raise ValidationError("fc must exceed bw/2")


def undersample_range_direct(fc: float, bw: float, n: int) -> RateRange | None:
    """Sampling-rate window that lands [fc-bw/2, fc+bw/2] upright in zone 2n+1.

    Returns None when the window is empty (n past the feasibility bound).
    """
    _check_band(fc, bw)
    if n < 0:
        raise ValidationError("n must be >= 0")

    fs_min = (2.0 * fc + bw) / (2 * n + 1)
    fs_max = math.inf if n == 0 else (fc - bw / 2.0) / n
    n_max = (fc - bw / 2.0) / (2.0 * bw)
    if n > n_max * (1.0 + REL_TOL) or fs_min > fs_max * (1.0 + REL_TOL):
        return None
    return RateRange(fs_min=fs_min, fs_max=fs_max, zone_index=2 * n + 1, placement="direct")


def undersample_range_inverted(fc: float, bw: float, n: int) -> RateRange | None:
    """Sampling-rate window that lands the band mirrored in zone 2n."""
    _check_band(fc, bw)
    if n < 1:
        raise ValidationError("n must be >= 1 for inverted placement")

    fs_min = (fc + bw / 2.0) / n
    fs_max = (2.0 * fc - bw) / (2 * n - 1)
    n_max = (fc + bw / 2.0) / (2.0 * bw)
    if n > n_max * (1.0 + REL_TOL) or fs_min > fs_max * (1.0 + REL_TOL):
        return None
    return RateRange(fs_min=fs_min, fs_max=fs_max, zone_index=2 * n, placement="inverted")


def all_undersample_ranges(fc: float, bw: float) -> list[RateRange]:
    """Every feasible direct and inverted window, widest (lowest n) first."""
    _check_band(fc, bw)
    ranges: list[RateRange] = []
    n = 0
    while True:
        r = undersample_range_direct(fc, bw, n)
        if r is None:
            break
        ranges.append(r)
        n += 1
    n = 1
    while True:
        r = undersample_range_inverted(fc, bw, n)
        if r is None:
            break
        ranges.append(r)
        n += 1
    ranges.sort(key=lambda r: -r.fs_min)
    return ranges
