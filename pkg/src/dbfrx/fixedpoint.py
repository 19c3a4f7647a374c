"""Small helpers for two's-complement fixed-point arithmetic.

Everything operates on plain int64 numpy arrays (or Python ints); values are
*codes*, not scaled reals.  int64 is wide enough for every accumulator in the
receiver chain (the widest is < 2^42), so all arithmetic here is exact.
"""

from __future__ import annotations

import numpy as np

from .errors import ValidationError


def signed_min(bits: int) -> int:
    return -(1 << (bits - 1))


def signed_max(bits: int) -> int:
    return (1 << (bits - 1)) - 1


def round_half_away(x) -> np.ndarray:
    """Round to nearest integer, ties away from zero (hardware convention).

    np.round() rounds ties to even, which is not what the quantizers here use.
    """
    x = np.asarray(x, dtype=float)
    if np.any(np.isnan(x)):
        raise ValidationError("cannot round NaN")
    return np.copysign(np.floor(np.abs(x) + 0.5), x).astype(np.int64)


def clamp(x, bits: int) -> np.ndarray:
    """Saturate to the signed range of `bits`."""
    return np.clip(np.asarray(x, dtype=np.int64), signed_min(bits), signed_max(bits))


def wrap_to_signed(x, bits: int) -> np.ndarray:
    """Keep the low `bits` bits and reinterpret as signed (hardware truncation)."""
    x = np.asarray(x, dtype=np.int64)
    half = 1 << (bits - 1)
    return ((x + half) % (1 << bits)) - half


def fits_signed(x, bits: int) -> np.ndarray:
    """Boolean mask: True where x is representable in `bits` signed bits."""
    x = np.asarray(x, dtype=np.int64)
    return (x >= signed_min(bits)) & (x <= signed_max(bits))
