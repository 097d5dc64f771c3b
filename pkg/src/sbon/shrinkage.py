"""VisuShrink thresholding of wavelet detail coefficients.

Notes
-----
The noise estimate is ``median(|c|) / 0.6745``: the median of absolute
values, not the deviation about the median.

Soft thresholding uses the signed rule ``sign(c) * max(|c| - lam, 0)``. A
plain ``c - lam`` for surviving coefficients would push negative
coefficients further from zero instead of shrinking them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError

__all__ = [
    "MAD_SCALE",
    "ShrinkageParams",
    "mad_sigma",
    "universal_threshold",
    "hard_threshold",
    "soft_threshold",
    "visushrink_params",
]

MAD_SCALE = 0.6745


@dataclass(frozen=True)
class ShrinkageParams:
    delta_mad: float
    lam: float
    n_pixels: int


def mad_sigma(coeffs):
    """Noise standard deviation estimate from a detail subband."""
    c = np.asarray(coeffs, dtype=np.float64)
    if c.size == 0:
        raise DataError("cannot estimate noise from an empty subband")
    return float(np.median(np.abs(c)) / MAD_SCALE)


def universal_threshold(delta_mad, n_pixels):
    """``delta_mad * sqrt(2 ln N)`` with natural logarithm."""
    if n_pixels < 1:
        raise DataError(f"n_pixels must be >= 1, got {n_pixels}")
    if delta_mad < 0:
        raise DataError(f"delta_mad must be >= 0, got {delta_mad}")
    return float(delta_mad * np.sqrt(2.0 * np.log(n_pixels)))


def visushrink_params(noise_band, n_pixels):
    delta = mad_sigma(noise_band)
    return ShrinkageParams(delta, universal_threshold(delta, n_pixels), int(n_pixels))


def _check_lam(lam):
    if not lam >= 0:
        raise DataError(f"threshold must be >= 0, got {lam}")


def hard_threshold(grid, lam):
    """Zero every coefficient with ``|c| <= lam``; keep the rest."""
    _check_lam(lam)
    c = np.asarray(grid, dtype=np.float64)
    return np.where(np.abs(c) <= lam, 0.0, c)


def soft_threshold(grid, lam):
    """Shrink every coefficient toward zero by ``lam``, clipping at zero."""
    _check_lam(lam)
    c = np.asarray(grid, dtype=np.float64)
    return np.sign(c) * np.maximum(np.abs(c) - lam, 0.0)
