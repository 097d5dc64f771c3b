"""Separable orthonormal Haar DWT-2D with recursive LL decomposition.

For a 2x2 block ``[[a, b], [c, d]]`` one analysis step gives::

    LL = (a + b + c + d) / 2      HL = (a - b + c - d) / 2
    LH = (a + b - c - d) / 2      HH = (a - b - c + d) / 2

LH is the vertical-detail channel and HL the horizontal-detail channel.
Rows are filtered first, then columns. Dimensions must be divisible by
``2**levels``; there is no padding or boundary extension.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, StructuralError

__all__ = ["WaveletDecomposition", "dwt2_forward", "dwt2_inverse", "SUBBANDS"]

SUBBANDS = ("LH", "HL", "HH")

_S = 1.0 / np.sqrt(2.0)


@dataclass
class WaveletDecomposition:
    """Approximation grid plus per-level detail triples.

    ``details[i - 1]`` holds the ``{"LH", "HL", "HH"}`` grids of level ``i``
    (level 1 is the finest). ``ll`` belongs to level ``levels``.
    """

    ll: np.ndarray
    details: list = field(default_factory=list)

    @property
    def levels(self):
        return len(self.details)

    def subband(self, level, name):
        return self.details[level - 1][name]

    def copy(self):
        return WaveletDecomposition(
            self.ll.copy(), [{k: v.copy() for k, v in d.items()} for d in self.details]
        )

    def coefficient_count(self):
        return self.ll.size + sum(v.size for d in self.details for v in d.values())

    def energy(self):
        return float(np.sum(self.ll ** 2) + sum(np.sum(v ** 2) for d in self.details for v in d.values()))


def _analyze(x):
    lo = (x[:, 0::2] + x[:, 1::2]) * _S
    hi = (x[:, 0::2] - x[:, 1::2]) * _S
    ll = (lo[0::2] + lo[1::2]) * _S
    lh = (lo[0::2] - lo[1::2]) * _S
    hl = (hi[0::2] + hi[1::2]) * _S
    hh = (hi[0::2] - hi[1::2]) * _S
    return ll, {"LH": lh, "HL": hl, "HH": hh}


def _synthesize(ll, det):
    lh, hl, hh = det["LH"], det["HL"], det["HH"]
    h, w = ll.shape
    lo = np.empty((2 * h, w))
    hi = np.empty((2 * h, w))
    lo[0::2] = (ll + lh) * _S
    lo[1::2] = (ll - lh) * _S
    hi[0::2] = (hl + hh) * _S
    hi[1::2] = (hl - hh) * _S
    out = np.empty((2 * h, 2 * w))
    out[:, 0::2] = (lo + hi) * _S
    out[:, 1::2] = (lo - hi) * _S
    return out


def dwt2_forward(grid, levels=1):
    """Forward Haar DWT-2D.

    Parameters
    ----------
    grid : array_like
        2-D real grid, both dimensions divisible by ``2**levels``.
    levels : int
        Number of decomposition levels (>= 1).

    Returns
    -------
    WaveletDecomposition
    """
    x = np.asarray(grid, dtype=np.float64)
    if x.ndim != 2:
        raise DimensionError(f"expected a 2-D grid, got {x.ndim} dimensions")
    if int(levels) != levels or levels < 1:
        raise DimensionError(f"levels must be a positive integer, got {levels!r}")
    div = 2 ** levels
    if x.shape[0] % div or x.shape[1] % div or x.size == 0:
        raise DimensionError(
            f"grid shape {x.shape} not divisible by {div} (required for {levels} level(s))"
        )
    details = []
    ll = x
    for _ in range(levels):
        ll, det = _analyze(ll)
        details.append(det)
    return WaveletDecomposition(ll, details)


def dwt2_inverse(decomposition):
    """Inverse of :func:`dwt2_forward` (its exact adjoint)."""
    ll = np.asarray(decomposition.ll, dtype=np.float64)
    if not decomposition.details:
        raise StructuralError("decomposition has no detail levels")
    for level in range(decomposition.levels, 0, -1):
        det = decomposition.details[level - 1]
        if set(det) != set(SUBBANDS):
            raise StructuralError(f"level {level} must hold subbands {SUBBANDS}, got {sorted(det)}")
        for name in SUBBANDS:
            if np.shape(det[name]) != ll.shape:
                raise StructuralError(
                    f"level {level} {name} has shape {np.shape(det[name])}, expected {ll.shape}"
                )
        ll = _synthesize(ll, {k: np.asarray(v, dtype=np.float64) for k, v in det.items()})
    return ll
