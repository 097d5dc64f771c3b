"""Affine quantization of coefficient grids and bit-plane slicing.

A real grid is mapped onto unsigned ``bits``-bit integers by its own min/max
range, sliced into binary planes, and the reverse path re-assembles planes and
rescales with the same parameters.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError, SampleRangeError, StructuralError

__all__ = [
    "QuantParams",
    "BitPlaneSet",
    "quantize",
    "dequantize",
    "bit_slice",
    "reassemble",
    "MSB_FIRST",
    "LSB_FIRST",
]

MSB_FIRST = "msb_first"
LSB_FIRST = "lsb_first"


def _check_bits(bits):
    if int(bits) != bits or not 1 <= bits <= 16:
        raise DataError(f"bits must be an integer in [1, 16], got {bits!r}")
    return int(bits)


@dataclass(frozen=True)
class QuantParams:
    c_min: float
    c_max: float
    bits: int

    def __post_init__(self):
        _check_bits(self.bits)
        if not (np.isfinite(self.c_min) and np.isfinite(self.c_max)) or self.c_min > self.c_max:
            raise DataError(f"invalid range [{self.c_min}, {self.c_max}]")

    @property
    def levels(self):
        """Largest representable integer, ``2**bits - 1``."""
        return (1 << self.bits) - 1

    @property
    def half_step(self):
        """Worst-case dequantization error for this range."""
        return (self.c_max - self.c_min) / (2 * self.levels)


@dataclass(frozen=True, eq=False)
class BitPlaneSet:
    """``q`` binary planes, each a flattened (row-major) copy of a grid.

    ``planes[k]`` holds bit ``bits - 1 - k`` when ``order`` is MSB_FIRST and
    bit ``k`` when it is LSB_FIRST.
    """

    planes: np.ndarray
    shape: tuple
    order: str = MSB_FIRST

    def __post_init__(self):
        planes = np.asarray(self.planes)
        if planes.ndim != 2 or planes.shape[0] < 1:
            raise StructuralError(f"planes must be a non-empty (q, p) array, got shape {planes.shape}")
        rows, cols = self.shape
        if planes.shape[1] != rows * cols:
            raise StructuralError(
                f"plane length {planes.shape[1]} does not match grid shape {tuple(self.shape)}"
            )
        if not np.isin(planes, (0, 1)).all():
            raise DataError("bit-planes must be {0,1}-valued")
        if self.order not in (MSB_FIRST, LSB_FIRST):
            raise StructuralError(f"unknown plane order {self.order!r}")
        planes = planes.astype(np.uint8)
        planes.setflags(write=False)
        object.__setattr__(self, "planes", planes)
        object.__setattr__(self, "shape", (int(rows), int(cols)))

    @property
    def bits(self):
        return self.planes.shape[0]

    @property
    def plane_len(self):
        return self.planes.shape[1]

    def reversed(self):
        """Same planes with the opposite ordering."""
        other = LSB_FIRST if self.order == MSB_FIRST else MSB_FIRST
        return BitPlaneSet(self.planes[::-1], self.shape, other)

    def plane_grid(self, k):
        return self.planes[k].reshape(self.shape)

    def __eq__(self, other):
        if not isinstance(other, BitPlaneSet):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.order == other.order
            and np.array_equal(self.planes, other.planes)
        )


def quantize(grid, bits=8):
    """Map a real grid affinely onto ``[0, 2**bits - 1]``.

    Rounding is half away from zero. A constant grid quantizes to zeros.

    Returns
    -------
    int_grid : ndarray of int64
    params : QuantParams
    """
    bits = _check_bits(bits)
    g = np.asarray(grid, dtype=np.float64)
    if g.size == 0:
        raise DataError("cannot quantize an empty grid")
    if not np.all(np.isfinite(g)):
        raise DataError("cannot quantize non-finite values")
    params = QuantParams(float(g.min()), float(g.max()), bits)
    if params.c_max == params.c_min:
        return np.zeros(g.shape, dtype=np.int64), params
    scaled = (g - params.c_min) / (params.c_max - params.c_min) * params.levels
    # scaled >= 0, so half-away-from-zero is floor(x + 0.5)
    q = np.floor(scaled + 0.5).astype(np.int64)
    return np.clip(q, 0, params.levels), params


def _check_int_range(int_grid, bits):
    q = np.asarray(int_grid)
    if q.size and not np.issubdtype(q.dtype, np.integer):
        if not np.array_equal(q, np.floor(q)):
            raise SampleRangeError("integer grid holds non-integer values")
    q = q.astype(np.int64)
    top = (1 << bits) - 1
    if q.size and (q.min() < 0 or q.max() > top):
        raise SampleRangeError(f"values must lie in [0, {top}], got [{q.min()}, {q.max()}]")
    return q


def dequantize(int_grid, params):
    """Inverse affine map of :func:`quantize` for the given parameters."""
    q = _check_int_range(int_grid, params.bits)
    if params.c_max == params.c_min:
        return np.full(q.shape, params.c_min, dtype=np.float64)
    return params.c_min + q / params.levels * (params.c_max - params.c_min)


def bit_slice(int_grid, bits=8):
    """Split an integer grid into ``bits`` planes, most significant first."""
    bits = _check_bits(bits)
    q = _check_int_range(int_grid, bits)
    if q.ndim != 2:
        raise StructuralError(f"expected a 2-D grid, got {q.ndim} dimensions")
    flat = q.ravel()
    shifts = np.arange(bits - 1, -1, -1, dtype=np.int64)
    planes = ((flat[None, :] >> shifts[:, None]) & 1).astype(np.uint8)
    return BitPlaneSet(planes, q.shape, MSB_FIRST)


def reassemble(plane_set):
    """Compose planes back into the integer grid (inverse of :func:`bit_slice`)."""
    planes = plane_set.planes.astype(np.int64)
    if plane_set.order == LSB_FIRST:
        planes = planes[::-1]
    q = planes.shape[0]
    weights = np.left_shift(1, np.arange(q - 1, -1, -1, dtype=np.int64))
    flat = (planes * weights[:, None]).sum(axis=0)
    return flat.reshape(plane_set.shape)
