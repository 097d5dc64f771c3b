"""End-to-end despeckling drivers.

``sbon`` runs, for each detail subband (LH, HL, HH) of every level, leaving
the approximation untouched:

1. forward Haar DWT-2D,
2. per-subband affine quantization to ``bits``-bit integers,
3. bit-slicing into planes (most significant first),
4. projection of the plane set (see :func:`dual_order_projection`),
5. re-assembly of the projected planes,
6. rescaling with the step-2 parameters,
7. inverse DWT-2D and clamping to the image bit depth.

``visu_hard`` / ``visu_soft`` threshold each detail subband with the
universal threshold, using a noise estimate from the HH subband of the same
level.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import bop
from .errors import DataError
from .image import Image, clamp_to_depth
from .quantize import BitPlaneSet, MSB_FIRST, bit_slice, dequantize, quantize, reassemble
from .shrinkage import ShrinkageParams, hard_threshold, soft_threshold, visushrink_params
from .wavelet import SUBBANDS, WaveletDecomposition, dwt2_forward, dwt2_inverse

__all__ = [
    "METHODS",
    "PROJECTIONS",
    "DespeckleConfig",
    "SubbandTrace",
    "DespeckleTrace",
    "dual_order_projection",
    "identity_projection",
    "sbon_trace",
    "sbon_despeckle",
    "visushrink_trace",
    "visushrink_despeckle",
    "despeckle",
]

METHODS = ("sbon", "visu_hard", "visu_soft")
PROJECTIONS = ("dual_order", "identity")


@dataclass(frozen=True)
class DespeckleConfig:
    method: str = "sbon"
    levels: int = 1
    bits: int = 8
    projection: str = "dual_order"
    wavelet: str = "haar"

    def __post_init__(self):
        if self.method not in METHODS:
            raise DataError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.projection not in PROJECTIONS:
            raise DataError(f"projection must be one of {PROJECTIONS}, got {self.projection!r}")
        if int(self.levels) != self.levels or self.levels < 1:
            raise DataError(f"levels must be a positive integer, got {self.levels!r}")
        if int(self.bits) != self.bits or not 1 <= self.bits <= 16:
            raise DataError(f"bits must be an integer in [1, 16], got {self.bits!r}")
        if self.wavelet != "haar":
            raise DataError(f"only the 'haar' wavelet is supported, got {self.wavelet!r}")


def identity_projection(planes):
    return planes


def dual_order_projection(planes):
    """AND of the forward-order and reverse-order orthonormalized plane sets.

    Version-1 orthonormalization runs once on the planes most significant
    first and once least significant first; the second result is put back in
    the original indexing and the two sets are ANDed plane by plane.
    """
    if planes.order != MSB_FIRST:
        raise DataError("projection expects most-significant-first planes")
    packed = bop.PackedBits.from_bits(planes.planes)
    forward, _ = bop.bop_v1_packed(packed.words)
    backward, _ = bop.bop_v1_packed(packed.words[::-1].copy())
    projected = bop.PackedBits(forward & backward[::-1], packed.length).to_bits()
    return BitPlaneSet(projected, planes.shape, MSB_FIRST)


_PROJECTIONS = {"dual_order": dual_order_projection, "identity": identity_projection}


@dataclass
class SubbandTrace:
    """Intermediates for one detail subband."""

    level: int
    name: str
    coeffs: np.ndarray
    restored: np.ndarray
    quant: object = None
    int_grid: np.ndarray | None = None
    planes_in: BitPlaneSet | None = None
    planes_out: BitPlaneSet | None = None
    int_out: np.ndarray | None = None
    shrink: ShrinkageParams | None = None

    @property
    def key(self):
        return f"L{self.level}_{self.name}"


@dataclass
class DespeckleTrace:
    config: DespeckleConfig
    decomposition: WaveletDecomposition
    subbands: list = field(default_factory=list)
    output: Image | None = None


def _sbon_subband(coeffs, config, project):
    int_grid, params = quantize(coeffs, config.bits)
    planes_in = bit_slice(int_grid, config.bits)
    planes_out = project(planes_in)
    int_out = reassemble(planes_out)
    restored = dequantize(int_out, params)
    return int_grid, params, planes_in, planes_out, int_out, restored


def sbon_trace(image, config=DespeckleConfig()):
    """Run the bit-plane pipeline and keep every intermediate."""
    project = _PROJECTIONS[config.projection]
    dec = dwt2_forward(image.samples, config.levels)
    out = dec.copy()
    trace = DespeckleTrace(config, dec)
    for level in range(1, dec.levels + 1):
        for name in SUBBANDS:
            coeffs = dec.subband(level, name)
            int_grid, params, p_in, p_out, int_out, restored = _sbon_subband(coeffs, config, project)
            out.details[level - 1][name] = restored
            trace.subbands.append(
                SubbandTrace(level, name, coeffs, restored, params, int_grid, p_in, p_out, int_out)
            )
    trace.output = clamp_to_depth(dwt2_inverse(out), image.declared_max)
    return trace


def sbon_despeckle(image, config=DespeckleConfig()):
    """Despeckle by bit-plane orthonormalization of the detail subbands."""
    return sbon_trace(image, config).output


def visushrink_trace(image, config=DespeckleConfig(method="visu_hard")):
    thresh = {"visu_hard": hard_threshold, "visu_soft": soft_threshold}[config.method]
    dec = dwt2_forward(image.samples, config.levels)
    out = dec.copy()
    trace = DespeckleTrace(config, dec)
    for level in range(1, dec.levels + 1):
        hh = dec.subband(level, "HH")
        for name in SUBBANDS:
            coeffs = dec.subband(level, name)
            params = visushrink_params(hh, coeffs.size)
            restored = thresh(coeffs, params.lam)
            out.details[level - 1][name] = restored
            trace.subbands.append(SubbandTrace(level, name, coeffs, restored, shrink=params))
    trace.output = clamp_to_depth(dwt2_inverse(out), image.declared_max)
    return trace


def visushrink_despeckle(image, config=DespeckleConfig(method="visu_hard")):
    """Universal-threshold (VisuShrink) hard or soft thresholding baseline."""
    if config.method not in ("visu_hard", "visu_soft"):
        raise DataError(f"visushrink needs method visu_hard or visu_soft, got {config.method!r}")
    return visushrink_trace(image, config).output


def despeckle(image, config=DespeckleConfig()):
    """Dispatch on ``config.method``."""
    if config.method == "sbon":
        return sbon_despeckle(image, config)
    return visushrink_despeckle(image, config)


def trace(image, config=DespeckleConfig()):
    if config.method == "sbon":
        return sbon_trace(image, config)
    return visushrink_trace(image, config)
