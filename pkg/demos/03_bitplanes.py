"""
Bit-planes of a wavelet subband
===============================

Quantize the diagonal-detail subband of a speckled scene to 8 bits, slice it
into planes, and look at what the dual-order projection keeps.
"""

import numpy as np

from sbon.image import Image
from sbon.pipeline import dual_order_projection
from sbon.quantize import bit_slice, quantize, reassemble
from sbon.speckle import SpeckleParams, add_speckle
from sbon.wavelet import dwt2_forward

g = np.full((128, 128), 100.0)
g[32:96, 32:96] = 200.0
noisy = add_speckle(Image(g), SpeckleParams(4, 1))
hh = dwt2_forward(noisy.samples).subband(1, "HH")

q, params = quantize(hh, 8)
planes = bit_slice(q, 8)
print("quantization range:", params)
print("set bits per plane (MSB first):", planes.planes.sum(axis=1))

###############################################################################
# The projection ANDs the forward- and reverse-order orthonormalized sets, so a
# bit survives only when it is the single set bit of its coefficient.
projected = dual_order_projection(planes)
print("set bits after projection:   ", projected.planes.sum(axis=1))
q_out = reassemble(projected)
survivors = np.count_nonzero(q_out)
print(f"nonzero coefficients: {np.count_nonzero(q)} -> {survivors}")
print("surviving values:", np.unique(q_out[q_out > 0]))
