"""Wavelet-domain SAR despeckling by Boolean orthonormalization of bit-planes.

Modules
-------
image      grayscale image container and PGM codec
wavelet    orthonormal Haar DWT-2D
quantize   affine quantization and bit-plane slicing
bop        Boolean orthonormalization of binary vector sets
shrinkage  VisuShrink hard/soft thresholding
pipeline   despeckling drivers
speckle    Gamma speckle simulation
metrics    quality metrics (NMV, NV, MSE, SNR, MSD, ENL, DR, FOM)
"""

from .errors import (
    DataError,
    DegenerateInputError,
    DimensionError,
    PGMParseError,
    SampleRangeError,
    SbonError,
    StructuralError,
)
from .image import Image, clamp_to_depth, read_pgm, write_pgm
from .pipeline import DespeckleConfig, despeckle, sbon_despeckle, visushrink_despeckle
from .speckle import SpeckleParams, add_speckle, average_looks

__version__ = "0.1.0"
