"""Multiplicative Gamma speckle simulation and multilook averaging.

The multiplier field is i.i.d. Gamma(shape=L, scale=1/L): unit mean and
variance 1/L, so the equivalent number of looks of a speckled homogeneous
region is L.

Random numbers come from numpy's counter-based ``Philox`` bit generator
seeded with the user's 64-bit seed, and Gamma variates from
``Generator.standard_gamma`` (Marsaglia-Tsang rejection sampler). Values are
drawn in row-major pixel order, so any row-chunked generation that advances
the counter to the chunk start reproduces the sequential stream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError, StructuralError
from .image import Image

__all__ = ["SpeckleParams", "gamma_multipliers", "add_speckle", "average_looks"]


@dataclass(frozen=True)
class SpeckleParams:
    looks: int = 1
    seed: int = 0

    def __post_init__(self):
        if int(self.looks) != self.looks or self.looks < 1:
            raise DataError(f"looks must be a positive integer, got {self.looks!r}")
        if int(self.seed) != self.seed or not 0 <= self.seed < 2 ** 64:
            raise DataError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")


def gamma_multipliers(shape, looks, seed):
    """Unit-mean Gamma(looks, 1/looks) field of the given shape."""
    rng = np.random.Generator(np.random.Philox(int(seed)))
    return rng.standard_gamma(float(looks), size=shape) / looks


def add_speckle(image, params):
    """Multiply every pixel by an independent unit-mean Gamma variate.

    The result is neither rounded nor clamped; ``declared_max`` is kept.
    """
    n = gamma_multipliers(image.shape, params.looks, params.seed)
    return Image(image.samples * n, image.declared_max)


def average_looks(images):
    """Pixelwise arithmetic mean of equally sized images."""
    images = list(images)
    if not images:
        raise StructuralError("need at least one look to average")
    shape = images[0].shape
    for im in images[1:]:
        if im.shape != shape:
            raise StructuralError(f"look shapes differ: {shape} vs {im.shape}")
    stack = np.stack([im.samples for im in images])
    return Image(stack.mean(axis=0), images[0].declared_max)
