import numpy as np
import pytest

from sbon.image import Image


def make_phantom(size=256, declared_max=255, scale=1.0):
    """Piecewise-constant test scene: background, two rectangles and a square."""
    g = np.full((size, size), 60.0)
    s = size / 256
    g[int(64 * s):int(192 * s), int(64 * s):int(192 * s)] = 180.0
    g[int(100 * s):int(150 * s), int(20 * s):int(60 * s)] = 120.0
    g[int(200 * s):int(240 * s), int(150 * s):int(250 * s)] = 220.0
    return Image(g * scale, declared_max)


@pytest.fixture
def phantom():
    return make_phantom()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
