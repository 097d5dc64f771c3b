import numpy as np
import pytest

from sbon.errors import DataError, StructuralError
from sbon.image import Image
from sbon.metrics import enl_tiled
from sbon.speckle import SpeckleParams, add_speckle, average_looks, gamma_multipliers


def test_zero_image_stays_zero():
    out = add_speckle(Image(np.zeros((8, 8))), SpeckleParams(4, 1))
    assert not out.samples.any()


def test_deterministic():
    img = Image(np.full((16, 16), 50.0))
    a = add_speckle(img, SpeckleParams(2, 99))
    b = add_speckle(img, SpeckleParams(2, 99))
    c = add_speckle(img, SpeckleParams(2, 100))
    assert a == b
    assert a != c


def test_pinned_stream():
    # freezes the generator/sampler pair; a change here breaks golden outputs
    n = gamma_multipliers((3,), 1, 0)
    np.testing.assert_allclose(n, gamma_multipliers((3,), 1, 0))
    assert n.shape == (3,)
    head = gamma_multipliers((5,), 4, 7)
    np.testing.assert_array_equal(gamma_multipliers((10,), 4, 7)[:5], head)


def test_constant_image_mean_clt():
    out = add_speckle(Image(np.full((256, 256), 100.0)), SpeckleParams(4, 3))
    sigma_m = (1 / np.sqrt(4)) / 256
    assert abs(out.samples.mean() - 100) <= 100 * 4 * sigma_m


def test_output_not_clamped_and_depth_kept():
    out = add_speckle(Image(np.full((64, 64), 250.0)), SpeckleParams(1, 5))
    assert out.samples.max() > 255
    assert out.declared_max == 255


def test_multiplicative_scaling():
    img = Image(np.random.default_rng(0).uniform(0, 200, (32, 32)))
    p = SpeckleParams(3, 11)
    np.testing.assert_allclose(
        add_speckle(img.with_samples(img.samples * 3.7), p).samples,
        3.7 * add_speckle(img, p).samples,
        rtol=1e-12,
    )


@pytest.mark.parametrize("looks", [1, 4, 16])
def test_multiplier_moments(looks):
    n = gamma_multipliers(10 ** 6, looks, 2024 + looks)
    se = np.sqrt(1 / looks) / np.sqrt(n.size)
    assert abs(n.mean() - 1) < 3 * se
    assert n.var() == pytest.approx(1 / looks, rel=0.10)


def test_params_validation():
    with pytest.raises(DataError):
        SpeckleParams(0, 1)
    with pytest.raises(DataError):
        SpeckleParams(1, -1)
    with pytest.raises(DataError):
        SpeckleParams(1, 2 ** 64)


def test_average_looks_identity_and_copies():
    img = Image(np.arange(12.0).reshape(3, 4))
    assert average_looks([img]) == img
    assert average_looks([img, img, img]) == img


def test_average_looks_mismatch():
    with pytest.raises(StructuralError):
        average_looks([Image(np.zeros((2, 2))), Image(np.zeros((2, 3)))])
    with pytest.raises(StructuralError):
        average_looks([])


@pytest.mark.parametrize("looks", [2, 4, 8])
def test_multilook_average_enl(looks):
    base = Image(np.full((256, 256), 80.0))
    reals = [add_speckle(base, SpeckleParams(1, 500 + k)) for k in range(looks)]
    assert enl_tiled(average_looks(reals)) == pytest.approx(looks, rel=0.15)
