import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from sbon.errors import DataError, SampleRangeError, StructuralError
from sbon.quantize import (
    LSB_FIRST,
    MSB_FIRST,
    BitPlaneSet,
    QuantParams,
    bit_slice,
    dequantize,
    quantize,
    reassemble,
)


def test_quantize_midpoint_rounds_up():
    q, p = quantize(np.array([-1.0, 0.0, 1.0]), 8)
    assert q.tolist() == [0, 128, 255]
    assert p == QuantParams(-1.0, 1.0, 8)


def test_quantize_constant():
    q, p = quantize(np.full((3, 3), 4.2), 6)
    assert not q.any()
    assert (p.c_min, p.c_max, p.bits) == (4.2, 4.2, 6)


def test_quantize_endpoints():
    q, _ = quantize(np.array([0.0, 255.0]), 8)
    assert q.tolist() == [0, 255]


def test_quantize_rejects_nonfinite():
    with pytest.raises(DataError):
        quantize(np.array([0.0, np.inf]))


def test_dequantize_examples():
    g = dequantize(np.array([0, 128, 255]), QuantParams(-1.0, 1.0, 8))
    np.testing.assert_allclose(g, [-1.0, 1.0 / 255.0, 1.0], atol=1e-15)
    assert dequantize(np.zeros((2, 2), int), QuantParams(5.0, 5.0, 8)).tolist() == [[5, 5], [5, 5]]


def test_dequantize_range_check():
    with pytest.raises(SampleRangeError):
        dequantize(np.array([256]), QuantParams(0.0, 1.0, 8))


def test_bit_slice_examples():
    planes = bit_slice(np.array([[5, 0]]), 3)
    assert planes.order == MSB_FIRST
    assert planes.planes[:, 0].tolist() == [1, 0, 1]
    assert not bit_slice(np.zeros((2, 3), int), 4).planes.any()
    assert bit_slice(np.full((2, 3), 15), 4).planes.all()
    assert bit_slice(np.zeros((2, 3), int), 4).bits == 4


def test_bit_slice_range_check():
    with pytest.raises(SampleRangeError):
        bit_slice(np.array([[8]]), 3)


def test_reassemble_examples():
    ps = BitPlaneSet(np.array([[1], [0], [1]]), (1, 1))
    assert reassemble(ps).tolist() == [[5]]
    assert reassemble(BitPlaneSet(np.ones((1, 4)), (2, 2))).tolist() == [[1, 1], [1, 1]]
    # same value stored least significant first
    assert reassemble(BitPlaneSet(np.array([[1], [0], [1]])[::-1], (1, 1), LSB_FIRST)).tolist() == [[5]]


def test_plane_set_validation():
    with pytest.raises(StructuralError):
        BitPlaneSet(np.zeros((2, 5)), (2, 2))
    with pytest.raises(DataError):
        BitPlaneSet(np.full((2, 4), 2), (2, 2))


@pytest.mark.parametrize("bits", [1, 2, 3, 4])
def test_roundtrip_exhaustive_small_depths(bits):
    values = np.arange(2 ** bits).reshape(1, -1)
    assert np.array_equal(reassemble(bit_slice(values, bits)), values)
    reversed_ = bit_slice(values, bits).reversed()
    assert np.array_equal(reassemble(reversed_), values)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 16), st.integers(0, 2 ** 32 - 1))
def test_roundtrip_random(bits, seed):
    g = np.random.default_rng(seed).integers(0, 2 ** bits, size=(5, 7))
    assert np.array_equal(reassemble(bit_slice(g, bits)), g)


finite = st.floats(-1e6, 1e6, allow_nan=False)


@settings(max_examples=100, deadline=None)
@given(arrays(np.float64, st.integers(1, 40), elements=finite), st.integers(1, 16))
def test_dequantize_half_step_bound(g, bits):
    q, p = quantize(g, bits)
    assert q.min() >= 0 and q.max() <= 2 ** bits - 1
    err = np.abs(dequantize(q, p) - g)
    assert np.all(err <= (p.c_max - p.c_min) / (2 * (2 ** bits - 1)) + 1e-12 + 1e-15 * np.abs(g))


@settings(max_examples=100, deadline=None)
@given(arrays(np.float64, st.integers(2, 40), elements=finite), st.integers(1, 16))
def test_quantize_monotone(g, bits):
    q, _ = quantize(g, bits)
    order = np.argsort(g, kind="stable")
    assert np.all(np.diff(q[order]) >= 0)
