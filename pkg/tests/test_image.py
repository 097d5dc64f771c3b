import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from sbon.errors import DataError, PGMParseError, SampleRangeError
from sbon.image import Image, clamp_to_depth, read_image, read_pgm, write_pgm, write_raw


def test_read_p5_8bit():
    img = read_pgm(b"P5 2 2 255\n" + bytes([0, 255, 128, 64]))
    assert (img.width, img.height, img.declared_max) == (2, 2, 255)
    assert img.samples.ravel().tolist() == [0, 255, 128, 64]


def test_read_p2_single_pixel():
    img = read_pgm(b"P2 1 1 255 7")
    assert img.shape == (1, 1)
    assert img.samples[0, 0] == 7


def test_read_p5_16bit_big_endian():
    img = read_pgm(b"P5\n2 1\n65535\n" + bytes([0x01, 0x02, 0xFF, 0xFE]))
    assert img.samples.ravel().tolist() == [0x0102, 0xFFFE]


def test_comments_are_skipped():
    img = read_pgm(b"P2\n# made by hand\n2 1 # trailing\n255\n# mid\n3 4\n")
    assert img.samples.ravel().tolist() == [3, 4]


@pytest.mark.parametrize(
    "data, fragment",
    [
        (b"P5 2 2 300\n" + bytes(4), "unsupported maxval"),
        (b"P5 2 2 255\n" + bytes(3), "truncated"),
        (b"P2 2 2 255 1 2 3", "truncated"),
        (b"P6 1 1 255\n\x00", "magic"),
        (b"P5 x 1 255\n\x00", "width"),
        (b"P2 1 1 255 256", "exceeds maxval"),
    ],
)
def test_malformed_streams(data, fragment):
    with pytest.raises(PGMParseError, match=fragment) as exc:
        read_pgm(data)
    assert "byte offset" in str(exc.value)
    assert exc.value.offset >= 0


def test_maxval_error_names_offset():
    with pytest.raises(PGMParseError) as exc:
        read_pgm(b"P5 2 2 300\n" + bytes(4))
    assert exc.value.offset == 7


def test_write_rounds_half_away():
    img = Image([[255.4, 0.5, 1.49]], 255)
    assert read_pgm(write_pgm(img)).samples.ravel().tolist() == [255, 1, 1]


def test_write_out_of_range():
    with pytest.raises(SampleRangeError, match=r"row=0, col=1"):
        write_pgm(Image([[0.0, 256.0]], 255))


def test_write_never_emits_comments():
    assert b"#" not in write_pgm(Image([[1.0]]), "P2")


@pytest.mark.parametrize("fmt", ["P2", "P5"])
@pytest.mark.parametrize("maxval", [255, 65535])
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_roundtrip_exact(fmt, maxval, data):
    grid = data.draw(
        arrays(np.int64, st.tuples(st.integers(1, 6), st.integers(1, 6)), elements=st.integers(0, maxval))
    )
    img = Image(grid, maxval)
    assert read_pgm(write_pgm(img, fmt)) == img


def test_raw_roundtrip_is_lossless():
    img = Image([[0.1, 1e-300], [123.456789012345, 7.0]], 65535)
    assert read_image(write_raw(img)) == img


def test_image_invariants():
    with pytest.raises(DataError):
        Image([[-1.0]])
    with pytest.raises(DataError):
        Image([[np.nan]])
    with pytest.raises(DataError):
        Image([[1.0]], 1023)


def test_clamp_examples():
    assert clamp_to_depth(np.array([[-3.0, 10.0, 300.0]]), 255).samples.tolist() == [[0, 10, 255]]
    assert clamp_to_depth(-np.ones((2, 3)), 255).samples.tolist() == [[0, 0, 0], [0, 0, 0]]
    img = Image([[3.0, 200.0]])
    assert clamp_to_depth(img) == img


def test_clamp_idempotent(rng):
    img = Image(rng.uniform(0, 70000, (5, 7)), 65535)
    once = clamp_to_depth(img)
    assert clamp_to_depth(once) == once
    assert once.samples.max() <= 65535
