"""Grayscale image container and bit-exact PGM (P2/P5) codec.

Samples are held as float64 so that wavelet and thresholding stages can work
on real values; rounding to integers happens only when writing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import DataError, PGMParseError, SampleRangeError

__all__ = [
    "Image",
    "SUPPORTED_MAXVALS",
    "read_pgm",
    "write_pgm",
    "clamp_to_depth",
    "round_half_away",
    "read_raw",
    "write_raw",
    "read_image",
]

SUPPORTED_MAXVALS = (255, 65535)


def round_half_away(x):
    """Round to nearest integer, ties away from zero (float64 result)."""
    x = np.asarray(x, dtype=np.float64)
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


@dataclass(frozen=True, eq=False)
class Image:
    """Single-band image with a declared bit depth.

    Parameters
    ----------
    samples : array_like
        2-D grid of shape ``(height, width)``; finite and non-negative.
    declared_max : int
        255 or 65535.
    """

    samples: np.ndarray
    declared_max: int = 255

    def __post_init__(self):
        arr = np.array(self.samples, dtype=np.float64, copy=True)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise DataError(f"image samples must be a non-empty 2-D grid, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise DataError("image samples must be finite")
        if np.any(arr < 0):
            raise DataError("image samples must be non-negative")
        if self.declared_max not in SUPPORTED_MAXVALS:
            raise DataError(f"declared_max must be one of {SUPPORTED_MAXVALS}, got {self.declared_max}")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)
        object.__setattr__(self, "declared_max", int(self.declared_max))

    @property
    def height(self):
        return self.samples.shape[0]

    @property
    def width(self):
        return self.samples.shape[1]

    @property
    def shape(self):
        return self.samples.shape

    def with_samples(self, samples):
        """New image with the same depth and different samples."""
        return Image(samples, self.declared_max)

    def __eq__(self, other):
        if not isinstance(other, Image):
            return NotImplemented
        return self.declared_max == other.declared_max and np.array_equal(self.samples, other.samples)

    def __repr__(self):
        return f"Image({self.width}x{self.height}, declared_max={self.declared_max})"


def clamp_to_depth(image, declared_max=None):
    """Clip every sample into ``[0, declared_max]``.

    Accepts an :class:`Image`, or a raw real grid (which may hold negative
    values, e.g. an inverse transform) together with ``declared_max``.
    """
    if isinstance(image, Image):
        declared_max = image.declared_max if declared_max is None else declared_max
        grid = image.samples
    else:
        if declared_max is None:
            raise DataError("declared_max is required when clamping a raw grid")
        grid = np.asarray(image, dtype=np.float64)
    return Image(np.clip(grid, 0, declared_max), declared_max)


_WS = b" \t\n\r\v\f"


class _HeaderReader:
    """Tokenizer for the netpbm header: whitespace separated, ``#`` comments to EOL."""

    def __init__(self, data):
        self.data = data
        self.pos = 0

    def _skip(self):
        data = self.data
        while self.pos < len(data):
            c = data[self.pos:self.pos + 1]
            if c in _WS and c:
                self.pos += 1
            elif c == b"#":
                end = data.find(b"\n", self.pos)
                self.pos = len(data) if end < 0 else end + 1
            else:
                break

    def token(self, what):
        self._skip()
        start = self.pos
        data = self.data
        while self.pos < len(data) and data[self.pos:self.pos + 1] not in _WS and data[self.pos:self.pos + 1] != b"#":
            self.pos += 1
        if start == self.pos:
            raise PGMParseError(f"missing {what}", start)
        return data[start:self.pos], start

    def integer(self, what):
        tok, start = self.token(what)
        if not tok.isdigit():
            raise PGMParseError(f"invalid {what} {tok!r}", start)
        return int(tok), start


def read_pgm(data):
    """Decode a P2 or P5 PGM byte stream.

    Stored values are returned unchanged (no rescaling). 16-bit P5 payloads
    are big-endian.

    Raises
    ------
    PGMParseError
        Malformed header, unsupported maxval or truncated payload; the
        message names the byte offset.
    """
    data = bytes(data)
    reader = _HeaderReader(data)
    magic, _ = reader.token("magic number")
    if magic not in (b"P2", b"P5"):
        raise PGMParseError(f"unsupported magic number {magic!r}", 0)
    width, off = reader.integer("width")
    if width < 1:
        raise PGMParseError("width must be positive", off)
    height, off = reader.integer("height")
    if height < 1:
        raise PGMParseError("height must be positive", off)
    maxval, off = reader.integer("maxval")
    if maxval not in SUPPORTED_MAXVALS:
        raise PGMParseError(f"unsupported maxval {maxval}", off)
    n = width * height

    if magic == b"P5":
        # exactly one whitespace byte separates maxval from the payload
        if reader.pos >= len(data) or data[reader.pos:reader.pos + 1] not in _WS:
            raise PGMParseError("expected single whitespace before binary payload", reader.pos)
        start = reader.pos + 1
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        need = n * dtype.itemsize
        if len(data) - start < need:
            raise PGMParseError(
                f"truncated payload: expected {need} bytes, found {len(data) - start}", len(data)
            )
        values = np.frombuffer(data, dtype=dtype, count=n, offset=start).astype(np.float64)
        if values.max() > maxval:
            bad = int(np.argmax(values > maxval))
            raise PGMParseError("sample exceeds maxval", start + bad * dtype.itemsize)
    else:
        values = np.empty(n, dtype=np.float64)
        for k in range(n):
            try:
                v, off = reader.integer("sample")
            except PGMParseError as exc:
                raise PGMParseError(f"truncated payload: expected {n} samples, found {k}", exc.offset) from None
            if v > maxval:
                raise PGMParseError("sample exceeds maxval", off)
            values[k] = v

    return Image(values.reshape(height, width), maxval)


def write_pgm(image, format="P5"):
    """Encode an image as PGM bytes.

    Samples are rounded half away from zero, then range-checked against
    ``declared_max``. No comments are written.

    Raises
    ------
    SampleRangeError
        A rounded sample falls outside ``[0, declared_max]``; the message
        gives its (row, column).
    """
    if format not in ("P2", "P5"):
        raise ValueError(f"format must be 'P2' or 'P5', got {format!r}")
    q = round_half_away(image.samples)
    bad = (q < 0) | (q > image.declared_max)
    if bad.any():
        r, c = (int(i) for i in np.argwhere(bad)[0])
        raise SampleRangeError(
            f"sample {image.samples[r, c]!r} at (row={r}, col={c}) outside [0, {image.declared_max}]"
        )
    header = f"{format}\n{image.width} {image.height}\n{image.declared_max}\n".encode("ascii")
    if format == "P5":
        dtype = ">u2" if image.declared_max > 255 else "u1"
        return header + q.astype(dtype).tobytes()
    ints = q.astype(np.int64)
    lines = [" ".join(map(str, row)) for row in ints.tolist()]
    return header + ("\n".join(lines) + "\n").encode("ascii")


# Plain-text float grid used for loss-free chaining between CLI commands.
_RAW_MAGIC = "# sbon-raw"
_RAW_HEADER = re.compile(r"# sbon-raw (\d+) (\d+) (\d+)")


def write_raw(image):
    """Serialize an image as a plain-text float grid (exact via ``repr``)."""
    out = [f"{_RAW_MAGIC} {image.width} {image.height} {image.declared_max}"]
    out.extend(" ".join(repr(float(v)) for v in row) for row in image.samples)
    return ("\n".join(out) + "\n").encode("ascii")


def read_raw(data):
    text = bytes(data).decode("ascii")
    lines = text.splitlines()
    m = _RAW_HEADER.fullmatch(lines[0].strip()) if lines else None
    if m is None:
        raise PGMParseError("missing sbon-raw header", 0)
    width, height, maxval = (int(g) for g in m.groups())
    try:
        rows = [[float(tok) for tok in line.split()] for line in lines[1:] if line.strip()]
        arr = np.array(rows, dtype=np.float64)
    except ValueError as exc:
        raise DataError(f"bad raw grid: {exc}") from None
    if arr.shape != (height, width):
        raise DataError(f"raw grid shape {arr.shape} does not match header {(height, width)}")
    return Image(arr, maxval)


def read_image(data):
    """Decode either a PGM stream or a raw float grid, by magic."""
    if bytes(data[:len(_RAW_MAGIC)]) == _RAW_MAGIC.encode("ascii"):
        return read_raw(data)
    return read_pgm(data)
