"""Exception hierarchy shared by all sbon modules."""


class SbonError(Exception):
    """Base class for every error raised by this package."""


class DataError(SbonError, ValueError):
    """Input values are unusable (non-finite, malformed, out of range)."""


class PGMParseError(DataError):
    """A PGM byte stream could not be decoded.

    Parameters
    ----------
    message : str
        What went wrong.
    offset : int
        Byte offset in the stream where the problem was detected.
    """

    def __init__(self, message, offset):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


class SampleRangeError(DataError):
    """A sample or integer value lies outside its admissible range."""


class DimensionError(SbonError, ValueError):
    """Grid dimensions are incompatible with the requested operation."""


class StructuralError(SbonError, ValueError):
    """Operands have inconsistent shapes or lengths."""


class DegenerateInputError(SbonError, ValueError):
    """A statistic is undefined for the given input (e.g. zero variance)."""
