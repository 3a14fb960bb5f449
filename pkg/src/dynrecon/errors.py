"""Exception types raised across the package.

Every error derives from :class:`ReconError` so callers (and the CLI) can
catch the whole family at once.
"""


class ReconError(Exception):
    """Base class for all package errors."""


class StateNotFound(ReconError, KeyError):
    pass


class MapNotTotal(ReconError, ValueError):
    pass


class InvalidStride(ReconError, ValueError):
    pass


class InvalidDiagram(ReconError, ValueError):
    pass


class DomainMismatch(ReconError, ValueError):
    pass


class InvalidWindow(ReconError, ValueError):
    pass


class SequenceTooShort(ReconError, ValueError):
    pass


class UnknownWord(ReconError, KeyError):
    pass


class LengthMismatch(ReconError, ValueError):
    pass


class AlphabetMismatch(ReconError, ValueError):
    pass


class OrderTooLarge(ReconError, ValueError):
    pass


class InvalidTimeSeriesData(ReconError, ValueError):
    pass


class NondeterministicReconstruction(ReconError, ValueError):
    pass


class InvalidTsdMorphism(ReconError, ValueError):
    pass


class NothingToReduce(ReconError, ValueError):
    pass


class FormatError(ReconError, ValueError):
    """A file could not be parsed against its schema."""
