"""Exception hierarchy for the lab.

Every error raised on a documented failure path derives from LabError so
callers (and the CLI) can distinguish engine failures from programming bugs.
"""


class LabError(Exception):
    """Base class for all engine errors."""


class DimensionMismatchError(LabError):
    """Operands live in rings of different dimension."""


class ZeroElementError(LabError):
    """A nonzero element was required."""


class NotDivisibleError(LabError):
    """Exact division by a pivot power failed; indicates an internal logic error."""


class ParseError(LabError):
    """Malformed polynomial or sigma expression."""


class SequenceExhaustedError(LabError):
    """An explicit move list was asked for a move past its end."""


class NotStabilizedError(LabError):
    """A window-based limit did not settle within the requested horizon."""


class InvalidNormalizerError(LabError):
    """The chosen normalizer fails the stabilized-order proxy check."""


class NonArchimedeanSequenceError(LabError):
    """Operation requires an archimedean sequence."""


class ArchimedeanSequenceError(LabError):
    """Operation requires a non-archimedean sequence."""


class BadUniformizerError(LabError):
    """The uniformizer's stable order does not divide the probe's."""


class UndecidedEqualityError(LabError):
    """Interval enclosures overlap but equality could not be certified."""


class SigmaOutOfRangeError(LabError):
    """Sigma must be a real quadratic irrational greater than 2."""


class UnknownFamilyError(LabError):
    """No built-in sequence family with that name."""


class ConfigError(LabError):
    """Invalid run configuration; the message pinpoints the offending field."""
