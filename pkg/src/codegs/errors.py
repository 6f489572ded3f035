"""Exception types shared across the package."""


class CodeGSError(Exception):
    """Base class for library errors."""


class DimensionError(CodeGSError, ValueError):
    """Operand shapes do not conform."""


class NoSolution(CodeGSError):
    """An affine system has no solution."""


class ZeroInversionError(CodeGSError, ZeroDivisionError):
    """Inverse of the zero field element requested."""


class ModulusError(CodeGSError, ValueError):
    """Polynomial modulus is not monic or has degree < 1."""


class ParameterError(CodeGSError, ValueError):
    """Inconsistent scheme or code parameters."""


class DecodeFailure(CodeGSError):
    """Goppa decoding could not correct the received word."""


class RangeError(CodeGSError, ValueError):
    """Index outside its admissible range."""


class WitnessRelationError(CodeGSError):
    """A witness does not satisfy the relation it is claimed to satisfy."""


class ExtractError(CodeGSError):
    """Knowledge extraction from three transcripts failed."""


class DecompressError(CodeGSError, ValueError):
    """A seed-compressed response is malformed."""


class FormatError(CodeGSError, ValueError):
    """Serialized data could not be parsed."""
