"""Exception hierarchy for the library.

Every error raised on bad input derives from LoopAtlasError, so callers
(including the CLI) can distinguish domain failures from programming bugs.
"""


class LoopAtlasError(Exception):
    """Base class for all library errors."""


class InvalidCartanMatrixError(LoopAtlasError, ValueError):
    """Matrix fails the generalized Cartan matrix axioms or type checks."""


class TwistedTypeError(InvalidCartanMatrixError):
    """Corank-one matrix that is not an untwisted affinization."""


class ClassificationError(LoopAtlasError, ValueError):
    """Matrix matches no catalogued isomorphism class."""


class MixedAmbientError(LoopAtlasError, ValueError):
    """Operation combining objects over different ambient types."""


class InvalidSubsetError(LoopAtlasError, ValueError):
    """Node subset out of range, duplicated, or of the wrong shape."""


class UnsupportedRankError(LoopAtlasError, ValueError):
    """Rank outside the supported range for this operation."""


class RegionError(LoopAtlasError, ValueError):
    """Spectral parameter outside the region an operation requires."""
