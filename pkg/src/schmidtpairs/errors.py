"""Exception types raised across the package.

All of them derive from :class:`ValueError` so callers that only care about
"bad input" can catch that.
"""


class SchmidtPairsError(ValueError):
    """Base class for every error raised by this package."""


class InvalidInput(SchmidtPairsError):
    pass


class DimensionMismatch(SchmidtPairsError):
    pass


class NotHermitian(SchmidtPairsError):
    pass


class NotUnitary(SchmidtPairsError):
    pass


class SingularMatrix(SchmidtPairsError):
    pass


class NoGeodesic(SchmidtPairsError):
    """The corner dimensions dim(L0 & L^perp) and dim(L0^perp & L) differ."""


class EmptyGenericPart(SchmidtPairsError):
    pass


class NotComplementary(SchmidtPairsError):
    """P_S - P_T is not invertible, so S and T are not a direct sum."""


class NotContraction(SchmidtPairsError):
    pass


class InvalidSymbol(SchmidtPairsError):
    pass


class ConfluentZeros(SchmidtPairsError):
    pass


class GridTooCoarse(SchmidtPairsError):
    pass


class RankDecisionError(SchmidtPairsError):
    """Subspace dimensions inferred from singular values are inconsistent.

    Happens when some principal angle sits right on the rank tolerance.
    """
