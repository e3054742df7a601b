"""Exception hierarchy.

Two families matter to callers: ``InputError`` (the caller handed us something
that violates a precondition) and ``NumericalFailure`` (the input looked fine
but an iteration, extraction or verification step did not reach tolerance).
The CLI maps them to exit codes 2 and 3.
"""


class CrmapsError(Exception):
    """Base class for every error raised by this package."""


class InputError(CrmapsError, ValueError):
    pass


class NumericalFailure(CrmapsError, ArithmeticError):
    pass


# -- input / precondition errors ------------------------------------------

class NonHermitianInput(InputError):
    pass


class NonSquareInput(InputError):
    pass


class NonSquareDims(InputError):
    """Operation needs k == m."""


class DimensionMismatch(InputError):
    pass


DimMismatch = DimensionMismatch


class ZeroOperator(InputError):
    pass


class NotPsdInput(InputError):
    pass


class NotAnEigenvector(InputError):
    pass


class NotOrthonormal(InputError):
    pass


class InputNotUnbiased(InputError):
    pass


class NotPrime(InputError):
    pass


class BadDimension(InputError):
    pass


class SpectrumNotZeroOne(InputError):
    pass


class ParseError(InputError):
    """Malformed matrix or basis file.

    ``where`` carries a field path such as ``data[17][1]`` when known.
    """

    def __init__(self, message, where=None):
        self.where = where
        if where is not None:
            message = f"{where}: {message}"
        super().__init__(message)


# -- numerical failures ----------------------------------------------------

class NoConvergence(NumericalFailure):
    pass


class ZeroMap(NumericalFailure):
    pass


class DegenerateClusterFailure(NumericalFailure):
    pass


class RecursionLimit(NumericalFailure):
    pass


class SpectrumMismatch(NumericalFailure):
    pass


class ExtractionFailure(NumericalFailure):
    pass


class BudgetExhausted(NumericalFailure):
    pass


class NotCompletelyReducible(NumericalFailure):
    """Raised when a decomposition that requires complete reducibility fails.

    The failing :class:`~crmaps.reducibility.ReducibilityReport` is attached
    as ``report`` so callers can inspect the witness.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
