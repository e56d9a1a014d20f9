"""Exception hierarchy shared by every layer of the package."""


class FrobspaceError(Exception):
    pass


class WrongRing(FrobspaceError):
    """Operation is not available over the matrix's scalar ring."""


class Singular(FrobspaceError):
    pass


class NotUnimodular(FrobspaceError):
    pass


class DimensionMismatch(FrobspaceError, ValueError):
    pass


class NotCentral(FrobspaceError):
    pass


class NoSolution(FrobspaceError):
    pass


class DeterministicTooLarge(FrobspaceError):
    pass


class InfiniteDimensional(FrobspaceError):
    pass


class ParseError(FrobspaceError):
    pass


class ValidationError(FrobspaceError):
    def __init__(self, message, failures=()):
        super().__init__(message)
        self.failures = list(failures)


class NotPrime(FrobspaceError):
    pass
