"""Exception and warning types raised across the package."""


class ApostolError(Exception):
    """Base class for every error raised by :mod:`apostol`."""


class ValidationError(ApostolError, ValueError):
    """Input outside an operation's domain (CLI exit code 2)."""


class NumericalError(ApostolError, ArithmeticError):
    """A numerical procedure failed to meet its target (CLI exit code 3)."""


class ZeroLambda(ValidationError):
    pass


class ExcludedPole(ValidationError):
    pass


class InadmissibleKind(ValidationError):
    pass


class EmptySet(ValidationError):
    pass


class DomainError(ValidationError):
    pass


class UnitLambda(ValidationError):
    pass


class MinusOneLambda(ValidationError):
    pass


class WrongClass(ValidationError):
    pass


class NotReduced(ValidationError):
    pass


class NotRationalAngle(ValidationError):
    pass


class TooCloseToExceptional(ValidationError):
    pass


class QuadratureNonConvergence(NumericalError):
    pass


class IllConditionedWarning(RuntimeWarning):
    """Emitted when lambda is close enough to 1 that precision was raised."""
