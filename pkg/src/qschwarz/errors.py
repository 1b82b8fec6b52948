"""Exception hierarchy shared by the series, solver and numerics layers."""


class QSchwarzError(Exception):
    """Base class for every error raised by this package."""


class PreconditionError(QSchwarzError, ValueError):
    """An operation was called outside its domain."""


class LogTimesLog(QSchwarzError, ArithmeticError):
    """Product of two series with log parts; L**2 is not representable."""


class DivisionByZeroSeries(QSchwarzError, ZeroDivisionError):
    pass


class ZeroSeries(PreconditionError):
    pass


class NotMonic(PreconditionError):
    pass


class NonPositiveLead(PreconditionError):
    pass


class ZeroDerivative(PreconditionError):
    pass


class LogInDenominator(PreconditionError):
    pass


class NonPositiveR(PreconditionError):
    """r = (k+1)/6 must be positive (equivalently k > -1)."""


class InconsistentKR(PreconditionError):
    pass


class NonUpperHalfPlane(PreconditionError):
    pass


class TailBoundViolated(PreconditionError):
    pass


class PoleHit(PreconditionError):
    pass


class NotInGamma5(PreconditionError):
    pass


class DegeneratePoints(PreconditionError):
    pass


class UnknownSeries(PreconditionError):
    pass
