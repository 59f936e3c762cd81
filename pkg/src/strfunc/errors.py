"""Exception hierarchy shared by the exact and numeric layers."""


class StrfuncError(Exception):
    """Base class for every error raised by this package."""


class ZeroLeadingTerm(StrfuncError, ZeroDivisionError):
    """Division by a series that is zero to its known order."""


class OrderExceeded(StrfuncError):
    """A coefficient was requested beyond the truncation order."""


class DivergentProduct(StrfuncError):
    """An infinite q-product that does not converge formally."""


class ScaleOverflow(StrfuncError):
    """The exponent denominator grew past the configured cap."""


class NonGeneric(StrfuncError):
    """A theta function in a denominator vanishes identically."""


class NonGenericArgument(NonGeneric):
    pass


class ZeroThetaDenominator(NonGeneric):
    pass


class AppellPole(StrfuncError):
    """A factor 1 - q^0 appeared in an Appell function denominator."""


class ZeroLevel(StrfuncError):
    """The admissible level N is zero, so the anomaly is undefined."""


class InvalidSpec(StrfuncError, ValueError):
    """String-function parameters violate an admissibility condition."""


class UnknownCase(StrfuncError, KeyError):
    """No registered identity case matches the requested filter."""


class InsufficientPrecision(StrfuncError):
    """A truncated series is too short for the requested tolerance."""


class QuadratureFailure(StrfuncError):
    """Numerical integration did not meet its error target."""
