"""Exception types raised by the library."""


class PrequantError(ValueError):
    """Base class for every domain error."""


class NonHomologous(PrequantError):
    pass


class NegativeDegree(PrequantError):
    pass


class DegenerateRotation(PrequantError):
    pass


class WrongEndCount(PrequantError):
    pass


class TooFewEnds(PrequantError):
    pass


class InconsistentCover(PrequantError):
    pass


class PreconditionViolated(PrequantError):
    pass


class GammaOutOfRange(PrequantError):
    pass


class NotAComplex(PrequantError):
    pass


class WindowTooLow(PrequantError):
    pass


class NotGenusZero(PrequantError):
    pass


class OrbitSetSyntaxError(PrequantError):
    """Malformed orbit-set literal."""
