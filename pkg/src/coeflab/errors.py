"""Exception types raised by the coeflab modules."""


class CoeflabError(ValueError):
    """Base class for all domain errors."""


class NonzeroInnerConstant(CoeflabError):
    pass


class ZeroConstantTerm(CoeflabError):
    pass


class VanishingFunction(CoeflabError):
    pass


class NormExceeded(CoeflabError):
    pass


class ConstantOnBoundary(CoeflabError):
    pass


class OutsideDisk(CoeflabError):
    pass


class DegenerateLeadingCoefficient(CoeflabError):
    pass


class GridTooCoarse(CoeflabError):
    pass


class DegenerateDerivative(CoeflabError):
    pass


class NormTooLarge(CoeflabError):
    pass


class ZeroDensity(CoeflabError):
    pass


class NoConvergence(CoeflabError):
    """Raised only on request; the optimizer normally reports it as a flag."""
