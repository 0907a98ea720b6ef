"""Exception hierarchy shared by every module of the package."""


class GQMeansError(ValueError):
    """Base class; the CLI maps it to exit code 2."""


class DivisionByZeroJet(GQMeansError, ZeroDivisionError):
    pass


class DomainError(GQMeansError):
    pass


class OutOfDomain(DomainError):
    pass


class InvalidMeasure(GQMeansError):
    pass


class InvalidTau(GQMeansError):
    pass


class ParamsOutsidePi(GQMeansError):
    pass


class OrderExceedsClass(GQMeansError):
    pass


class DegeneratePair(GQMeansError):
    pass


class SingularMatrix(GQMeansError):
    pass


class NonPositiveArgument(DomainError):
    pass


class BracketFailure(GQMeansError):
    """The root bracket is invalid; class assumptions on the generators fail."""


class AsymmetricMeasure(GQMeansError):
    pass


class UnsupportedIndex(GQMeansError):
    pass


class StencilOutOfDomain(DomainError):
    pass


class HypothesisViolated(GQMeansError):
    pass


class PhiMismatch(GQMeansError):
    pass


class SingularFit(GQMeansError):
    pass
