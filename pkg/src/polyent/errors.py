"""Exception hierarchy.

Input-shaped problems (bad probabilities, bad table layout) derive from
:class:`DistributionError`; parameter-domain problems (exponents, bases,
arities) derive from :class:`DomainError`.  Both are ``ValueError``.
"""


class PolyentError(ValueError):
    pass


class DistributionError(PolyentError):
    pass


class DomainError(PolyentError):
    pass


class EmptyDistribution(DistributionError):
    pass


class NegativeProbability(DistributionError):
    pass


class NotNormalized(DistributionError):
    pass


class ShapeMismatch(DistributionError):
    pass


class BadAxis(DistributionError):
    pass


class TooLarge(DomainError):
    pass


class NonPositiveExponent(DomainError):
    pass


class BadBase(DomainError):
    pass


class UnsupportedArity(DomainError):
    pass


class ArityTooSmall(DomainError):
    pass


class WrongArity(DomainError):
    pass


class QEqualsOne(DomainError):
    pass
