"""Exception hierarchy for the X_l polynomial toolkit.

Every failure is a ``ValueError`` so callers that only care about
"bad input" can keep catching that.
"""


class XellError(ValueError):
    """Base class for all library errors."""


class InvalidParams(XellError):
    """Coupling constants or indices violate a family's constraints."""


class DegenerateRecurrence(XellError):
    """A three-term recurrence hit a vanishing denominator."""


class ZeroDenominator(XellError):
    """A mixing coefficient of an eigenpolynomial has a zero denominator."""


class DomainError(XellError):
    """A coordinate lies outside the physical domain."""


class SingularXi(XellError):
    """The deforming polynomial vanishes at an evaluation point."""


class NoConvergence(XellError):
    """Quadrature refinement did not reach its tolerance within the node cap."""


class GridTooCoarse(XellError):
    """Finite-difference eigenvalues moved too much under grid doubling."""


class InvalidWeightParams(XellError):
    """Quadrature weight exponents outside the integrable range."""
