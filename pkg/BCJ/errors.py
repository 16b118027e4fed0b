"""
Error Types

Exception hierarchy shared by every module of the package. Library code
raises these; the command-line front end turns them into exit code 1.
"""


class TorelliError(Exception):
    """Base class for all domain errors."""


class DimensionMismatch(TorelliError):
    """Vectors or spaces of incompatible dimension were combined."""


class ContextMismatch(TorelliError):
    """Polynomials from different genus contexts were combined."""


class NotSymplectic(TorelliError):
    """A subspace, subgroup or matrix failed a symplectic check."""


class MixedShapes(TorelliError):
    """Wedge elements of different degree or ambient dimension were mixed."""


class NotGenus1Sigma(TorelliError):
    """A sigma value is not the value of any genus-1 separating twist."""


class NotUnimodular(TorelliError):
    """An integral subgroup has a Gram matrix that is not the standard form."""


class BadParityPattern(TorelliError):
    """Coefficients do not have the (odd, even, even) pattern."""


class NotCoprime(TorelliError):
    """Integers expected to be jointly coprime are not."""


class FrameInvalid(TorelliError):
    """Frame vectors do not satisfy the required pairings."""


class NotInSpan(TorelliError):
    """A vector has a component outside the span of the given basis."""


class HypothesisViolation(TorelliError):
    """A theorem's hypothesis (genus, rank, containment) does not hold."""


class ParseError(TorelliError):
    """Text input could not be parsed."""
