"""Exception hierarchy.

Every error raised by the library derives from :class:`RatmatError`.  The two
intermediate classes drive the CLI exit codes: :class:`InputError` maps to 1,
:class:`MathDomainError` to 2 and :class:`VerificationError` to 3.
"""


class RatmatError(Exception):
    pass


class InputError(RatmatError, ValueError):
    pass


class MathDomainError(RatmatError, ArithmeticError):
    pass


class VerificationError(RatmatError, AssertionError):
    """An internal identity failed to hold. Always a bug."""


# exactalg
class DivisionByZeroPoly(MathDomainError, ZeroDivisionError):
    pass


class BothZero(MathDomainError):
    pass


class ZeroPolynomial(MathDomainError):
    pass


class NumericRootFailure(MathDomainError):
    pass


# matfun
class NonSquare(InputError):
    pass


class SingularFunction(MathDomainError):
    pass


class EvalAtPole(MathDomainError):
    pass


# smithform
class SingularInput(SingularFunction):
    pass


class NotUnimodular(MathDomainError):
    pass


# structure
class EigvecZero(MathDomainError):
    pass


class LimitInfinite(MathDomainError):
    pass


class LimitZero(MathDomainError):
    pass


class PremiseViolated(MathDomainError):
    pass


# logres
class ContourThroughSingularity(MathDomainError):
    pass


class NonConvergent(MathDomainError):
    pass


# odesys
class TrivialSystem(InputError):
    pass


class ZeroLeading(InputError):
    pass


class ZeroComponent(MathDomainError):
    pass


# realization
class NotSymmetric(MathDomainError):
    pass


class NoRegularPoint(MathDomainError):
    pass


class BadHint(InputError):
    pass


class PoleAtInfinity(MathDomainError):
    pass


class NotSimplePole(MathDomainError):
    pass


class NotHermitian(MathDomainError):
    pass


class UnsupportedJordanStructure(MathDomainError):
    pass


class NumericPole(MathDomainError):
    pass


class NonRealPole(MathDomainError):
    pass


class LimitUndefined(MathDomainError):
    pass


class SignUndetermined(MathDomainError):
    pass


# cli
class ParseError(InputError):
    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)
