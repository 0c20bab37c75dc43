"""Exception types shared across the package."""


class DigitbinomError(Exception):
    """Base class for every error raised by this package."""


class InvalidBaseError(DigitbinomError, ValueError):
    """A digit base smaller than 2 was supplied."""


class WidthTooSmallError(DigitbinomError, ValueError):
    """The requested digit width cannot hold the given integer."""


class NotDominatedError(DigitbinomError, ValueError):
    """An operation defined only for digitally dominated pairs was called
    on a pair that is not dominated."""


class OutOfRangeError(DigitbinomError, ValueError):
    """An index parameter lies outside its admissible range."""


class UnboundVariableError(DigitbinomError, ValueError):
    """Evaluation bindings do not cover every variable of the polynomial."""


class InexactDivisionError(DigitbinomError, ArithmeticError):
    """Polynomial division left a nonzero remainder."""


class DimensionTooLargeError(DigitbinomError, ValueError):
    """A matrix dimension or entry count exceeds the implementation guard."""


class LengthMismatchError(DigitbinomError, ValueError):
    """A variable-vector length does not match the number of levels."""


class ShapeMismatchError(DigitbinomError, ValueError):
    """Two matrices in a binary operation have incompatible shapes."""


class IndexOutOfRangeError(DigitbinomError, IndexError):
    """A row or column index lies outside the matrix."""


class TooLargeForSymbolicError(DigitbinomError, ValueError):
    """A symbolic verification was requested for an instance whose
    brute-force summand count exceeds the symbolic-mode guard."""
