"""Exception hierarchy shared by every module."""


class GrassmannError(Exception):
    """Base class for all errors raised by grassbanach."""


class DescriptorMismatch(GrassmannError, ValueError):
    """Operands live over different coefficient rings, orderings or norms."""


class DivisionByZero(GrassmannError, ZeroDivisionError):
    pass


class PrecisionLoss(GrassmannError, ArithmeticError):
    """A p-adic result has no significant digits left."""


class ParseError(GrassmannError, ValueError):
    """Malformed text input.

    ``position`` is a byte offset into the input that was being parsed.
    """

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at offset {position})")
        self.message = message
        self.position = position


class EmptySet(GrassmannError, ValueError):
    pass


class LabelMismatch(GrassmannError, ValueError):
    pass


class NotInvertible(GrassmannError, ArithmeticError):
    pass


class ZeroElement(GrassmannError, ValueError):
    pass


class NotInjective(GrassmannError, ValueError):
    pass


class NotUltrametric(GrassmannError, ValueError):
    """A sup-norm construction was requested over a non-ultrametric ring."""


class ModeMismatch(GrassmannError, ValueError):
    """Tensor norm modes (projective/injective) do not line up."""
