"""Exception types raised by the expression layer."""


class ExprError(Exception):
    """Base class for expression-field failures."""


class ParseError(ExprError):
    """Input text does not conform to the expression grammar."""

    def __init__(self, message: str, position: int = -1, text: str = ""):
        self.position = position
        self.text = text
        where = f" at position {position}" if position >= 0 else ""
        super().__init__(f"{message}{where}")


class UnsupportedConstruct(ParseError):
    """Grammatically valid input whose meaning leaves the function class."""


class NotElementary(ExprError):
    """An antiderivative would leave the representable class."""


class UnsupportedClass(ExprError):
    """A substitution is not closed on some term."""


class UnboundSymbol(ExprError):
    """Numeric evaluation met a symbol or function with no binding."""


class DomainError(ExprError):
    """Numeric evaluation outside the real domain of a term."""
