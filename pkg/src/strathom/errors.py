class StrathomError(Exception):
    """Base class for all errors raised by strathom."""


class ComplexError(StrathomError, ValueError):
    """Malformed simplicial complex or simplicial map."""


class FiltrationError(StrathomError, ValueError):
    """A filtration is not by subcomplexes; ``witness`` holds ``(face, simplex)``."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PerversityError(StrathomError, ValueError):
    pass


class ChainComplexError(StrathomError, ValueError):
    """Raised when consecutive boundary maps do not compose to zero."""

    def __init__(self, message, degree=None):
        super().__init__(message)
        self.degree = degree


class ParseError(StrathomError):
    """Input text is not a well-formed document. ``position`` locates the problem."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{position}: {message}"
        super().__init__(message)
        self.position = position


class ValidationError(StrathomError):
    """Input document parsed but violates a semantic constraint."""
