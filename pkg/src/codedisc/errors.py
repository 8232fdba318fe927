"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the range where the operation is defined."""


class ResourceLimitError(RuntimeError):
    """A brute-force enumeration would exceed the configured size limit."""


class ParseError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(ValueError):
    """Input violates a structural requirement; ``witness`` names the offending points."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class IdentityMismatchError(ArithmeticError):
    """Two formulas that must agree exactly produced different values."""
