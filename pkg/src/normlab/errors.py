"""Exception hierarchy shared across the package."""


class NormlabError(Exception):
    """Base class for all package errors."""


class ExprSyntaxError(NormlabError):
    """Raised by the parser; carries the source position of the failure."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class EvaluationError(NormlabError):
    """Numeric evaluation failed (overflow, non-finite intermediate)."""


class PoleError(EvaluationError):
    """Division by a value with modulus below the pole threshold."""


class BranchError(EvaluationError):
    """Principal-branch log applied at 0."""


class DimensionMismatchError(NormlabError):
    """Point dimension does not match the expression or domain dimension."""


class DomainError(NormlabError):
    """Point outside domain, or invalid domain parameters."""


class ConfigError(NormlabError):
    """Run configuration failed schema validation."""
