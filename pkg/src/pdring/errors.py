"""Exception hierarchy. Every error carries a short machine-readable code."""


class PdringError(Exception):
    code = "error"


class DomainError(PdringError, ValueError):
    """Input outside the mathematical domain of an operation."""

    code = "domain_error"


class UnsupportedConfiguration(PdringError):
    """The dual graph would need blowing down; we refuse instead of guessing."""

    code = "unsupported_configuration"


class PreconditionError(PdringError):
    """An operation that needs a rational singularity got something else."""

    code = "precondition_failed"


class ParseError(PdringError, ValueError):
    code = "parse_error"

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
