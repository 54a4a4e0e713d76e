"""
Domain exceptions.

Every error raised by the library derives from DoubletError and carries
both the CLI exit code and the HTTP status the API layer maps it to:

    exit 2 / 422  invalid input (bad ordering, wrong solver, regime, ...)
    exit 3 / 500  convergence failure
    exit 4 / 500  internal invariant violation

pydantic.ValidationError raised by model invariants is treated as invalid
input by both surfaces.
"""
from typing import Any, Optional


class DoubletError(Exception):
    """Base class for all library errors."""

    exit_code: int = 1
    status_code: int = 500

    def __init__(self, message: str, diagnostics: Optional[dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.diagnostics = diagnostics or {}


class InvalidInputError(DoubletError):
    exit_code = 2
    status_code = 422


class WrongSolverError(InvalidInputError):
    """Raised when the surface solver receives a nonzero line tension."""


class RegimeError(InvalidInputError):
    """Operation needs the Interior regime but tensions violate a triangle inequality."""


class NoConfigurationError(InvalidInputError):
    """No doublet exists for the prescribed data (e.g. pressures with bad tensions)."""


class UnsupportedInputError(InvalidInputError):
    """Closed forms exist only for a subset of inputs (equal volumes)."""


class UndefinedReducedVariableError(InvalidInputError):
    """tau = t w3^(1/3) / kappa is undefined for kappa = 0."""


class SingularParameterizationError(InvalidInputError):
    """The forward map needs sin(phi3) != 0."""


class ConvergenceError(DoubletError):
    exit_code = 3
    status_code = 500


class InvariantViolationError(DoubletError):
    """
    A result failed an independent check (a residual recomputed from the
    emitted numbers, or solver and oracle disagreeing). document holds the
    output that failed, so the CLI can still write it.
    """

    exit_code = 4
    status_code = 500

    def __init__(
        self,
        message: str,
        diagnostics: Optional[dict[str, Any]] = None,
        document: Optional[str] = None,
    ):
        super().__init__(message, diagnostics)
        self.document = document
