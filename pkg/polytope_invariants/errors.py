"""
Error hierarchy shared by the library and the CLI.

Every error carries a machine-readable ``code`` and a ``detail`` dict; the CLI
prints ``to_dict()`` and exits with ``exit_code``.
"""

from typing import Any, Dict, Optional


class PolytopeInvariantError(Exception):
    """Base class for all library errors."""

    code = "error"
    exit_code = 1

    def __init__(self, message: str, detail: Optional[Dict[str, Any]] = None, code: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.detail = dict(detail or {})
        if code:
            self.code = code

    def to_dict(self) -> Dict[str, Any]:
        detail = {"message": self.message}
        detail.update(self.detail)
        return {"error": self.code, "detail": detail}


class InputError(PolytopeInvariantError, ValueError):
    """Malformed input: syntax, dimensions, shapes, zero covectors."""

    code = "invalid_input"
    exit_code = 2


class ValidationError(PolytopeInvariantError):
    """Well-formed input that violates an operation precondition."""

    code = "validation_failed"
    exit_code = 2


class MarkingError(ValidationError):
    """A marked deconvolution found conflicting marks for one vertex."""

    code = "inconsistent_marking"


class UnsupportedError(PolytopeInvariantError):
    """The cited theorems do not cover the request, or the dimension is unsupported."""

    code = "unsupported"
    exit_code = 3


class ErosionError(UnsupportedError):
    """A Minkowski difference that should exist does not."""

    code = "erosion_failed"


class DiscrepancyError(PolytopeInvariantError):
    """Two independent computations of the same object disagree."""

    code = "discrepancy"
    exit_code = 4
