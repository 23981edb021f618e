"""Exception hierarchy.

Two top-level families: ``ValidationError`` covers everything caused by bad
input (malformed files, roots outside a system, order-domain violations,
degree caps); ``InternalError`` marks violated internal invariants that
should be impossible for valid inputs.  The CLI maps the former to exit
code 1 and the latter to exit code 2.
"""

from __future__ import annotations


class NilcascadeError(Exception):
    """Base class for all package errors."""


class ValidationError(NilcascadeError):
    """Invalid user input."""

    def __init__(self, code: str, message: str, path: str | None = None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.path = path

    def payload(self) -> dict:
        out = {"code": self.code, "message": self.message}
        if self.path is not None:
            out["path"] = self.path
        return out


class OrderDomainError(ValidationError):
    """An index is not covered by either stream of an order."""

    def __init__(self, message: str, path: str | None = None):
        super().__init__("order-domain", message, path)


class DegreeCapError(ValidationError):
    """Symmetrization degree cap exceeded."""

    def __init__(self, message: str, path: str | None = None):
        super().__init__("degree-cap", message, path)


class UnsupportedFamilyError(ValidationError):
    """A linear form outside the family a decision procedure supports."""

    def __init__(self, message: str, path: str | None = None):
        super().__init__("unsupported-family", message, path)


class InternalError(NilcascadeError):
    """Violated internal invariant (a bug, never a user error)."""
