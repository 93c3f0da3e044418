"""Exception types shared across the package.

Two families matter to callers: ``ParseError`` for malformed text or JSON
input, and ``DomainError`` for inputs that are structurally fine but
mathematically refused (non-exact complex, degree mismatch, guard limits).
Both subclass ``ValueError`` so generic handling keeps working.
"""


class ElimError(ValueError):
    """Base class for all package-specific errors."""


class ParseError(ElimError):
    """Malformed polynomial text, rational literal, or JSON payload."""


class DomainError(ElimError):
    """Mathematically refused input (the operation is undefined there)."""


class NotExactError(DomainError):
    """A torsion was requested for a complex that is not exact."""


class GuardError(DomainError):
    """A size guard was exceeded (symbolic interpolation grid too large)."""


class InterpolationError(ElimError):
    """Interpolated polynomial failed its consistency re-check.

    This signals an internal bug, not a user error.
    """
