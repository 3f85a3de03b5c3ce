"""Exception types shared across the package."""


class OsculataError(Exception):
    """Base class for package-specific failures."""


class SpecError(OsculataError, ValueError):
    """Invalid variety specification: JSON schema violation or a polynomial
    that does not match the input grammar.  Carries a source position when
    one is known."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class PointError(OsculataError, ValueError):
    """Chart point rejected: every coordinate vanishes there (base point)
    or the order-1 jet drops rank (non-immersive point)."""


class StabilizationNotReached(OsculataError):
    """The osculating dimension sequence did not repeat within the requested
    order; recompute with a larger maximum order."""

    def __init__(self, max_order):
        super().__init__(
            f"osculating dimensions did not stabilize within order {max_order}; "
            "increase the maximum order"
        )
        self.max_order = max_order


class InternalInvariantError(OsculataError):
    """A structural identity the computation relies on failed to hold.
    This always indicates a bug, never bad input."""
