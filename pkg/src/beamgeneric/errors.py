"""Exception types shared across the package."""


class DomainError(ValueError):
    """A quantity left its admissible domain (e.g. nonpositive temperature,
    nonpositive energy handed to a log fit)."""


class PositivityError(DomainError):
    """A field that must stay strictly positive became nonpositive."""


class DivergenceError(RuntimeError):
    """Time integration produced a non-finite state."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step
