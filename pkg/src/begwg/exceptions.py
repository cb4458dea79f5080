class DomainError(ValueError):
    """An argument lies outside the support or parameter space."""


class ConvergenceError(RuntimeError):
    """A numerical routine did not reach its tolerance."""


class BoundaryError(ConvergenceError):
    """The likelihood is maximised on the boundary of the parameter space."""


class DataError(ValueError):
    """Malformed input data; ``rows`` lists the offending 1-based data rows."""

    def __init__(self, message, rows=()):
        super().__init__(message)
        self.rows = tuple(rows)
