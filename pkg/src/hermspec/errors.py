"""Exception types shared across the package."""


class EdgeListError(ValueError):
    """Malformed edge-list input. Carries the offending 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CapExceededError(RuntimeError):
    """A brute-force or resource cap would be exceeded."""


class NotRealRootedError(ValueError):
    """A polynomial required to be real-rooted is not.

    Carries the certificate (real_count, degree): the number of real roots
    found (with multiplicity) against the polynomial degree.
    """

    def __init__(self, real_count: int, degree: int):
        self.real_count = real_count
        self.degree = degree
        super().__init__(
            f"polynomial is not real-rooted: {real_count} real roots, degree {degree}"
        )


class InvariantError(AssertionError):
    """An internal identity that should hold by theory was violated.

    Raised instead of silently returning wrong data; seeing this means either
    a bug in this package or numerically hostile input far outside the
    supported regime.
    """
