"""Exception types shared across the package."""


class NoSolutionError(ValueError):
    """Raised for a = 0, where the Heun equation has no series solution about 0."""

    def __init__(self, message: str = "no solution at a=0"):
        super().__init__(message)


class RecurrencePoleError(ZeroDivisionError):
    """A recurrence denominator vanishes at index ``n``."""

    def __init__(self, n: int, message: str | None = None):
        self.n = n
        super().__init__(message or f"pole in recurrence at n={n}")


class GeneratingPoleError(ZeroDivisionError):
    """``1 - A x - B x**2`` vanishes at the requested point."""


class PremiseViolation(ValueError):
    """The normalized recurrence coefficients exceed ``1 + eps`` at index ``n``."""

    def __init__(self, n: int, message: str):
        self.n = n
        super().__init__(message)


class ExcludedPointError(ValueError):
    """A transformed local solution is undefined at the requested (a, x)."""

    def __init__(self, constraint: str, message: str | None = None):
        self.constraint = constraint
        super().__init__(message or f"excluded point: requires {constraint}")


class TooFewPointsError(ValueError):
    """Not enough partial sums to classify a sequence."""
