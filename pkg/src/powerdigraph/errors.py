"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class CapExceededError(RuntimeError):
    """A brute-force oracle refused an input larger than its configured cap."""

    def __init__(self, what, n, cap):
        super().__init__(f"{what}: n={n} exceeds cap {cap}")
        self.what = what
        self.n = n
        self.cap = cap


class InvariantViolation(ArithmeticError):
    """A structural identity that must always hold failed; indicates a bug."""
