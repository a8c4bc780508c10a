"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside an operation's domain (zero where nonzero required,
    off-curve point, singular curve, malformed rational, ...)."""


class BudgetError(RuntimeError):
    """A configured resource budget (digits, search candidates, modulus size)
    would be exceeded.  Never raised silently in place of a wrong answer."""
