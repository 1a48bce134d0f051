"""Exception types shared across the package."""


class RingMismatchError(ValueError):
    """Operands live over different primes (or truncation orders)."""


class NotInvertibleError(ArithmeticError):
    """Requested inverse does not exist in the coefficient ring."""


class DegreeCapExceeded(ValueError):
    """A product would exceed the configured total-degree cap."""


class VerificationError(AssertionError):
    """An identity that should hold exactly was found to fail."""
