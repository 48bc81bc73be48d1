"""Exception types raised by the verification library."""


class SupercongError(Exception):
    """Base class for all library errors."""


class NotInvertible(SupercongError, ZeroDivisionError):
    """Raised when inverting a residue divisible by p."""


class DegenerateRoot(SupercongError, ValueError):
    """Raised when a square root of a non-unit is requested mod p^2."""


class ZeroValue(SupercongError, ValueError):
    """Raised when a zero integer is converted to (unit, valuation) form."""


class NotRepresentable(SupercongError, ValueError):
    """Raised when a prime is not represented by the requested quadratic form."""


class NormalizationImpossible(SupercongError, AssertionError):
    """Raised when a sign normalization rule cannot be met (internal bug)."""


class BadBase(SupercongError, ValueError):
    """Raised when a sum base is not a p-adic unit."""


class ConventionUndetermined(SupercongError, RuntimeError):
    """Raised when no telescoping convention validates a certificate."""


class NotPrime(SupercongError, ValueError):
    """Raised when a modulus fails the primality check."""
