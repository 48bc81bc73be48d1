"""Exact arithmetic modulo p and p^2.

Residues mod p^2 are plain ``int`` values in ``[0, p*p)``.  Values that may
carry powers of p (binomial products, mostly) are held as
:class:`PadicScaled` pairs so that the p-part is never lost to reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .errors import DegenerateRoot, NotInvertible, NotPrime, ZeroValue

# Deterministic for n < 3.3e24, which covers every 64-bit input.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_between(lo: int, hi: int) -> list[int]:
    """All primes p with lo <= p <= hi (simple sieve)."""
    if hi < 2 or hi < lo:
        return []
    sieve = bytearray([1]) * (hi + 1)
    sieve[0] = sieve[1] = 0
    i = 2
    while i * i <= hi:
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, hi + 1, i)))
        i += 1
    return [n for n in range(max(lo, 2), hi + 1) if sieve[n]]


@dataclass(frozen=True)
class PrimeContext:
    """An odd prime p together with its square."""

    p: int
    p2: int = 0

    def __post_init__(self) -> None:
        if self.p % 2 == 0 or not is_prime(self.p):
            raise NotPrime(f"{self.p} is not an odd prime")
        object.__setattr__(self, "p2", self.p * self.p)

    def reduce(self, n: int) -> int:
        return n % self.p2

    def residue(self, q: Fraction | int) -> int:
        """Image of a p-integral rational in Z/p^2."""
        q = Fraction(q)
        if q.denominator % self.p == 0:
            raise NotInvertible(f"denominator of {q} is divisible by {self.p}")
        return q.numerator * inv(q.denominator, self) % self.p2


def inv(a: int, ctx: PrimeContext) -> int:
    """Inverse of a modulo p^2."""
    if a % ctx.p == 0:
        raise NotInvertible(f"{a} is divisible by {ctx.p}")
    return pow(a, -1, ctx.p2)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"jacobi symbol needs odd positive n, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def sqrt_mod_p(a: int, p: int) -> Optional[int]:
    """Tonelli-Shanks square root mod an odd prime p, or None for non-residues."""
    a %= p
    if a == 0:
        return 0
    if jacobi(a, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while jacobi(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def sqrt_mod_p2(a: int, ctx: PrimeContext) -> Optional[int]:
    """A square root of the unit a modulo p^2, or None if a is a non-residue.

    The root mod p is lifted by one Newton (Hensel) step.  The other root is
    ``p2 - r``.
    """
    p, p2 = ctx.p, ctx.p2
    if a % p == 0:
        raise DegenerateRoot(f"{a} is not a unit mod {p}")
    r = sqrt_mod_p(a, p)
    if r is None:
        return None
    return (r - (r * r - a) * pow(2 * r, -1, p2)) % p2


@dataclass(frozen=True)
class PadicScaled:
    """A nonzero value mod p^2 written as unit * p**val.

    ``unit`` is kept mod p^2 whatever the valuation, so division by p-powers
    later in a computation recovers the correct residue.
    """

    unit: int
    val: int
    p: int

    def __mul__(self, other: PadicScaled) -> PadicScaled:
        p2 = self.p * self.p
        return PadicScaled(self.unit * other.unit % p2, self.val + other.val, self.p)

    def __truediv__(self, other: PadicScaled) -> PadicScaled:
        p2 = self.p * self.p
        return PadicScaled(
            self.unit * pow(other.unit, -1, p2) % p2, self.val - other.val, self.p
        )

    def __pow__(self, e: int) -> PadicScaled:
        return PadicScaled(pow(self.unit, e, self.p * self.p), self.val * e, self.p)

    def residue(self) -> int:
        if self.val < 0:
            raise ValueError("negative valuation has no residue mod p^2")
        if self.val >= 2:
            return 0
        return self.unit * self.p**self.val % (self.p * self.p)


def padic_of_int(n: int, ctx: PrimeContext) -> PadicScaled:
    """Split a nonzero integer into (unit mod p^2, valuation)."""
    if n == 0:
        raise ZeroValue("zero has no (unit, valuation) form")
    p = ctx.p
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return PadicScaled(n % ctx.p2, v, p)


def padic_to_residue(x: PadicScaled, ctx: PrimeContext) -> int:
    return x.residue()


def iter_odd_primes(lo: int, hi: int) -> Iterator[int]:
    for p in primes_between(lo, hi):
        if p > 2:
            yield p
