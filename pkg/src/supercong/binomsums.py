"""Sums of central binomial products modulo p^2.

Six families are covered, each a product of C(2k,k), C(3k,k), C(4k,2k) and
C(6k,3k):

    F1 = C(2k,k) C(3k,k)            F4 = C(2k,k)^2 C(3k,k)
    F2 = C(2k,k) C(4k,2k)           F5 = C(2k,k)^2 C(4k,2k)
    F3 = C(3k,k) C(6k,3k)           F6 = C(2k,k) C(3k,k) C(6k,3k)

Each Fj with j > 3 has F(j-3) as its "core": F4 = C(2k,k) * F1 and so on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import _kernels
from .errors import BadBase
from .modp2 import PadicScaled, PrimeContext, padic_of_int


@dataclass(frozen=True)
class SumFamily:
    id: str
    # exponents of (C(2k,k), C(3k,k), C(4k,2k), C(6k,3k))
    exps: tuple[int, int, int, int]
    # every term with k > p // trunc_div is divisible by p
    trunc_div: int
    core_exps: tuple[int, int, int, int]

    def truncation_bound(self, p: int) -> int:
        return p // self.trunc_div

    def __str__(self) -> str:
        return self.id


F1 = SumFamily("F1", (1, 1, 0, 0), 3, (1, 1, 0, 0))
F2 = SumFamily("F2", (1, 0, 1, 0), 4, (1, 0, 1, 0))
F3 = SumFamily("F3", (0, 1, 0, 1), 6, (0, 1, 0, 1))
F4 = SumFamily("F4", (2, 1, 0, 0), 3, (1, 1, 0, 0))
F5 = SumFamily("F5", (2, 0, 1, 0), 4, (1, 0, 1, 0))
F6 = SumFamily("F6", (1, 1, 0, 1), 6, (0, 1, 0, 1))

FAMILIES = {f.id: f for f in (F1, F2, F3, F4, F5, F6)}


def get_family(name: str | int) -> SumFamily:
    key = f"F{name}" if isinstance(name, int) or str(name).isdigit() else str(name)
    try:
        return FAMILIES[key]
    except KeyError:
        raise ValueError(f"unknown family {name!r}") from None


class CentralProductGenerator:
    """Step-by-step C(2k,k), C(3k,k), C(4k,2k), C(6k,3k) as PadicScaled values.

    This is the readable reference pathway; the sweeps use the fused kernels in
    :mod:`supercong._kernels`, and the tests hold the two against each other.
    """

    def __init__(self, ctx: PrimeContext):
        self.ctx = ctx
        self.k = 0
        one = PadicScaled(1, 0, ctx.p)
        self.c2 = self.c3 = self.c4 = self.c6 = one

    def _ratio(self, num: Iterable[int], den: Iterable[int]) -> PadicScaled:
        r = PadicScaled(1, 0, self.ctx.p)
        for n in num:
            r = r * padic_of_int(n, self.ctx)
        for d in den:
            r = r / padic_of_int(d, self.ctx)
        return r

    def advance(self) -> CentralProductGenerator:
        k = self.k
        self.c2 = self.c2 * self._ratio((2, 2 * k + 1), (k + 1,))
        self.c3 = self.c3 * self._ratio((3, 3 * k + 1, 3 * k + 2), (2, k + 1, 2 * k + 1))
        self.c4 = self.c4 * self._ratio((2, 4 * k + 1, 4 * k + 3), (2 * k + 1, k + 1))
        self.c6 = self.c6 * self._ratio(
            (8, 6 * k + 1, 2 * k + 1, 6 * k + 5), (3 * k + 1, 3 * k + 2, k + 1)
        )
        self.k = k + 1
        return self

    def binomials(self) -> tuple[PadicScaled, PadicScaled, PadicScaled, PadicScaled]:
        return self.c2, self.c3, self.c4, self.c6

    def product(self, exps: Sequence[int]) -> PadicScaled:
        r = PadicScaled(1, 0, self.ctx.p)
        for b, e in zip(self.binomials(), exps):
            if e:
                r = r * b**e
        return r


def base_inverse(m: Fraction | int, ctx: PrimeContext) -> int:
    """m^{-1} mod p^2 for a base m whose numerator and denominator are units."""
    m = Fraction(m)
    if m.numerator % ctx.p == 0 or m.denominator % ctx.p == 0:
        raise BadBase(f"base {m} is not a unit mod {ctx.p}")
    return m.denominator * pow(m.numerator, -1, ctx.p2) % ctx.p2


def _upper(family: SumFamily, upper: int | str | None, p: int) -> int:
    if upper is None or upper == "full":
        return p - 1
    if upper == "truncated":
        return family.truncation_bound(p)
    return int(upper)


def sum_family(
    family: SumFamily,
    m: Fraction | int,
    ctx: PrimeContext,
    upper: int | str | None = None,
) -> int:
    """sum_{k=0}^{upper} family(k) / m^k mod p^2.

    ``upper`` is an integer, ``"full"`` (p - 1, the default) or
    ``"truncated"`` (the family's truncation bound).
    """
    minv = base_inverse(m, ctx)
    return _kernels.family_sums(ctx.p, [family.exps], [minv], _upper(family, upper, ctx.p))[0]


def series_at(
    family: SumFamily, x: int, ctx: PrimeContext, upper: int | str | None = None
) -> int:
    """sum_{k=0}^{upper} family(k) * x^k mod p^2 for a residue x."""
    return _kernels.family_sums(
        ctx.p, [family.exps], [x % ctx.p2], _upper(family, upper, ctx.p)
    )[0]


def sums_at(
    ctx: PrimeContext,
    requests: Sequence[tuple[SumFamily, int]],
    upper: int | None = None,
) -> list[int]:
    """Several (family, multiplier) series in one pass over k."""
    if not requests:
        return []
    up = ctx.p - 1 if upper is None else upper
    return _kernels.family_sums(
        ctx.p, [f.exps for f, _ in requests], [x % ctx.p2 for _, x in requests], up
    )


def _vals(p: int) -> list[tuple[int, int, int, int]]:
    _, vals = _kernels.central_binomials(p, p)
    return [tuple(vals[4 * k : 4 * k + 4]) for k in range(p)]


def _valuation(vals: tuple[int, ...], exps: Sequence[int]) -> int:
    return sum(v * e for v, e in zip(vals, exps))


def vanishing_check(family: SumFamily, p: int) -> bool:
    """Check the divisibility facts that justify truncating the sums.

    * p divides the core product for p // trunc_div < k < p;
    * F4: the core C(2k,k)C(3k,k) is 0 mod p^2 for 2p/3 <= k < p;
    * F5: the core C(2k,k)C(4k,2k) is 0 mod p^2 for 3p/4 <= k < p;
    * F6: C(3k,k)C(6k,3k)C(3r,r)C(6r,3r) is 0 mod p^2 whenever k + r >= p.
    """
    vals = _vals(p)
    core = [_valuation(v, family.core_exps) for v in vals]
    if any(core[k] < 1 for k in range(family.truncation_bound(p) + 1, p)):
        return False
    if family is F4:
        return all(core[k] >= 2 for k in range(p) if 3 * k >= 2 * p)
    if family is F5:
        return all(core[k] >= 2 for k in range(p) if 4 * k >= 3 * p)
    if family is F6:
        # min over r >= p - k of v(r), via suffix minima
        suffix = [0] * (p + 1)
        suffix[p] = 10**9
        for r in range(p - 1, -1, -1):
            suffix[r] = min(core[r], suffix[r + 1])
        return all(core[k] + suffix[p - k] >= 2 for k in range(1, p))
    return True
