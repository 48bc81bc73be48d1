"""Coefficient-wise polynomial congruences mod p^2.

For each identity family the claim is

    sum_{k<p} W(k) (x(1 - c x))^k  ==  (sum_{k<p} w(k) x^k)^2   (mod p^2)

as polynomials in x, with (W, w, c) one of (F4, F1, 27), (F5, F2, 64),
(F6, F3, 432).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import _kernels
from .binomsums import F1, F2, F3, F4, F5, F6, SumFamily
from .modp2 import PrimeContext
from .report import VerificationOutcome


@dataclass(frozen=True)
class IdentityFamily:
    id: str
    big: SumFamily
    small: SumFamily
    c: int


I1 = IdentityFamily("I1", F4, F1, 27)
I2 = IdentityFamily("I2", F5, F2, 64)
I3 = IdentityFamily("I3", F6, F3, 432)
IDENTITIES = {1: I1, 2: I2, 3: I3}


@dataclass(frozen=True)
class PolyModP2:
    coeffs: tuple[int, ...]
    modulus: int

    @classmethod
    def of(cls, coeffs, modulus: int) -> PolyModP2:
        cs = [c % modulus for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return cls(tuple(cs), modulus)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.modulus
        return acc


def lhs_poly(fam: IdentityFamily, ctx: PrimeContext) -> PolyModP2:
    weights = _kernels.family_terms(ctx.p, fam.big.exps, ctx.p)
    return PolyModP2.of(_kernels.kernel_expand(weights, fam.c, ctx.p2), ctx.p2)


def rhs_poly(fam: IdentityFamily, ctx: PrimeContext) -> PolyModP2:
    weights = _kernels.family_terms(ctx.p, fam.small.exps, ctx.p)
    return PolyModP2.of(_kernels.poly_square(weights, ctx.p2), ctx.p2)


def first_difference(a: PolyModP2, b: PolyModP2) -> Optional[int]:
    for i in range(max(len(a.coeffs), len(b.coeffs))):
        if a[i] != b[i]:
            return i
    return None


def check_identity(fam: IdentityFamily, ctx: PrimeContext) -> VerificationOutcome:
    lhs, rhs = lhs_poly(fam, ctx), rhs_poly(fam, ctx)
    i = first_difference(lhs, rhs)
    detail: dict = {"family": fam.id, "p": ctx.p, "degree": max(lhs.degree, rhs.degree)}
    if i is not None:
        detail.update(index=i, lhs=lhs[i], rhs=rhs[i])
    return VerificationOutcome(f"identity {fam.id} p={ctx.p}", i is None, detail)
