"""Representations of p (or 4p) by the forms x^2 + d y^2 used in the claims.

Solutions come from Cornacchia's algorithm seeded with a square root of -d.
Sign conventions are applied afterwards by :func:`normalize`.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import isqrt

from .errors import NormalizationImpossible, NotRepresentable
from .modp2 import sqrt_mod_p


@dataclass(frozen=True)
class FormDescriptor:
    d: int
    scale: int
    rule: str

    def __post_init__(self) -> None:
        if (self.d, self.scale) not in {(1, 1), (2, 1), (3, 1), (19, 4), (27, 4)}:
            raise ValueError(f"unsupported form {self.scale}p = x^2 + {self.d}y^2")


SUM_OF_SQUARES = FormDescriptor(1, 1, "a=1mod4")  # p = a^2 + b^2
A2_2B2 = FormDescriptor(2, 1, "c=1mod4")  # p = c^2 + 2d^2
A2_3B2 = FormDescriptor(3, 1, "A=1mod3")  # p = A^2 + 3B^2
L2_27M2 = FormDescriptor(27, 4, "L=1mod3")  # 4p = L^2 + 27M^2
X2_19Y2 = FormDescriptor(19, 4, "x>0")  # 4p = x^2 + 19y^2


@dataclass(frozen=True)
class QuadRep:
    x: int
    y: int
    form: FormDescriptor
    p: int

    def __post_init__(self) -> None:
        if self.form.scale * self.p != self.x**2 + self.form.d * self.y**2:
            raise ValueError(f"{self} does not satisfy its form equation")


def _square_root(n: int) -> int | None:
    r = isqrt(n)
    return r if r * r == n else None


def cornacchia(d: int, n: int, root: int) -> tuple[int, int] | None:
    """Primitive solution of x^2 + d y^2 = n from a root of x^2 = -d (mod n)."""
    a, b = n, root % n
    if 2 * b < n:
        b = n - b
    limit = isqrt(n)
    while b > limit:
        a, b = b, a % b
    rest = n - b * b
    if rest % d:
        return None
    y = _square_root(rest // d)
    return None if y is None else (b, y)


def cornacchia_4p(d: int, p: int) -> tuple[int, int] | None:
    """Primitive solution of x^2 + d y^2 = 4p, for d = 3 (mod 4)."""
    r = sqrt_mod_p(-d, p)
    if r is None:
        return None
    # x^2 = -d (mod 4p) needs x = d (mod 2)
    if (r - d) % 2:
        r = p - r
    a, b = 2 * p, r
    limit = isqrt(4 * p)
    while b > limit:
        a, b = b, a % b
    rest = 4 * p - b * b
    if rest % d:
        return None
    y = _square_root(rest // d)
    return None if y is None else (b, y)


def represent(p: int, form: FormDescriptor) -> QuadRep:
    """Positive (x, y) with scale*p = x^2 + d*y^2, before sign normalization."""
    d = form.d
    if p == 2:
        raise NotRepresentable("p must be odd")
    if d % p == 0:
        # ramified case: few enough y to search directly
        n = form.scale * p
        sol = next(
            ((x, y) for y in range(isqrt(n // d) + 1)
             if (x := _square_root(n - d * y * y)) is not None),
            None,
        )
    elif form.scale == 1:
        root = sqrt_mod_p(-d, p)
        sol = None if root is None else cornacchia(d, p, root)
    else:
        sol = cornacchia_4p(d, p)
        if sol is None:
            # non-primitive case: p = u^2 + d v^2 gives (2u, 2v)
            root = sqrt_mod_p(-d, p)
            half = None if root is None else cornacchia(d, p, root)
            sol = None if half is None else (2 * half[0], 2 * half[1])
    if sol is None:
        raise NotRepresentable(f"{form.scale}*{p} is not x^2 + {d}y^2")
    return QuadRep(sol[0], sol[1], form, p)


def normalize(rep: QuadRep) -> QuadRep:
    """Pick the signs (and, for d = 1, the order) fixed by the form's rule."""
    x, y, p = rep.x, rep.y, rep.p
    rule = rep.form.rule
    if rule in ("A=1mod3", "L=1mod3"):
        x = x if x % 3 == 1 else -x
        ok = x % 3 == 1
    elif rule == "c=1mod4":
        x = x if x % 4 == 1 else -x
        ok = x % 4 == 1
    elif rule == "a=1mod4":
        if x % 2 == 0:
            x, y = y, x
        x = x if x % 4 == 1 else -x
        if p % 12 == 5:
            y = y if (x - y) % 3 == 0 else -y
            ok = (x - y) % 3 == 0
        else:
            y = abs(y)
            ok = True
        ok = ok and x % 4 == 1
    elif rule == "x>0":
        x, y = abs(x), abs(y)
        ok = True
    else:
        raise ValueError(f"unknown normalization rule {rule!r}")
    if not ok:
        raise NormalizationImpossible(f"rule {rule} fails for {rep}")
    return replace(rep, x=x, y=y)


def selector_r(rep: QuadRep) -> int:
    """The value r with sum C(3k,k)C(6k,3k)/864^k = 2r - p/(2r) (mod p^2).

    ``rep`` is a normalized sum-of-two-squares representation, p = 1 (mod 4).
    """
    a, b, p = rep.x, rep.y, rep.p
    if p % 12 == 1:
        return -a if a % 3 == 0 else a
    if p % 12 == 5:
        if (a - b) % 3:
            raise NormalizationImpossible(f"3 does not divide a - b in {rep}")
        return b
    raise ValueError(f"selector needs p = 1 (mod 4), got {p}")
