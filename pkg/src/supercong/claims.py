"""Registry of per-prime congruence claims and the drivers that check them."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Optional, Sequence

from . import binomsums
from .binomsums import F1, F2, F3, F4, F5, F6, SumFamily
from .errors import BadBase, DegenerateRoot
from .modp2 import PrimeContext, jacobi, primes_between, sqrt_mod_p2
from .quadform import (
    A2_2B2,
    A2_3B2,
    L2_27M2,
    SUM_OF_SQUARES,
    X2_19Y2,
    normalize,
    represent,
    selector_r,
)
from .report import FAIL, NA, PASS, VerificationOutcome, VerificationReport

Rhs = Callable[[PrimeContext], int]


@dataclass(frozen=True)
class CongruenceClaim:
    id: str
    family: SumFamily
    base: Fraction
    condition: Callable[[int], bool]
    condition_text: str
    rhs: Rhs
    status: str = "proved"
    external: bool = False
    excluded: tuple[int, ...] = ()
    min_p: int = 5

    def not_applicable(self, p: int) -> Optional[str]:
        """Reason the claim says nothing at p, or None when it applies."""
        if p < self.min_p:
            return f"needs p >= {self.min_p}"
        if p in self.excluded:
            return f"excluded prime {p}"
        if self.base.numerator % p == 0 or self.base.denominator % p == 0:
            return f"p divides base {self.base}"
        if not self.condition(p):
            return f"needs {self.condition_text}"
        return None


def _frac(ctx: PrimeContext, num: int, den: int) -> int:
    return num * pow(den, -1, ctx.p2) % ctx.p2


def _two_r_minus(r: int, ctx: PrimeContext) -> int:
    """2r - p/(2r) mod p^2."""
    return (2 * r - _frac(ctx, ctx.p, 2 * r)) % ctx.p2


def _zero(ctx: PrimeContext) -> int:
    return 0


def _A(p: int) -> int:
    return normalize(represent(p, A2_3B2)).x


def _c(p: int) -> int:
    return normalize(represent(p, A2_2B2)).x


def _a(p: int) -> int:
    return normalize(represent(p, SUM_OF_SQUARES)).x


def _rhs_eq11(ctx: PrimeContext) -> int:
    p = ctx.p
    return (4 * _A(p) ** 2 - 2 * p) % ctx.p2 if p % 3 == 1 else 0


def _rhs_eq12(ctx: PrimeContext) -> int:
    p = ctx.p
    return (4 * _c(p) ** 2 - 2 * p) % ctx.p2 if p % 8 in (1, 3) else 0


def _rhs_eq13(ctx: PrimeContext) -> int:
    p = ctx.p
    if p % 4 == 3:
        return 0
    return jacobi(p, 3) * (4 * _a(p) ** 2 - 2 * p) % ctx.p2


def _rhs_thm22(ctx: PrimeContext) -> int:
    return _two_r_minus(_A(ctx.p), ctx)


def _rhs_conj14(ctx: PrimeContext) -> int:
    L = normalize(represent(ctx.p, L2_27M2)).x
    return (L * L - 2 * ctx.p) % ctx.p2


def _rhs_thm25(ctx: PrimeContext) -> int:
    p = ctx.p
    sign = -1 if (p // 8 + (p - 1) // 2) % 2 else 1
    return sign * _two_r_minus(_c(p), ctx) % ctx.p2


def _rhs_thm32(ctx: PrimeContext) -> int:
    r = selector_r(normalize(represent(ctx.p, SUM_OF_SQUARES)))
    return _two_r_minus(r, ctx)


def _rhs_conj15(ctx: PrimeContext) -> int:
    x = normalize(represent(ctx.p, X2_19Y2)).x
    return jacobi(-6, ctx.p) * (x * x - 2 * ctx.p) % ctx.p2


def _mod_in(n: int, residues: Iterable[int]) -> Callable[[int], bool]:
    rs = frozenset(residues)
    return lambda p: p % n in rs


def _legendre_is(q: int, value: int) -> Callable[[int], bool]:
    return lambda p: jacobi(p, q) == value


def _always(p: int) -> bool:
    return True


_REGISTRY: tuple[CongruenceClaim, ...] = (
    CongruenceClaim("Eq1.1", F4, Fraction(108), _always, "any p > 3", _rhs_eq11),
    CongruenceClaim("Eq1.2", F5, Fraction(256), _always, "any p > 3", _rhs_eq12),
    CongruenceClaim("Eq1.3", F6, Fraction(1728), _always, "any p > 3", _rhs_eq13),
    CongruenceClaim("Thm2.2", F1, Fraction(54), _mod_in(3, [1]), "p = 1 mod 3", _rhs_thm22),
    CongruenceClaim(
        "Rem2.1", F1, Fraction(54), _mod_in(6, [5]), "p = 5 mod 6", _zero, external=True
    ),
    CongruenceClaim("Thm2.3", F4, Fraction(-192), _mod_in(6, [5]), "p = 5 mod 6", _zero),
    CongruenceClaim(
        "Conj1.4-open",
        F4,
        Fraction(-192),
        _mod_in(3, [1]),
        "p = 1 mod 3",
        _rhs_conj14,
        status="conjecture",
    ),
    CongruenceClaim("Thm2.5", F2, Fraction(128), _mod_in(8, [1, 3]), "p = 1,3 mod 8", _rhs_thm25),
    CongruenceClaim(
        "Rem2.2", F2, Fraction(128), _mod_in(8, [5, 7]), "p = 5,7 mod 8", _zero, external=True
    ),
    CongruenceClaim("Thm2.6", F5, Fraction(648), _mod_in(4, [3]), "p = 3 mod 4", _zero),
    CongruenceClaim("Thm2.7", F5, Fraction(-144), _mod_in(6, [5]), "p = 5 mod 6", _zero),
    CongruenceClaim(
        "Thm2.8", F5, Fraction(-3969), _mod_in(7, [3, 5, 6]), "p = 3,5,6 mod 7", _zero
    ),
    CongruenceClaim("Thm3.2", F3, Fraction(864), _mod_in(4, [1]), "p = 1 mod 4", _rhs_thm32),
    CongruenceClaim(
        "Rem3.1", F3, Fraction(864), _mod_in(4, [3]), "p = 3 mod 4", _zero, external=True
    ),
    CongruenceClaim(
        "Thm3.3a", F6, Fraction(-15) ** 3, _mod_in(7, [3, 5, 6]), "p = 3,5,6 mod 7",
        _zero, min_p=11,
    ),
    CongruenceClaim(
        "Thm3.3b", F6, Fraction(255) ** 3, _mod_in(7, [3, 5, 6]), "p = 3,5,6 mod 7",
        _zero, min_p=11,
    ),
    CongruenceClaim(
        "Thm3.4", F6, Fraction(-32) ** 3, _mod_in(11, [2, 6, 7, 8, 10]),
        "p = 2,6,7,8,10 mod 11", _zero,
    ),
    CongruenceClaim(
        "Thm3.5", F6, Fraction(-96) ** 3, _legendre_is(19, -1), "(p/19) = -1", _zero
    ),
    CongruenceClaim(
        "Conj1.5-open",
        F6,
        Fraction(-96) ** 3,
        _legendre_is(19, 1),
        "(p/19) = 1",
        _rhs_conj15,
        status="conjecture",
    ),
    CongruenceClaim(
        "Thm3.6", F6, Fraction(-960) ** 3, _legendre_is(43, -1), "(p/43) = -1", _zero,
        min_p=7,
    ),
    CongruenceClaim(
        "Thm3.7", F6, Fraction(-5280) ** 3, _legendre_is(67, -1), "(p/67) = -1", _zero,
        excluded=(11,), min_p=7,
    ),
    CongruenceClaim(
        "Thm3.8", F6, Fraction(-640320) ** 3, _legendre_is(163, -1), "(p/163) = -1",
        _zero, excluded=(2, 3, 5, 23, 29),
    ),
    CongruenceClaim(
        "Thm3.9", F6, Fraction(66) ** 3, _mod_in(4, [3]), "p = 3 mod 4", _zero,
        excluded=(3, 11),
    ),
    CongruenceClaim(
        "Thm3.10", F6, Fraction(20) ** 3, _mod_in(8, [5, 7]), "p = 5,7 mod 8", _zero,
        min_p=7,
    ),
    CongruenceClaim(
        "Thm3.11", F6, Fraction(54000), _mod_in(3, [2]), "p = 2 mod 3", _zero, min_p=7
    ),
)

_BY_ID = {c.id: c for c in _REGISTRY}


def registry() -> list[CongruenceClaim]:
    return list(_REGISTRY)


def get_claim(claim_id: str) -> CongruenceClaim:
    try:
        return _BY_ID[claim_id]
    except KeyError:
        raise KeyError(f"unknown claim {claim_id!r}") from None


def exact_sum_mod_p2(family: SumFamily, m: Fraction | int, p: int, upper: int | None = None) -> int:
    """Independent big-integer evaluation of a family sum, reduced mod p^2."""
    e2, e3, e4, e6 = family.exps
    m = Fraction(m)
    up = p - 1 if upper is None else upper
    total = Fraction(0)
    for k in range(up + 1):
        term = comb(2 * k, k) ** e2 * comb(3 * k, k) ** e3
        term *= comb(4 * k, 2 * k) ** e4 * comb(6 * k, 3 * k) ** e6
        total += Fraction(term) / m**k
    p2 = p * p
    return total.numerator * pow(total.denominator, -1, p2) % p2


def _report(
    claim: CongruenceClaim, ctx: PrimeContext, lhs: int, recheck: bool = True
) -> VerificationReport:
    rhs = claim.rhs(ctx) % ctx.p2
    if lhs == rhs:
        return VerificationReport(claim.id, ctx.p, PASS, lhs, rhs, claim.status)
    reason = None
    if recheck:
        exact = exact_sum_mod_p2(claim.family, claim.base, ctx.p)
        reason = f"exact recomputation gives lhs={exact}"
        if exact != lhs:
            reason += " (kernel disagrees!)"
    return VerificationReport(claim.id, ctx.p, FAIL, lhs, rhs, claim.status, reason)


def verify_claim(claim: CongruenceClaim, p: int) -> VerificationReport:
    """Check one claim at one prime."""
    why = claim.not_applicable(p)
    if why is not None:
        return VerificationReport(claim.id, p, NA, None, None, claim.status, why)
    ctx = PrimeContext(p)
    try:
        lhs = binomsums.sum_family(claim.family, claim.base, ctx)
    except BadBase as exc:
        return VerificationReport(claim.id, p, NA, None, None, claim.status, str(exc))
    return _report(claim, ctx, lhs)


def verify_prime(claims: Sequence[CongruenceClaim], p: int) -> list[VerificationReport]:
    """All claims at p, sharing one kernel pass for the applicable ones."""
    out: dict[str, VerificationReport] = {}
    todo = []
    for claim in claims:
        why = claim.not_applicable(p)
        if why is None:
            todo.append(claim)
        else:
            out[claim.id] = VerificationReport(claim.id, p, NA, None, None, claim.status, why)
    if todo:
        ctx = PrimeContext(p)
        keys = sorted({(c.family.id, c.base) for c in todo}, key=str)
        requests = [
            (binomsums.FAMILIES[f], binomsums.base_inverse(m, ctx)) for f, m in keys
        ]
        lhs = dict(zip(keys, binomsums.sums_at(ctx, requests)))
        for claim in todo:
            out[claim.id] = _report(claim, ctx, lhs[(claim.family.id, claim.base)])
    return [out[c.id] for c in claims]


def _verify_chunk(args: tuple[tuple[str, ...], list[int]]) -> list[VerificationReport]:
    ids, primes = args
    claims = [get_claim(i) for i in ids]
    reps: list[VerificationReport] = []
    for p in primes:
        reps.extend(verify_prime(claims, p))
    return reps


def sweep(
    claims: Sequence[CongruenceClaim],
    primes: Sequence[int],
    workers: int = 1,
) -> list[VerificationReport]:
    """Reports for every (claim, prime), ordered by registry position then p."""
    ids = tuple(c.id for c in claims)
    primes = sorted(primes)
    if workers <= 1 or len(primes) < 2:
        reps = _verify_chunk((ids, primes))
    else:
        # interleave so each worker gets a similar mix of small and large p
        chunks = [primes[i::workers * 4] for i in range(workers * 4)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reps = [r for part in pool.map(_verify_chunk, [(ids, c) for c in chunks if c])
                    for r in part]
    order = {cid: i for i, cid in enumerate(ids)}
    reps.sort(key=lambda r: (order[r.claim], r.p))
    return reps


def zero_branch_pairs() -> list[tuple[SumFamily, Fraction]]:
    """(family, base) pairs of F4/F5/F6 claims with a zero right-hand side."""
    seen: list[tuple[SumFamily, Fraction]] = []
    for c in _REGISTRY:
        if c.family in (F4, F5, F6) and c.status == "proved":
            key = (c.family, c.base)
            if key not in seen:
                seen.append(key)
    return seen


def _valuation(n: int, p: int) -> int:
    v = 0
    while n and n % p == 0:
        n //= p
        v += 1
    return v


def discriminant_valuation(family: SumFamily, m: Fraction | int, p: int) -> int:
    """p-adic valuation of 1 - 4c/m, the discriminant behind the x-substitution.

    When it is odd the substituted x does not live in Z_p.
    """
    c = {F4: 27, F5: 64, F6: 432}[family]
    d = 1 - Fraction(4 * c) / Fraction(m)
    if d == 0:
        return -1
    return _valuation(d.numerator, p) - _valuation(d.denominator, p)


def zero_implication_scan(
    family: SumFamily, m: Fraction | int, prime_limit: int, lo: int = 5
) -> VerificationOutcome:
    """Truncated sum = 0 (mod p) must force the full sum = 0 (mod p^2)."""
    if family not in (F4, F5, F6):
        raise ValueError("zero-implication scans cover F4, F5 and F6 only")
    m = Fraction(m)
    witnesses, failures = [], []
    for p in primes_between(max(lo, 5), prime_limit):
        if m.numerator % p == 0 or m.denominator % p == 0:
            continue
        ctx = PrimeContext(p)
        minv = binomsums.base_inverse(m, ctx)
        trunc = binomsums.sums_at(ctx, [(family, minv)], family.truncation_bound(p))[0]
        full = binomsums.sums_at(ctx, [(family, minv)])[0]
        if trunc % p == 0:
            witnesses.append(p)
            if full != 0:
                failures.append((p, full, discriminant_valuation(family, m, p)))
    detail = {"family": family.id, "m": str(m), "witnesses": witnesses}
    if failures:
        detail["failures"] = failures
    return VerificationOutcome(
        f"scan-zero {family.id} m={m} p<={prime_limit}", not failures, detail
    )


PAIRS = {1: (F4, F1, 27), 2: (F5, F2, 64), 3: (F6, F3, 432)}


def corollary_substitution_check(pair: int, m: Fraction | int, p: int) -> VerificationOutcome:
    """Big sum at 1/m equals the square of the small series at x, both roots.

    x = (1 - r) / (2c) where r^2 = 1 - 4c/m, so that x (1 - c x) = 1/m.
    """
    big, small, c = PAIRS[pair]
    m = Fraction(m)
    name = f"substitution {big.id}<->{small.id} m={m} p={p}"
    ctx = PrimeContext(p)
    p2 = ctx.p2
    if p <= 3 or m.numerator % p == 0 or m.denominator % p == 0:
        return VerificationOutcome(name, True, {"outcome": NA, "reason": "base not a unit"})
    disc = (1 - 4 * c * binomsums.base_inverse(m, ctx)) % p2
    try:
        r = sqrt_mod_p2(disc, ctx)
    except DegenerateRoot:
        return VerificationOutcome(
            name, True, {"outcome": NA, "reason": "discriminant divisible by p"}
        )
    if r is None:
        return VerificationOutcome(
            name, True, {"outcome": NA, "reason": "discriminant is a non-residue"}
        )
    minv = binomsums.base_inverse(m, ctx)
    big_sum = binomsums.sums_at(ctx, [(big, minv)])[0]
    detail: dict = {"outcome": PASS, "lhs": big_sum, "roots": []}
    ok = True
    for root in (r, p2 - r):
        x = (1 - root) * pow(2 * c, -1, p2) % p2
        kernel_ok = x * (1 - c * x) % p2 == minv
        sq = binomsums.series_at(small, x, ctx) ** 2 % p2
        detail["roots"].append({"x": x, "square": sq})
        ok = ok and kernel_ok and sq == big_sum
    if not ok:
        detail["outcome"] = FAIL
    return VerificationOutcome(name, ok, detail)


def squared_sum_check(pair: int, p: int) -> VerificationOutcome:
    """Degenerate x = 1/(2c): big sum at 4c equals (small sum at 2c)^2 mod p^2."""
    big, small, c = PAIRS[pair]
    ctx = PrimeContext(p)
    lhs = binomsums.sum_family(big, 4 * c, ctx)
    half = binomsums.sum_family(small, 2 * c, ctx)
    rhs = half * half % ctx.p2
    return VerificationOutcome(
        f"squared-sum {big.id}@{4 * c} vs ({small.id}@{2 * c})^2 p={p}",
        lhs == rhs,
        {"lhs": lhs, "rhs": rhs},
    )
