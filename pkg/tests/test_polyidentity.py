import random

from supercong.binomsums import series_at
from supercong.modp2 import PrimeContext, primes_between
from supercong.polyidentity import (
    I1,
    I2,
    I3,
    IDENTITIES,
    PolyModP2,
    check_identity,
    first_difference,
    lhs_poly,
    rhs_poly,
)


def test_poly_trims_and_indexes():
    poly = PolyModP2.of([1, 9, 18, 0, 9], 9)
    assert poly.coeffs == (1,)
    assert poly.degree == 0
    assert poly[5] == 0
    assert PolyModP2.of([1, 2, 3], 49)(2) == 17


def test_p3_examples():
    ctx = PrimeContext(3)
    # 1 + 12 x(1-27x) + 540 (x(1-27x))^2 reduced mod 9
    assert lhs_poly(I1, ctx).coeffs == (1, 3)
    # (1 + 6x + 90x^2)^2 = 1 + 12x + 216x^2 + 1080x^3 + 8100x^4
    assert rhs_poly(I1, ctx).coeffs == (1, 3)
    assert check_identity(I1, ctx)


def test_low_coefficients():
    ctx = PrimeContext(101)
    for fam, x1 in ((I1, 12), (I2, 24), (I3, 120)):
        lhs, rhs = lhs_poly(fam, ctx), rhs_poly(fam, ctx)
        assert lhs[0] == rhs[0] == 1
        assert lhs[1] == rhs[1] == x1


def test_identity_examples():
    assert check_identity(I2, PrimeContext(5))
    assert check_identity(I3, PrimeContext(199))


def test_identity_all_odd_primes_to_200():
    for p in primes_between(3, 200):
        ctx = PrimeContext(p)
        for fam in IDENTITIES.values():
            outcome = check_identity(fam, ctx)
            assert outcome, outcome.detail


def test_first_difference_reports_index():
    a = PolyModP2.of([1, 2, 3], 49)
    b = PolyModP2.of([1, 2, 4], 49)
    assert first_difference(a, b) == 2
    assert first_difference(a, a) is None
    assert first_difference(a, PolyModP2.of([1, 2], 49)) == 2


def test_evaluation_matches_direct_sums():
    rng = random.Random(11)
    for p in primes_between(3, 500):
        ctx = PrimeContext(p)
        for fam in IDENTITIES.values():
            lhs, rhs = lhs_poly(fam, ctx), rhs_poly(fam, ctx)
            for _ in range(100):
                x = rng.randrange(ctx.p2)
                y = x * (1 - fam.c * x) % ctx.p2
                assert lhs(x) == series_at(fam.big, y, ctx)
                assert rhs(x) == series_at(fam.small, x, ctx) ** 2 % ctx.p2
