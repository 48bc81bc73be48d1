from fractions import Fraction

import pytest

from supercong.errors import ConventionUndetermined
from supercong.modp2 import PrimeContext, primes_between
from supercong.polyidentity import IDENTITIES, lhs_poly, rhs_poly
from supercong.wz import (
    L1,
    L2,
    L3,
    LEMMAS,
    LemmaFamily,
    binom,
    certificate_check,
    find_convention,
    lemma_direct_check,
    lemma_mod_p2_coefficients,
    predicted_singular,
    recurrence_check,
)

SIDES = [(fam, side) for fam in LEMMAS.values() for side in ("lhs", "rhs")]


def test_binom_is_total():
    assert binom(5, 2) == 10
    assert binom(3, 4) == 0
    assert binom(3, -1) == 0
    assert binom(-2, 1) == 0


def test_lemma_small_values():
    assert L1.side_sum("lhs", 0) == L1.side_sum("rhs", 0) == 1
    assert L1.side_sum("lhs", 1) == L1.side_sum("rhs", 1) == 12
    assert L2.side_sum("lhs", 1) == L2.side_sum("rhs", 1) == 24
    assert L3.side_sum("lhs", 1) == L3.side_sum("rhs", 1) == 120


def test_constants_match_identity_kernels():
    for i, fam in LEMMAS.items():
        assert fam.const == -IDENTITIES[i].c


def test_summand_support():
    # C(k, m-k) vanishes once m - k > k
    assert L1.lhs_term(5, 2) == 0
    assert L1.lhs_term(4, 2) != 0
    assert L1.term("rhs", 3, 4) == 0
    with pytest.raises(ValueError):
        L1.term("middle", 1, 1)


@pytest.mark.parametrize("fam", LEMMAS.values(), ids=lambda f: f.id)
def test_lemma_direct(fam):
    assert lemma_direct_check(fam, 200)


def test_recurrence_forces_s2():
    a0, a1, a2 = L1.recurrence(0)
    s0, s1 = 1, 12
    assert (a0, a1, a2) == (648, -198, 8)
    s2 = Fraction(-(a0 * s0 + a1 * s1), a2)
    assert s2 == 216 == L1.side_sum("lhs", 2) == L1.side_sum("rhs", 2)


@pytest.mark.parametrize("fam,side", SIDES, ids=lambda x: getattr(x, "id", x))
def test_recurrence(fam, side):
    assert recurrence_check(fam, side, 200)


def test_recurrence_detects_wrong_coefficients():
    broken = LemmaFamily(
        "bad", L1.const, L1.big, L1.small,
        lambda m: (L1.recurrence(m)[0] + 1,) + L1.recurrence(m)[1:],
        L1.certificates,
    )
    outcome = recurrence_check(broken, "lhs", 20)
    assert not outcome and outcome.detail["m"] == 0


def test_certificate_zero_line():
    for fam, side in SIDES:
        for m in range(10):
            assert fam.certificates[side](m, 0) == 0


def test_certificates_share_one_convention():
    conventions = {find_convention(fam, side) for fam, side in SIDES}
    assert conventions == {"G(m,k+1)-G(m,k)"}


@pytest.mark.parametrize("fam,side", SIDES, ids=lambda x: getattr(x, "id", x))
def test_certificate_grid(fam, side):
    outcome = certificate_check(fam, side, 30, 30)
    assert outcome, outcome.detail
    assert outcome.detail["singular_matches_prediction"]
    assert outcome.detail["singular"] == len(predicted_singular(30, 30)) == 59


def test_certificate_rejects_perturbed_certificate():
    good = L2.certificates["lhs"]
    bad = dict(L2.certificates, lhs=lambda m, k: None if good(m, k) is None else 2 * good(m, k))
    broken = LemmaFamily("bad", L2.const, L2.big, L2.small, L2.recurrence, bad)
    with pytest.raises(ConventionUndetermined):
        find_convention(broken, "lhs")
    outcome = certificate_check(broken, "lhs", 6, 6, convention="G(m,k+1)-G(m,k)")
    assert not outcome


def test_lemma_reduces_to_polynomial_coefficients():
    # coefficients below x^p of both polynomial sides equal the lemma value mod p^2
    for p in primes_between(3, 200):
        ctx = PrimeContext(p)
        for i, fam in LEMMAS.items():
            expected = lemma_mod_p2_coefficients(fam, p)
            lhs, rhs = lhs_poly(IDENTITIES[i], ctx), rhs_poly(IDENTITIES[i], ctx)
            assert [lhs[m] for m in range(p)] == expected
            assert [rhs[m] for m in range(p)] == expected
