from fractions import Fraction

import pytest

from supercong.binomsums import F1, F4, F5, F6
from supercong.claims import (
    CongruenceClaim,
    corollary_substitution_check,
    discriminant_valuation,
    exact_sum_mod_p2,
    get_claim,
    registry,
    squared_sum_check,
    sweep,
    verify_claim,
    verify_prime,
    zero_branch_pairs,
    zero_implication_scan,
)
from supercong.modp2 import primes_between
from supercong.report import FAIL, NA, PASS


def test_registry_contents():
    ids = [c.id for c in registry()]
    assert len(ids) == len(set(ids)) == 25
    assert {"Thm3.3a", "Thm3.3b", "Conj1.4-open", "Conj1.5-open"} <= set(ids)
    assert {c.id for c in registry() if c.status == "conjecture"} == {
        "Conj1.4-open",
        "Conj1.5-open",
    }
    assert {c.id for c in registry() if c.external} == {"Rem2.1", "Rem2.2", "Rem3.1"}
    with pytest.raises(KeyError):
        get_claim("Thm9.9")


def test_applicability_examples():
    assert "excluded" in get_claim("Thm3.8").not_applicable(23)
    assert get_claim("Eq1.1").not_applicable(5) is None
    assert get_claim("Thm2.2").not_applicable(11) is not None
    assert get_claim("Thm3.9").not_applicable(11) == "excluded prime 11"
    assert get_claim("Thm3.3a").not_applicable(7) == "needs p >= 11"
    # the base is checked before the congruence condition
    probe = CongruenceClaim("Probe", F4, Fraction(15), lambda p: False, "never", lambda ctx: 0)
    assert probe.not_applicable(5) == "p divides base 15"
    assert probe.not_applicable(7) == "needs never"


def test_applicable_bases_are_units():
    for claim in registry():
        for p in primes_between(5, 2000):
            if claim.not_applicable(p) is None:
                assert claim.base.numerator % p and claim.base.denominator % p


def test_verify_claim_examples():
    rep = verify_claim(get_claim("Eq1.1"), 5)
    assert (rep.outcome, rep.rhs, rep.lhs) == (PASS, 0, 0)
    rep = verify_claim(get_claim("Thm2.2"), 7)
    assert rep.outcome == PASS and rep.lhs == rep.rhs == 10
    rep = verify_claim(get_claim("Thm3.2"), 5)
    assert rep.outcome == PASS and rep.lhs == rep.rhs == 16
    assert exact_sum_mod_p2(get_claim("Thm3.2").family, 864, 5) == 16
    rep = verify_claim(get_claim("Thm2.3"), 5)
    assert rep.outcome == PASS and rep.lhs == 0


def test_na_reports_carry_a_reason():
    rep = verify_claim(get_claim("Thm2.2"), 11)
    assert rep.outcome == NA and rep.lhs is None and "1 mod 3" in rep.reason


def test_verify_prime_matches_verify_claim():
    claims = registry()
    for p in primes_between(5, 300):
        assert verify_prime(claims, p) == [verify_claim(c, p) for c in claims]


def test_failure_is_rechecked_exactly():
    wrong = CongruenceClaim("Fake", F1, Fraction(54), lambda p: True, "any", lambda ctx: 1)
    rep = verify_claim(wrong, 13)
    assert rep.outcome == FAIL
    assert rep.lhs != rep.rhs == 1
    assert rep.reason == f"exact recomputation gives lhs={rep.lhs}"


def test_sweep_small_range_all_pass():
    reps = sweep(registry(), primes_between(5, 1000))
    assert {r.outcome for r in reps} == {PASS, NA}
    assert [r.claim for r in reps[:3]] == ["Eq1.1"] * 3


def test_sweep_parallel_is_identical():
    primes = primes_between(5, 600)
    assert sweep(registry(), primes, workers=3) == sweep(registry(), primes, workers=1)


def test_zero_branch_pairs():
    pairs = {(f.id, m) for f, m in zero_branch_pairs()}
    assert ("F4", -192) in pairs and ("F5", 648) in pairs and ("F6", 54000) in pairs
    assert all(f in ("F4", "F5", "F6") for f, _ in pairs)


def test_zero_scan_examples():
    out = zero_implication_scan(F4, -192, 500)
    assert out
    assert {p for p in primes_between(5, 500) if p % 6 == 5} <= set(out.detail["witnesses"])
    out = zero_implication_scan(F5, 648, 500)
    assert out
    assert {p for p in primes_between(5, 500) if p % 4 == 3} <= set(out.detail["witnesses"])
    out = zero_implication_scan(F6, 54000, 500)
    assert out
    assert {p for p in primes_between(7, 500) if p % 3 == 2} <= set(out.detail["witnesses"])
    with pytest.raises(ValueError):
        zero_implication_scan(F1, 54, 100)


def test_zero_scan_ramified_counterexample():
    # p = 19 divides 1 - 1728/m exactly once; the implication breaks there
    m = Fraction(-96) ** 3
    out = zero_implication_scan(F6, m, 30)
    assert not out
    assert out.detail["failures"] == [(19, 19, 1)]
    assert exact_sum_mod_p2(F6, m, 19, F6.truncation_bound(19)) % 19 == 0
    assert exact_sum_mod_p2(F6, m, 19) == 19


def test_zero_scan_holds_off_ramified_primes():
    # every failure of the implication sits at an odd discriminant valuation
    for family, m in zero_branch_pairs():
        out = zero_implication_scan(family, m, 2000)
        for p, _, v in out.detail.get("failures", []):
            assert v % 2 == 1, (family.id, m, p)
            assert v == discriminant_valuation(family, m, p)


def test_substitution_examples():
    assert corollary_substitution_check(1, 108, 13).detail["outcome"] == NA
    assert corollary_substitution_check(2, 256, 13).detail["outcome"] == NA
    seen_pass = 0
    for p in primes_between(5, 500):
        out = corollary_substitution_check(1, -192, p)
        assert out, out.detail
        seen_pass += out.detail["outcome"] == PASS
    assert seen_pass > 20


def test_substitution_over_registry_bases():
    pair_of = {F4: 1, F5: 2, F6: 3}
    for claim in registry():
        if claim.family not in pair_of:
            continue
        for p in primes_between(5, 300):
            out = corollary_substitution_check(pair_of[claim.family], claim.base, p)
            assert out, (claim.id, p, out.detail)


def test_squared_sums():
    for p in primes_between(5, 2000):
        for pair in (1, 2, 3):
            out = squared_sum_check(pair, p)
            assert out, (pair, p, out.detail)
