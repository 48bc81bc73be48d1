from math import isqrt

import pytest

from supercong.errors import NormalizationImpossible, NotRepresentable
from supercong.modp2 import primes_between
from supercong.quadform import (
    A2_2B2,
    A2_3B2,
    L2_27M2,
    SUM_OF_SQUARES,
    X2_19Y2,
    FormDescriptor,
    QuadRep,
    cornacchia,
    normalize,
    represent,
    selector_r,
)

FORMS = [SUM_OF_SQUARES, A2_2B2, A2_3B2, L2_27M2, X2_19Y2]


def brute(form, p):
    """All (x, y) with x, y >= 0 and scale*p = x^2 + d*y^2."""
    n = form.scale * p
    out = set()
    for y in range(isqrt(n // form.d) + 1):
        rest = n - form.d * y * y
        x = isqrt(rest)
        if x * x == rest:
            out.add((x, y))
    return out


def test_represent_examples():
    assert (represent(13, A2_3B2).x, represent(13, A2_3B2).y) == (1, 2)
    assert (represent(7, A2_3B2).x, represent(7, A2_3B2).y) == (2, 1)
    assert (represent(11, X2_19Y2).x, represent(11, X2_19Y2).y) == (5, 1)
    with pytest.raises(NotRepresentable):
        represent(5, A2_3B2)


def test_cornacchia_against_exhaustive_search():
    mismatches = []
    for p in primes_between(3, 2000):
        for form in FORMS:
            found = brute(form, p)
            try:
                rep = represent(p, form)
            except NotRepresentable:
                if found:
                    mismatches.append((p, form.d, "missed"))
                continue
            if (abs(rep.x), abs(rep.y)) not in found:
                mismatches.append((p, form.d, rep))
    assert mismatches == []


def test_non_primitive_4p_representations():
    # 4*31 = 4^2 + 27*2^2 has no primitive solution
    rep = represent(31, L2_27M2)
    assert (rep.x, rep.y) == (4, 2)
    rep = represent(23, X2_19Y2)
    assert (rep.x, rep.y) == (4, 2)


def test_ramified_representations():
    assert (represent(3, A2_3B2).x, represent(3, A2_3B2).y) == (0, 1)
    assert (represent(19, X2_19Y2).x, represent(19, X2_19Y2).y) == (0, 2)
    with pytest.raises(NormalizationImpossible):
        normalize(represent(3, A2_3B2))
    with pytest.raises(NotRepresentable):
        represent(3, L2_27M2)


def test_cornacchia_raw():
    assert cornacchia(1, 13, 5) in {(3, 2), (2, 3)}
    assert cornacchia(2, 11, 3) == (3, 1)


def test_unsupported_form_rejected():
    with pytest.raises(ValueError):
        FormDescriptor(5, 1, "x>0")


def test_quadrep_checks_equation():
    with pytest.raises(ValueError):
        QuadRep(1, 1, A2_3B2, 7)


def test_normalize_examples():
    a = normalize(represent(7, A2_3B2))
    assert a.x == -2
    c = normalize(QuadRep(3, 1, A2_2B2, 11))
    assert c.x == -3
    rep = normalize(QuadRep(1, 2, SUM_OF_SQUARES, 5))
    assert (rep.x, rep.y) == (1, -2)


def test_normalize_rules_hold_and_are_idempotent():
    rules = {
        "A=1mod3": lambda r: r.x % 3 == 1,
        "L=1mod3": lambda r: r.x % 3 == 1,
        "c=1mod4": lambda r: r.x % 4 == 1,
        "a=1mod4": lambda r: r.x % 4 == 1 and (r.p % 12 != 5 or (r.x - r.y) % 3 == 0),
        "x>0": lambda r: r.x > 0,
    }
    for p in primes_between(5, 2000):
        for form in FORMS:
            if form.d % p == 0:
                continue
            try:
                rep = normalize(represent(p, form))
            except NotRepresentable:
                continue
            assert rules[form.rule](rep), rep
            assert normalize(rep) == rep


def test_sum_of_squares_normalization_is_unique_for_5_mod_12():
    # among the eight sign/order choices exactly one meets both rules
    for p in primes_between(5, 1000):
        if p % 12 != 5:
            continue
        (u, v), = [s for s in brute(SUM_OF_SQUARES, p) if s[0] % 2]
        choices = {
            (a, b)
            for a in (u, -u)
            for b in (v, -v)
            if a % 4 == 1 and (a - b) % 3 == 0
        }
        rep = normalize(represent(p, SUM_OF_SQUARES))
        assert choices == {(rep.x, rep.y)}


def test_selector_examples():
    assert selector_r(normalize(represent(13, SUM_OF_SQUARES))) == 3
    assert selector_r(normalize(represent(5, SUM_OF_SQUARES))) == -2
    assert selector_r(normalize(represent(17, SUM_OF_SQUARES))) == 4


def test_selector_rejects_bad_input():
    with pytest.raises(ValueError):
        selector_r(QuadRep(1, 1, SUM_OF_SQUARES, 2))
    with pytest.raises(NormalizationImpossible):
        selector_r(QuadRep(1, 2, SUM_OF_SQUARES, 5))
