"""Pure-Python kernels.  Must stay signature-compatible with ``_ckernels``.

The central binomials C(2k,k), C(3k,k), C(4k,2k), C(6k,3k) are advanced one
step at a time through their integer ratios, each kept as a unit mod p^2 and
an exact p-adic valuation.  A family is an exponent vector over these four
binomials, e.g. (2, 1, 0, 0) for C(2k,k)^2 C(3k,k).
"""

from __future__ import annotations

from typing import Sequence


def _split(n: int, p: int, p2: int) -> tuple[int, int]:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return n % p2, v


def _walk(p: int, n: int):
    """Yield (k, units, vals) for k = 0 .. n-1."""
    p2 = p * p
    u2 = u3 = u4 = u6 = 1
    v2 = v3 = v4 = v6 = 0
    two, _ = _split(2, p, p2)
    three, vthree = _split(3, p, p2)
    eight, _ = _split(8, p, p2)
    half = pow(two, -1, p2)
    for k in range(n):
        yield k, (u2, u3, u4, u6), (v2, v3, v4, v6)
        ua, va = _split(2 * k + 1, p, p2)
        ub, vb = _split(k + 1, p, p2)
        uc1, vc1 = _split(3 * k + 1, p, p2)
        uc2, vc2 = _split(3 * k + 2, p, p2)
        ud1, vd1 = _split(4 * k + 1, p, p2)
        ud3, vd3 = _split(4 * k + 3, p, p2)
        ue1, ve1 = _split(6 * k + 1, p, p2)
        ue5, ve5 = _split(6 * k + 5, p, p2)
        ia = pow(ua, -1, p2)
        ib = pow(ub, -1, p2)
        ic = pow(uc1 * uc2 % p2, -1, p2)
        # C(2k+2,k+1) = C(2k,k) * 2(2k+1)/(k+1)
        u2 = u2 * two * ua % p2 * ib % p2
        v2 += va - vb
        # C(3k+3,k+1) = C(3k,k) * 3(3k+1)(3k+2) / (2(k+1)(2k+1))
        u3 = u3 * three * uc1 % p2 * uc2 % p2 * half % p2 * ib % p2 * ia % p2
        v3 += vthree + vc1 + vc2 - vb - va
        # C(4k+4,2k+2) = C(4k,2k) * 2(4k+1)(4k+3) / ((2k+1)(k+1))
        u4 = u4 * two * ud1 % p2 * ud3 % p2 * ia % p2 * ib % p2
        v4 += vd1 + vd3 - va - vb
        # C(6k+6,3k+3) = C(6k,3k) * 8(6k+1)(2k+1)(6k+5) / ((3k+1)(3k+2)(k+1))
        u6 = u6 * eight * ue1 % p2 * ua % p2 * ue5 % p2 * ic % p2 * ib % p2
        v6 += ve1 + va + ve5 - vc1 - vc2 - vb


def central_binomials(p: int, n: int) -> tuple[list[int], list[int]]:
    """Flattened (units, vals) of the four central binomials for k < n.

    Entry ``4*k + j`` holds binomial j of (C(2k,k), C(3k,k), C(4k,2k), C(6k,3k)).
    """
    units: list[int] = []
    vals: list[int] = []
    for _, us, vs in _walk(p, n):
        units.extend(us)
        vals.extend(vs)
    return units, vals


def family_terms(p: int, exps: Sequence[int], n: int) -> list[int]:
    """Residues mod p^2 of the family product for k = 0 .. n-1."""
    p2 = p * p
    e2, e3, e4, e6 = exps
    out = []
    for _, (u2, u3, u4, u6), (v2, v3, v4, v6) in _walk(p, n):
        v = e2 * v2 + e3 * v3 + e4 * v4 + e6 * v6
        if v >= 2:
            out.append(0)
            continue
        t = pow(u2, e2, p2) * pow(u3, e3, p2) % p2 * pow(u4, e4, p2) % p2
        t = t * pow(u6, e6, p2) % p2
        out.append(t * p % p2 if v else t)
    return out


def family_sums(
    p: int, exps: Sequence[Sequence[int]], mults: Sequence[int], upper: int
) -> list[int]:
    """For each request j: sum_{k=0}^{upper} term_j(k) * mults[j]**k mod p^2."""
    p2 = p * p
    nreq = len(exps)
    acc = [0] * nreq
    pw = [1] * nreq
    for _, (u2, u3, u4, u6), (v2, v3, v4, v6) in _walk(p, upper + 1):
        for j in range(nreq):
            e2, e3, e4, e6 = exps[j]
            v = e2 * v2 + e3 * v3 + e4 * v4 + e6 * v6
            if v < 2:
                t = pow(u2, e2, p2) * pow(u3, e3, p2) % p2 * pow(u4, e4, p2) % p2
                t = t * pow(u6, e6, p2) % p2 * pw[j] % p2
                acc[j] = (acc[j] + (t * p if v else t)) % p2
            pw[j] = pw[j] * mults[j] % p2
    return acc


def poly_square(coeffs: Sequence[int], mod: int) -> list[int]:
    """Schoolbook square of a polynomial, coefficients mod ``mod``."""
    n = len(coeffs)
    if n == 0:
        return []
    out = [0] * (2 * n - 1)
    for i, a in enumerate(coeffs):
        if a == 0:
            continue
        for j, b in enumerate(coeffs):
            out[i + j] += a * b
    return [c % mod for c in out]


def kernel_expand(weights: Sequence[int], c: int, mod: int) -> list[int]:
    """Coefficients of sum_k weights[k] * (x (1 - c x))**k mod ``mod``.

    Row k of (1 - c x)**k is built from row k-1 by the Pascal recurrence.
    """
    n = len(weights)
    if n == 0:
        return []
    out = [0] * (2 * n - 1)
    row = [1]
    negc = -c % mod
    for k, w in enumerate(weights):
        if k:
            nxt = row + [0]
            for r in range(1, k + 1):
                nxt[r] = (nxt[r] + negc * row[r - 1]) % mod
            row = nxt
        if w == 0:
            continue
        for r, b in enumerate(row):
            out[k + r] += w * b
    return [x % mod for x in out]
