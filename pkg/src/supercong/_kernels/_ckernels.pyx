# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.  Must stay signature-compatible with ``_pykernels``.

All residues live below p^2 < 2^62, products are formed in 128 bits.
"""

from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport malloc, free

cdef extern from *:
    ctypedef unsigned long long u128 "__uint128_t"

# p^2 must fit in 62 bits so that sums of two residues never overflow.
MAX_PRIME = (1 << 31) - 1


cdef inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) nogil:
    return <uint64_t>((<u128>a * b) % m)


cdef inline uint64_t invmod(uint64_t a, uint64_t m) nogil:
    cdef int64_t t = 0, newt = 1, q, tmp
    cdef int64_t r = <int64_t>m, newr = <int64_t>a
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += <int64_t>m
    return <uint64_t>t


cdef inline uint64_t powmod(uint64_t b, int e, uint64_t m) nogil:
    cdef uint64_t r = 1 % m
    while e > 0:
        if e & 1:
            r = mulmod(r, b, m)
        b = mulmod(b, b, m)
        e >>= 1
    return r


cdef inline int split(uint64_t n, uint64_t p, uint64_t p2, uint64_t* unit) nogil:
    cdef int v = 0
    while n % p == 0:
        n //= p
        v += 1
    unit[0] = n % p2
    return v


cdef struct Walk:
    uint64_t p
    uint64_t p2
    uint64_t two
    uint64_t three
    uint64_t eight
    uint64_t half
    int vthree
    uint64_t u[4]
    int v[4]


cdef void walk_init(Walk* w, uint64_t p) nogil:
    cdef int j
    w.p = p
    w.p2 = p * p
    split(2, p, w.p2, &w.two)
    w.vthree = split(3, p, w.p2, &w.three)
    split(8, p, w.p2, &w.eight)
    w.half = invmod(w.two, w.p2)
    for j in range(4):
        w.u[j] = 1
        w.v[j] = 0


cdef void walk_step(Walk* w, uint64_t k) nogil:
    """Advance the four central binomials from k to k + 1."""
    cdef uint64_t p = w.p, p2 = w.p2
    cdef uint64_t ua, ub, uc1, uc2, ud1, ud3, ue1, ue5, ia, ib, ic
    cdef int va, vb, vc1, vc2, vd1, vd3, ve1, ve5
    va = split(2 * k + 1, p, p2, &ua)
    vb = split(k + 1, p, p2, &ub)
    vc1 = split(3 * k + 1, p, p2, &uc1)
    vc2 = split(3 * k + 2, p, p2, &uc2)
    vd1 = split(4 * k + 1, p, p2, &ud1)
    vd3 = split(4 * k + 3, p, p2, &ud3)
    ve1 = split(6 * k + 1, p, p2, &ue1)
    ve5 = split(6 * k + 5, p, p2, &ue5)
    ia = invmod(ua, p2)
    ib = invmod(ub, p2)
    ic = invmod(mulmod(uc1, uc2, p2), p2)

    w.u[0] = mulmod(mulmod(mulmod(w.u[0], w.two, p2), ua, p2), ib, p2)
    w.v[0] += va - vb

    w.u[1] = mulmod(mulmod(mulmod(w.u[1], w.three, p2), uc1, p2), uc2, p2)
    w.u[1] = mulmod(mulmod(mulmod(w.u[1], w.half, p2), ib, p2), ia, p2)
    w.v[1] += w.vthree + vc1 + vc2 - vb - va

    w.u[2] = mulmod(mulmod(mulmod(w.u[2], w.two, p2), ud1, p2), ud3, p2)
    w.u[2] = mulmod(mulmod(w.u[2], ia, p2), ib, p2)
    w.v[2] += vd1 + vd3 - va - vb

    w.u[3] = mulmod(mulmod(mulmod(w.u[3], w.eight, p2), ue1, p2), ua, p2)
    w.u[3] = mulmod(mulmod(mulmod(w.u[3], ue5, p2), ic, p2), ib, p2)
    w.v[3] += ve1 + va + ve5 - vc1 - vc2 - vb


cdef inline uint64_t term(Walk* w, int* e) nogil:
    """Residue of prod_j binom_j ** e[j] mod p^2."""
    cdef int v = e[0] * w.v[0] + e[1] * w.v[1] + e[2] * w.v[2] + e[3] * w.v[3]
    cdef uint64_t t
    cdef int j
    if v >= 2:
        return 0
    t = 1
    for j in range(4):
        if e[j]:
            t = mulmod(t, powmod(w.u[j], e[j], w.p2), w.p2)
    if v == 1:
        t = mulmod(t, w.p, w.p2)
    return t


def _check_prime(p):
    if p < 3 or p > MAX_PRIME:
        raise OverflowError(f"compiled kernels need 3 <= p <= {MAX_PRIME}")


def central_binomials(p, n):
    """Flattened (units, vals) of the four central binomials for k < n."""
    _check_prime(p)
    cdef Walk w
    cdef uint64_t k
    cdef int j
    cdef Py_ssize_t nn = n
    walk_init(&w, p)
    units = []
    vals = []
    for k in range(<uint64_t>nn):
        for j in range(4):
            units.append(w.u[j])
            vals.append(w.v[j])
        walk_step(&w, k)
    return units, vals


def family_terms(p, exps, n):
    """Residues mod p^2 of the family product for k = 0 .. n-1."""
    _check_prime(p)
    cdef Walk w
    cdef int e[4]
    cdef int j
    cdef uint64_t k
    cdef Py_ssize_t nn = n
    for j in range(4):
        e[j] = exps[j]
    walk_init(&w, p)
    out = []
    for k in range(<uint64_t>nn):
        out.append(term(&w, e))
        walk_step(&w, k)
    return out


def family_sums(p, exps, mults, upper):
    """For each request j: sum_{k=0}^{upper} term_j(k) * mults[j]**k mod p^2."""
    _check_prime(p)
    cdef Walk w
    cdef Py_ssize_t nreq = len(exps), j, i
    cdef uint64_t k, t, p2 = <uint64_t>p * <uint64_t>p
    cdef int64_t up = upper
    cdef int* e = <int*>malloc(4 * nreq * sizeof(int)) if nreq else NULL
    cdef uint64_t* mul = <uint64_t*>malloc(3 * nreq * sizeof(uint64_t)) if nreq else NULL
    if nreq and (e == NULL or mul == NULL):
        free(e)
        free(mul)
        raise MemoryError()
    cdef uint64_t* acc = mul + nreq
    cdef uint64_t* pw = mul + 2 * nreq
    try:
        for j in range(nreq):
            for i in range(4):
                e[4 * j + i] = exps[j][i]
            mul[j] = mults[j] % p2
            acc[j] = 0
            pw[j] = 1
        walk_init(&w, p)
        with nogil:
            for k in range(<uint64_t>(up + 1 if up >= 0 else 0)):
                for j in range(nreq):
                    t = term(&w, e + 4 * j)
                    if t:
                        acc[j] = (acc[j] + mulmod(t, pw[j], p2)) % p2
                    pw[j] = mulmod(pw[j], mul[j], p2)
                walk_step(&w, k)
        return [acc[j] for j in range(nreq)]
    finally:
        free(e)
        free(mul)


def poly_square(coeffs, mod):
    """Schoolbook square of a polynomial, coefficients mod ``mod``."""
    cdef Py_ssize_t n = len(coeffs), i, j
    if n == 0:
        return []
    cdef uint64_t m = mod
    cdef uint64_t* a = <uint64_t*>malloc(n * sizeof(uint64_t))
    cdef uint64_t* out = <uint64_t*>malloc((2 * n - 1) * sizeof(uint64_t))
    if a == NULL or out == NULL:
        free(a)
        free(out)
        raise MemoryError()
    try:
        for i in range(n):
            a[i] = coeffs[i] % mod
        for i in range(2 * n - 1):
            out[i] = 0
        with nogil:
            for i in range(n):
                if a[i] == 0:
                    continue
                for j in range(n):
                    out[i + j] = (out[i + j] + mulmod(a[i], a[j], m)) % m
        return [out[i] for i in range(2 * n - 1)]
    finally:
        free(a)
        free(out)


def kernel_expand(weights, c, mod):
    """Coefficients of sum_k weights[k] * (x (1 - c x))**k mod ``mod``."""
    cdef Py_ssize_t n = len(weights), k, r
    if n == 0:
        return []
    cdef uint64_t m = mod
    cdef uint64_t negc = (-c) % mod
    cdef uint64_t* w = <uint64_t*>malloc(n * sizeof(uint64_t))
    cdef uint64_t* row = <uint64_t*>malloc(n * sizeof(uint64_t))
    cdef uint64_t* out = <uint64_t*>malloc((2 * n - 1) * sizeof(uint64_t))
    if w == NULL or row == NULL or out == NULL:
        free(w)
        free(row)
        free(out)
        raise MemoryError()
    try:
        for k in range(n):
            w[k] = weights[k] % mod
        for k in range(2 * n - 1):
            out[k] = 0
        with nogil:
            row[0] = 1 % m
            for k in range(n):
                if k:
                    # in-place Pascal step, right to left
                    row[k] = mulmod(negc, row[k - 1], m)
                    r = k - 1
                    while r >= 1:
                        row[r] = (row[r] + mulmod(negc, row[r - 1], m)) % m
                        r -= 1
                if w[k] == 0:
                    continue
                for r in range(k + 1):
                    out[k + r] = (out[k + r] + mulmod(w[k], row[r], m)) % m
        return [out[k] for k in range(2 * n - 1)]
    finally:
        free(w)
        free(row)
        free(out)
