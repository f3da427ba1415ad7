# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled sieving kernels: smallest-prime-factor table, biased-number
counting, and the quadratic polynomial-value sieve."""

import numpy as np

from libc.math cimport sqrt
from libc.stdint cimport int64_t, uint8_t, uint32_t

BACKEND = "compiled"

# one sieve block; bounds peak memory for the segmented counters
cdef long long BLOCK = 1 << 21


cdef int64_t _isqrt(int64_t n):
    cdef int64_t r
    if n < 0:
        return -1
    r = <int64_t>sqrt(<double>n)
    while r > 0 and r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


cdef unsigned long long _powmod(unsigned long long b, unsigned long long e,
                                unsigned long long m):
    cdef unsigned long long r = 1
    b %= m
    while e:
        if e & 1:
            r = r * b % m
        b = b * b % m
        e >>= 1
    return r


cdef long long _sqrt_mod_prime_c(long long a, long long p):
    """One square root of a mod an odd prime p < 2^31, or -1 for a non-residue."""
    cdef long long q, z, m, c, t, r, i, t2, b
    a %= p
    if a < 0:
        a += p
    if a == 0:
        return 0
    if _powmod(a, (p - 1) // 2, p) != 1:
        return -1
    if p % 4 == 3:
        return <long long>_powmod(a, (p + 1) // 4, p)
    q = p - 1
    m = 0
    while q % 2 == 0:
        q //= 2
        m += 1
    z = 2
    while _powmod(z, (p - 1) // 2, p) != p - 1:
        z += 1
    c = <long long>_powmod(z, q, p)
    t = <long long>_powmod(a, q, p)
    r = <long long>_powmod(a, (q + 1) // 2, p)
    while t != 1:
        i = 0
        t2 = t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = <long long>_powmod(c, (<unsigned long long>1) << (m - i - 1), p)
        m = i
        c = b * b % p
        t = t * c % p
        r = r * b % p
    return r


def primes_up_to(long long limit):
    """All primes <= limit as an int64 array, increasing."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    flags_arr = np.ones(limit + 1, dtype=np.uint8)
    cdef uint8_t[::1] flags = flags_arr
    cdef long long p, j, root
    flags[0] = 0
    flags[1] = 0
    root = _isqrt(limit)
    for p in range(2, root + 1):
        if flags[p]:
            for j in range(p * p, limit + 1, p):
                flags[j] = 0
    return np.flatnonzero(flags_arr).astype(np.int64)


def spf_sieve(long long limit):
    """Smallest prime factor of every k in 0..limit (uint32; spf[0] = spf[1] = 0)."""
    spf_arr = np.zeros(limit + 1, dtype=np.uint32)
    cdef uint32_t[::1] spf = spf_arr
    cdef long long i, j
    for i in range(2, limit + 1):
        if spf[i] == 0:
            spf[i] = <uint32_t>i
            if i <= limit // i:
                for j in range(i * i, limit + 1, i):
                    if spf[j] == 0:
                        spf[j] = <uint32_t>i
    return spf_arr


cdef long long _biased_block(long long lo, long long hi, int64_t[::1] bp,
                             int64_t[::1] rem, int64_t[::1] maxp, bint[::1] flag_out):
    """Sieve [lo, hi); returns the biased count, and fills flag_out when given."""
    cdef long long m = hi - lo
    cdef long long j, p, start, v, k, count
    cdef Py_ssize_t pi
    for j in range(m):
        rem[j] = lo + j
        maxp[j] = 0
    for pi in range(bp.shape[0]):
        p = bp[pi]
        if p * p >= hi:
            break
        start = lo % p
        if start:
            start = p - start
        for j in range(start, m, p):
            v = rem[j] // p
            while v % p == 0:
                v //= p
            rem[j] = v
            maxp[j] = p
    count = 0
    for j in range(m):
        v = rem[j] if rem[j] > 1 else maxp[j]
        k = lo + j
        if v * v > 4 * k:
            count += 1
            if flag_out is not None:
                flag_out[j] = 1
    return count


def count_biased(long long limit):
    """#{2 <= k <= limit : largest prime factor q of k has q^2 > 4k}."""
    if limit < 2:
        return 0
    base = primes_up_to(_isqrt(limit))
    cdef int64_t[::1] bp = base
    rem_arr = np.empty(BLOCK, dtype=np.int64)
    maxp_arr = np.empty(BLOCK, dtype=np.int64)
    cdef int64_t[::1] rem = rem_arr
    cdef int64_t[::1] maxp = maxp_arr
    cdef long long lo, hi, total = 0
    lo = 2
    while lo <= limit:
        hi = lo + BLOCK
        if hi > limit + 1:
            hi = limit + 1
        total += _biased_block(lo, hi, bp, rem, maxp, None)
        lo = hi
    return total


def biased_flags(long long limit):
    """Per-k biased flags for 0..limit (flags[0] = flags[1] = False)."""
    flags_arr = np.zeros(limit + 1, dtype=np.intc)
    if limit < 2:
        return flags_arr.astype(bool)
    base = primes_up_to(_isqrt(limit))
    cdef int64_t[::1] bp = base
    rem_arr = np.empty(BLOCK, dtype=np.int64)
    maxp_arr = np.empty(BLOCK, dtype=np.int64)
    cdef int64_t[::1] rem = rem_arr
    cdef int64_t[::1] maxp = maxp_arr
    cdef bint[::1] flags = flags_arr
    cdef long long lo, hi
    lo = 2
    while lo <= limit:
        hi = lo + BLOCK
        if hi > limit + 1:
            hi = limit + 1
        _biased_block(lo, hi, bp, rem, maxp, flags[lo:hi])
        lo = hi
    return flags_arr.astype(bool)


def quad_lpf(object beta_obj, long long limit):
    """Largest prime factor of |n^2 + beta| for n = 1..limit.

    Returns (lpf, hit_primes); see the python backend for the contract.
    """
    cdef long long beta = beta_obj
    cdef long long top = 2 * limit
    res_arr = np.empty(limit + 1, dtype=np.int64)
    maxp_arr = np.zeros(limit + 1, dtype=np.uint32)
    cdef int64_t[::1] residue = res_arr
    cdef uint32_t[::1] maxp = maxp_arr
    cdef long long n, v
    residue[0] = 1
    for n in range(1, limit + 1):
        v = n * n + beta
        residue[n] = v if v >= 0 else -v

    flags_arr = np.ones(top + 1, dtype=np.uint8)
    cdef uint8_t[::1] flags = flags_arr
    cdef long long p, j
    flags[0] = 0
    flags[1] = 0
    for p in range(2, _isqrt(top) + 1):
        if flags[p]:
            for j in range(p * p, top + 1, p):
                flags[j] = 0

    hits_arr = np.empty(int(np.count_nonzero(flags_arr)), dtype=np.int64)
    cdef int64_t[::1] hits = hits_arr
    cdef Py_ssize_t nhits = 0
    cdef long long sfb = _isqrt(limit * limit + (beta if beta >= 0 else -beta))
    cdef long long a, r, root, start
    cdef int nroots, ri, hit
    cdef long long roots[2]

    for p in range(2, top + 1):
        if not flags[p]:
            continue
        a = (-beta) % p
        if a < 0:
            a += p
        if p == 2:
            roots[0] = a
            nroots = 1
        elif a == 0:
            roots[0] = 0
            nroots = 1
        else:
            r = _sqrt_mod_prime_c(a, p)
            if r < 0:
                continue
            roots[0] = r
            roots[1] = p - r
            nroots = 2
        hit = 0
        for ri in range(nroots):
            root = roots[ri]
            start = root if root >= 1 else p
            if start > limit:
                continue
            hit = 1
            if p > sfb:
                for n in range(start, limit + 1, p):
                    residue[n] //= p
                    maxp[n] = <uint32_t>p
            else:
                for n in range(start, limit + 1, p):
                    v = residue[n] // p
                    while v % p == 0:
                        v //= p
                    residue[n] = v
                    maxp[n] = <uint32_t>p
        if hit:
            hits[nhits] = p
            nhits += 1

    for n in range(1, limit + 1):
        if residue[n] == 1:
            residue[n] = <int64_t>maxp[n]
    residue[0] = 0
    return res_arr, hits_arr[:nhits].copy()
