"""Numpy implementations of the sieving kernels.

This is the fallback backend used when the compiled extension is not
available.  The three hot loops (smallest-prime-factor sieve, biased-number
counting, quadratic polynomial-value sieve) are expressed as strided numpy
operations so the per-element work stays out of the interpreter.
"""

import math

import numpy as np

BACKEND = "python"

# one sieve block; bounds peak memory for the segmented counters
_BLOCK = 1 << 21


def _eratosthenes(limit):
    """Boolean prime table for 0..limit."""
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


def primes_up_to(limit):
    """All primes <= limit as an int64 array, increasing."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    return np.flatnonzero(_eratosthenes(limit)).astype(np.int64)


def spf_sieve(limit):
    """Smallest prime factor of every k in 0..limit (uint32; spf[0] = spf[1] = 0)."""
    spf = np.zeros(limit + 1, dtype=np.uint32)
    if limit >= 2:
        spf[2::2] = 2
    for p in range(3, math.isqrt(limit) + 1, 2):
        if spf[p] == 0:
            view = spf[p * p :: 2 * p]
            view[view == 0] = p
    rem = np.flatnonzero(spf == 0)
    rem = rem[rem >= 2]
    spf[rem] = rem.astype(np.uint32)
    return spf


def _divide_out(view, p):
    """Divide p out of every entry of `view` completely.  All entries must be
    divisible by p at least once."""
    np.floor_divide(view, p, out=view)
    idx = np.flatnonzero(view % p == 0)
    while idx.size:
        vals = view[idx] // p
        view[idx] = vals
        idx = idx[vals % p == 0]


def _biased_in_block(lo, hi, base_primes):
    """Count biased k in [lo, hi) by sieving the block with primes <= sqrt(hi)."""
    rem = np.arange(lo, hi, dtype=np.int64)
    maxp = np.zeros(hi - lo, dtype=np.int64)
    for p in base_primes:
        if p * p >= hi:
            break
        start = (-lo) % p
        view = rem[start::p]
        if view.size == 0:
            continue
        maxp[start::p] = p
        _divide_out(view, p)
    # anything left over is a prime factor > sqrt(hi), hence the largest one
    lpf = np.where(rem > 1, rem, maxp)
    k = np.arange(lo, hi, dtype=np.int64)
    return int(np.count_nonzero(lpf * lpf > 4 * k))


def count_biased(limit):
    """#{2 <= k <= limit : largest prime factor q of k has q^2 > 4k}."""
    if limit < 2:
        return 0
    base_primes = primes_up_to(math.isqrt(limit))
    total = 0
    for lo in range(2, limit + 1, _BLOCK):
        hi = min(lo + _BLOCK, limit + 1)
        total += _biased_in_block(lo, hi, base_primes)
    return total


def biased_flags(limit):
    """Per-k biased flags for 0..limit (flags[0] = flags[1] = False)."""
    flags = np.zeros(limit + 1, dtype=bool)
    if limit < 2:
        return flags
    base_primes = primes_up_to(math.isqrt(limit))
    for lo in range(2, limit + 1, _BLOCK):
        hi = min(lo + _BLOCK, limit + 1)
        rem = np.arange(lo, hi, dtype=np.int64)
        maxp = np.zeros(hi - lo, dtype=np.int64)
        for p in base_primes:
            if p * p >= hi:
                break
            start = (-lo) % p
            view = rem[start::p]
            if view.size == 0:
                continue
            maxp[start::p] = p
            _divide_out(view, p)
        lpf = np.where(rem > 1, rem, maxp)
        k = np.arange(lo, hi, dtype=np.int64)
        flags[lo:hi] = lpf * lpf > 4 * k
    return flags


def _sqrt_mod_prime(a, p):
    """Tonelli-Shanks: one square root of a mod an odd prime p, or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c = s, pow(z, q, p)
    t, r = pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def quad_lpf(beta, limit):
    """Largest prime factor of |n^2 + beta| for n = 1..limit.

    Returns (lpf, hit_primes): lpf is an int64 array indexed by n (entry 0
    unused, value 0 where |n^2+beta| = 1); hit_primes lists every prime
    <= 2*limit dividing at least one of the values.  Any lpf entry larger
    than 2*limit is the single leftover prime of its value.
    """
    n = np.arange(limit + 1, dtype=np.int64)
    residue = np.abs(n * n + beta)
    residue[0] = 1
    maxp = np.zeros(limit + 1, dtype=np.int64)
    hits = []
    # beyond this bound a prime can divide a value at most once
    square_free_bound = math.isqrt(limit * limit + abs(beta))

    for p in map(int, primes_up_to(2 * limit)):
        a = (-beta) % p
        if p == 2:
            roots = (a,)
        elif a == 0:
            roots = (0,)
        else:
            r = _sqrt_mod_prime(a, p)
            if r is None:
                continue
            roots = (r, p - r)
        hit = False
        for r in roots:
            start = r if r >= 1 else p
            view = residue[start::p]
            if view.size == 0:
                continue
            hit = True
            maxp[start::p] = p
            if p > square_free_bound:
                np.floor_divide(view, p, out=view)
            else:
                _divide_out(view, p)
        if hit:
            hits.append(p)

    lpf = np.where(residue > 1, residue, maxp)
    lpf[0] = 0
    return lpf, np.array(hits, dtype=np.int64)
