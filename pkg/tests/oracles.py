"""Independent reference implementations used to freeze expected values.

Everything here is deliberately naive (trial division, per-pair gcds,
direct enumeration) and shares no code with the package internals it
checks.
"""

import math


def trial_factor(n):
    """Full factorization of |n| by trial division; dict prime -> exponent."""
    n = abs(n)
    assert n >= 1
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def trial_is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def simple_sieve(limit):
    """List of primes <= limit via plain Eratosthenes over a python list."""
    flags = [True] * (limit + 1)
    flags[0:2] = [False, False]
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            for k in range(p * p, limit + 1, p):
                flags[k] = False
    return [p for p in range(2, limit + 1) if flags[p]]


def lpf_by_trial(n):
    return max(trial_factor(n))


def naive_primitive_part(terms, n):
    """Largest divisor of |terms[n-1]| coprime to each earlier nonzero term,
    via per-term gcds (no running product)."""
    d = abs(terms[n - 1])
    assert d != 0
    for m in range(n - 1):
        t = abs(terms[m])
        if t == 0:
            continue
        g = math.gcd(d, t)
        while g > 1:
            d //= g
            g = math.gcd(d, g)
    return d


def naive_exception_scan(terms):
    return [
        n
        for n in range(1, len(terms) + 1)
        if terms[n - 1] != 0 and naive_primitive_part(terms, n) == 1
    ]


def naive_biased_count(N):
    """Direct enumeration: k <= N with lpf(k)^2 > 4k."""
    count = 0
    for k in range(2, N + 1):
        q = lpf_by_trial(k)
        if q * q > 4 * k:
            count += 1
    return count


def sqrt_mod_enumerate(a, p):
    """All x in 0..p-1 with x^2 = a (mod p), by enumeration."""
    return [x for x in range(p) if (x * x - a) % p == 0]


def multiplicative_order(a, p):
    assert p > 1
    x = a % p
    k = 1
    while x != 1:
        x = x * a % p
        k += 1
    return k
