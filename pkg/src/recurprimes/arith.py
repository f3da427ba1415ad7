"""Integer arithmetic substrate: primality, factorization, prime sieves,
Legendre symbols and modular square roots.

Everything here is exact.  Primality is deterministic below 2^64
(Miller-Rabin with a proven witness set) and probabilistic above, with
error below 2^-128.  Factoring runs trial division to 2^16 and then
Brent-cycle Pollard rho under an effort budget; whatever resists the
budget is reported as a composite cofactor instead of an error.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import PreconditionError

# Deterministic Miller-Rabin witnesses for n < 3.3e24 (covers 2^64).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_TRIAL_LIMIT = 1 << 16
_DEFAULT_BUDGET = 2_000_000

_small_primes: list[int] | None = None

# 32-bit spf storage; beyond this use segmented_primes
MAX_SIEVE_LIMIT = 200_000_000


def _get_small_primes() -> list[int]:
    global _small_primes
    if _small_primes is None:
        _small_primes = [int(p) for p in _kernels.primes_up_to(_TRIAL_LIMIT)]
    return _small_primes


def _miller_rabin(n: int, bases) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int, seed: int | None = None) -> bool:
    """Primality test.

    Deterministic for |n| < 2^64; above that, 64 Miller-Rabin rounds with
    bases drawn from ``random.Random(seed)`` (seeded from n itself when no
    seed is given, so results are reproducible).  Negative n tests |n|.
    """
    n = abs(n)
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if n < 1 << 64:
        return _miller_rabin(n, _MR_WITNESSES)
    rng = random.Random(n if seed is None else seed)
    bases = [rng.randrange(2, n - 1) for _ in range(64)]
    return _miller_rabin(n, bases)


@dataclass(frozen=True)
class Factorization:
    """sign * cofactor * prod(p^e) == value; cofactor > 1 only when the
    factoring budget ran out on a composite."""

    sign: int
    factors: tuple[tuple[int, int], ...]
    cofactor: int = 1

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def value(self) -> int:
        v = self.sign * self.cofactor
        for p, e in self.factors:
            v *= p**e
        return v

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def __str__(self) -> str:
        if not self.factors and self.cofactor == 1:
            body = "1"
        else:
            parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors]
            if self.cofactor != 1:
                parts.append(f"[{self.cofactor}]")
            body = "*".join(parts)
        return ("-" if self.sign < 0 else "") + body


def _nth_root(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 1."""
    if n < (1 << 52):
        r = int(round(n ** (1.0 / k)))
    else:
        r = int(round(2 ** (math.log2(n) / k)))
    while r > 1 and r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def _perfect_power(n: int) -> tuple[int, int] | None:
    """(base, k) with base^k == n and k > 1, or None."""
    for k in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        if (1 << k) > n:
            break
        r = _nth_root(n, k)
        if r**k == n:
            return r, k
    return None


def _brent_rho(n: int, budget: list[int], rng: random.Random) -> int | None:
    """One nontrivial factor of odd composite n, or None if the budget dies."""
    while budget[0] > 0:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m, g, r, q = 128, 1, 1, 1
        x = ys = y
        while g == 1 and budget[0] > 0:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                budget[0] -= min(m, r - k)
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def factor(n: int, budget: int | None = None, seed: int = 0) -> Factorization:
    """Factor n into primes, with a rho-iteration budget for the hard part.

    Primes are found by trial division below 2^16 and Brent's rho above.
    On budget exhaustion the unfactored remainder (a composite) is returned
    as the cofactor; every listed prime passes is_prime.
    """
    if n == 0:
        raise PreconditionError("cannot factor 0")
    sign = -1 if n < 0 else 1
    n = abs(n)
    found: dict[int, int] = {}
    for p in _get_small_primes():
        if p * p > n:
            break
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    cofactor = 1
    if n > 1:
        if n < _TRIAL_LIMIT * _TRIAL_LIMIT or is_prime(n):
            # below 2^32 the remainder after trial division must be prime
            found[n] = found.get(n, 0) + 1
        else:
            remaining = [n]
            budget_box = [_DEFAULT_BUDGET if budget is None else budget]
            rng = random.Random(seed)
            while remaining:
                m = remaining.pop()
                if is_prime(m):
                    found[m] = found.get(m, 0) + 1
                    continue
                power = _perfect_power(m)
                if power is not None:
                    base, k = power
                    remaining.extend([base] * k)
                    continue
                d = _brent_rho(m, budget_box, rng)
                if d is None:
                    cofactor *= m
                else:
                    remaining.extend([d, m // d])
    return Factorization(sign, tuple(sorted(found.items())), cofactor)


class PrimeSieve:
    """Smallest-prime-factor table for 2..limit (32-bit entries).

    Immutable once built; any number of readers may share one instance.
    """

    def __init__(self, limit: int):
        if limit < 2:
            raise PreconditionError("sieve limit must be >= 2")
        if limit > MAX_SIEVE_LIMIT:
            raise PreconditionError(
                f"sieve limit {limit} exceeds {MAX_SIEVE_LIMIT}; use segmented_primes"
            )
        self.limit = int(limit)
        self.smallest_prime_factor = _kernels.spf_sieve(self.limit)

    def spf(self, n: int) -> int:
        if not 2 <= n <= self.limit:
            raise PreconditionError(f"n={n} outside sieve range 2..{self.limit}")
        return int(self.smallest_prime_factor[n])

    def is_prime(self, n: int) -> bool:
        return n >= 2 and self.spf(n) == n


def largest_prime_factor(n: int, sieve: PrimeSieve) -> int:
    """Largest prime dividing n, looked up by repeated spf division."""
    if not 2 <= n <= sieve.limit:
        raise PreconditionError(f"n={n} outside sieve range 2..{sieve.limit}")
    spf = sieve.smallest_prime_factor
    best = 0
    while n > 1:
        p = int(spf[n])
        best = max(best, p)
        while n % p == 0:
            n //= p
    return best


def primes_up_to(limit: int) -> np.ndarray:
    """All primes <= limit, increasing (int64 array)."""
    if limit < 2:
        raise PreconditionError("limit must be >= 2")
    return _kernels.primes_up_to(limit)


def segmented_primes(lo: int, hi: int, block: int = 1 << 22):
    """Yield primes in [lo, hi) without building a full-range table.

    Memory is O(block + sqrt(hi)); intended for ranges beyond the
    plain-sieve ceiling.
    """
    lo = max(lo, 2)
    if hi <= lo:
        return
    base = _kernels.primes_up_to(math.isqrt(hi - 1))
    for start in range(lo, hi, block):
        stop = min(start + block, hi)
        flags = np.ones(stop - start, dtype=bool)
        for p in map(int, base):
            first = max(p * p, ((start + p - 1) // p) * p)
            if first < stop:
                flags[first - start :: p] = False
        if start <= 1:
            flags[: 2 - start] = False
        for q in np.flatnonzero(flags):
            yield start + int(q)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for an odd prime p."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise PreconditionError(f"p={p} is not an odd prime")
    a %= p
    if a == 0:
        return 0
    ls = pow(a, (p - 1) // 2, p)
    return -1 if ls == p - 1 else 1


def sqrt_mod(a: int, p: int) -> tuple[int, ...] | None:
    """Solutions of x^2 = a (mod p) for an odd prime p.

    Returns (0,) when p | a, an increasing pair {r, p-r} when a is a
    quadratic residue, and None when it is a non-residue.
    """
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise PreconditionError(f"p={p} is not an odd prime")
    a %= p
    if a == 0:
        return (0,)
    if pow(a, (p - 1) // 2, p) == p - 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        r = _tonelli(a, p)
    return (r, p - r) if r <= p - r else (p - r, r)


def _tonelli(a: int, p: int) -> int:
    """Tonelli-Shanks for p = 1 (mod 4); a must be a quadratic residue."""
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
