"""Biased numbers: k is biased when its largest prime factor q satisfies
q > 2*sqrt(k), tested exactly as q^2 > 4k.

Two independent counters are provided: a sieve enumeration (the oracle) and
the two-sum prime formula

    sum_{p^2 < 4N} floor(p/4)  +  sum_{p^2 > 4N, p <= N} floor(N/p),

which agree exactly for every N (writing a biased number as q*m forces
m < q/4, and m < q/4 already caps the cofactor's prime factors below q).
The counts grow like N*log(2); convergence of the ratio is slow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels, arith
from .errors import PreconditionError

LOG2 = 0.69314718055994530942

MAX_COUNT_LIMIT = 100_000_000


def is_biased(k: int, sieve: arith.PrimeSieve) -> bool:
    """q^2 > 4k for the largest prime factor q of k (2 <= k <= sieve.limit)."""
    if not 2 <= k <= sieve.limit:
        raise PreconditionError(f"k={k} outside sieve range 2..{sieve.limit}")
    q = arith.largest_prime_factor(k, sieve)
    return q * q > 4 * k


def count_biased_oracle(N: int) -> int:
    """#{2 <= k <= N : k biased}, by direct enumeration over a sieve."""
    if N > MAX_COUNT_LIMIT:
        raise PreconditionError(f"N={N} exceeds the {MAX_COUNT_LIMIT} memory guard")
    if N < 2:
        return 0
    return _kernels.count_biased(N)


def count_biased_formula(N: int) -> int:
    """The same count via the two prime sums; matches the oracle exactly.

    The boundary p = 2*sqrt(N) never holds for a prime (p^2 = 4N forces p
    even), and the second sum is taken through p = N inclusive so that a
    prime N counts itself.
    """
    if N < 2:
        return 0
    primes = arith.primes_up_to(N)
    small = primes[primes * primes < 4 * N]
    large = primes[primes * primes > 4 * N]
    return int(np.sum(small // 4)) + int(np.sum(N // large))


@dataclass(frozen=True)
class BiasedCount:
    N: int
    oracle_count: int
    formula_count: int
    ratio: float
    asymptote: float
    mertens_prediction: float


def biased_asymptotic_report(N_list) -> list[BiasedCount]:
    """Counts, ratios against log 2, and the Mertens-style prediction
    N*(loglog N - loglog 2*sqrt(N)) for each requested N."""
    rows = []
    for N in N_list:
        N = int(N)
        if N < 100:
            raise PreconditionError("asymptotic report needs N >= 100")
        oracle = count_biased_oracle(N)
        formula = count_biased_formula(N)
        prediction = N * (math.log(math.log(N)) - math.log(math.log(2 * math.sqrt(N))))
        rows.append(
            BiasedCount(
                N=N,
                oracle_count=oracle,
                formula_count=formula,
                ratio=oracle / N,
                asymptote=LOG2,
                mertens_prediction=prediction,
            )
        )
    return rows
