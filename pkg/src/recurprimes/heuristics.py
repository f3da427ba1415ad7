"""Prime-count heuristics driven by the prime number theorem.

Each estimator treats "is prime" as an event of probability 1/log x and
corrects for known divisibility structure.  Every infinite sum or product
is truncated explicitly; the truncation point always travels with the
result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import arith, census
from .errors import PreconditionError

LOG2 = 0.69314718055994530942
EULER_GAMMA = 0.57721566490153286061


def fermat_expected_count(N: int) -> float:
    """Expected Fermat primes among F_1..F_N: sum of 1/(2^n log 2).

    The full series sums to 1/log 2, so the expectation stays finite no
    matter the truncation -- the heuristic case for finitely many Fermat
    primes.
    """
    if N < 0:
        raise PreconditionError("N must be >= 0")
    # geometric: sum_{n=1..N} 2^-n = 1 - 2^-N
    return (1.0 - 0.5**N) / LOG2


def mersenne_rho(p: int) -> float:
    """Heuristic probability that 2^p - 1 is prime:
    (1/(p log 2)) * prod_{q < 2p} q/(q-1) over primes q."""
    if not arith.is_prime(p):
        raise PreconditionError(f"p={p} is not prime")
    primes = arith.primes_up_to(2 * p - 1)
    product = float(np.prod(primes / (primes - 1.0)))
    return product / (p * LOG2)


@dataclass(frozen=True)
class MersenneCount:
    N: int
    sum_rho: float
    wagstaff: float


def wagstaff_estimate(N: int) -> float:
    """Wagstaff / Pomerance-Lenstra asymptotic count (e^gamma / log 2) log N."""
    if N < 3:
        raise PreconditionError("N must be >= 3")
    return math.exp(EULER_GAMMA) / LOG2 * math.log(N)


def mersenne_expected_count(N: int) -> MersenneCount:
    """Partial sum of mersenne_rho over primes p < N, with the Wagstaff
    asymptotic alongside.  The sum diverges (rho_p > 1/(p log 2) and
    Mertens), so it keeps growing with N."""
    if N < 3:
        raise PreconditionError("N must be >= 3")
    primes = [int(q) for q in arith.primes_up_to(2 * N)]
    total = 0.0
    product = 1.0
    j = 0
    for p in primes:
        if p >= N:
            break
        # extend prod_{q < 2p} q/(q-1) incrementally
        while j < len(primes) and primes[j] < 2 * p:
            q = primes[j]
            product *= q / (q - 1.0)
            j += 1
        total += product / (p * LOG2)
    return MersenneCount(N=N, sum_rho=total, wagstaff=wagstaff_estimate(N))


@dataclass(frozen=True)
class GrowthFit:
    h: float
    intercept: float
    residual: float
    relative_residual: float


def somos_growth_fit(terms) -> GrowthFit:
    """Least-squares slope h of log S_n against n^2, over the upper half of
    the index range (the early terms carry the largest lower-order bias)."""
    if len(terms) < 20:
        raise PreconditionError("need at least 20 terms")
    if any(t <= 0 for t in terms):
        raise PreconditionError("growth fit needs positive terms")
    n0 = len(terms) // 2
    ns = np.arange(n0 + 1, len(terms) + 1, dtype=np.float64)
    logs = np.array([math.log(t) for t in terms[n0:]], dtype=np.float64)
    x = ns * ns
    h, intercept = np.polyfit(x, logs, 1)
    fitted = h * x + intercept
    residual = float(np.sqrt(np.mean((logs - fitted) ** 2)))
    scale = float(np.sqrt(np.mean(fitted**2)))
    return GrowthFit(
        h=float(h),
        intercept=float(intercept),
        residual=residual,
        relative_residual=residual / scale if scale > 0 else residual,
    )


def somos_expected_primes(h: float, N: int) -> float:
    """Expected prime terms among S_1..S_{N-1} under log S_n ~ h n^2:
    (1/h) sum_{n<N} 1/n^2, below the hard ceiling pi^2/(6h)."""
    if h <= 0:
        raise PreconditionError("h must be positive")
    if N < 2:
        raise PreconditionError("N must be >= 2")
    ns = np.arange(1, N, dtype=np.float64)
    return float(np.sum(1.0 / (ns * ns))) / h


def somos_prime_ceiling(h: float) -> float:
    """pi^2 / (6h), the N -> infinity limit of somos_expected_primes."""
    if h <= 0:
        raise PreconditionError("h must be positive")
    return math.pi**2 / (6 * h)


def count_quadratic_roots(beta: int, p: int) -> int:
    """w(p): number of x mod p with x^2 = -beta (mod p)."""
    if p == 2 or (2 * beta) % p == 0:
        return sum(1 for x in range(p) if (x * x + beta) % p == 0)
    return 1 + arith.legendre(-beta, p)


def bateman_horn_d(beta: int, prime_bound: int) -> float:
    """Truncated Bateman-Horn constant for n^2 + beta:

        d = 1/2 * prod_p (1 - 1/p)^-1 (1 - w(p)/p)

    The product converges only conditionally, so factors are accumulated
    as compensated log sums in ascending prime order.
    """
    if beta == 0 or (beta < 0 and math.isqrt(-beta) ** 2 == -beta):
        raise PreconditionError("-beta must not be a perfect square")
    if prime_bound < 1000:
        raise PreconditionError("prime_bound must be >= 1000")
    logs = []
    for p in map(int, arith.primes_up_to(prime_bound)):
        if (2 * beta) % p == 0 or p == 2:
            w = count_quadratic_roots(beta, p)
        else:
            w = 1 + arith.legendre(-beta, p)
        logs.append(-math.log1p(-1.0 / p) + math.log1p(-w / p))
    return 0.5 * math.exp(math.fsum(logs))


@dataclass(frozen=True)
class MertensEstimate:
    x: int
    partial_sum: float
    loglog: float
    A_estimate: float


def mertens_partial_sum(x: int) -> MertensEstimate:
    """sum_{p < x} 1/p against log log x; the difference estimates the
    Mertens constant A."""
    if x < 10:
        raise PreconditionError("x must be >= 10")
    primes = arith.primes_up_to(x - 1)
    total = float(np.sum(1.0 / primes))
    loglog = math.log(math.log(x))
    return MertensEstimate(x=x, partial_sum=total, loglog=loglog, A_estimate=total - loglog)


def quadratic_prime_count(beta: int, N: int) -> int:
    """#{n < N : n^2 + beta prime}, read off the census sieve."""
    if N < 2:
        raise PreconditionError("N must be >= 2")
    return census.CensusRun(beta, N).prime_term_count()
