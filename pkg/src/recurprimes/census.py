"""Large-range census of the quadratic sequence P_n = n^2 + beta.

A polynomial-value sieve finds the exact largest prime factor of every
|P_n| for n = 1..N: each odd prime p <= 2N with -beta a quadratic residue
divides values along the two progressions n = +-sqrt(-beta) (mod p), the
finitely many primes dividing 2*beta along one progression, and whatever
survives division is a single prime > 2N (values stay below 4N^2).

From the sieve come rho_beta(N) (terms with a primitive divisor: for
n > |beta| a prime factor > 2n exists iff the value is biased; the finite
prefix n <= |beta| falls back to the gcd definition), the prime census of
Q_N = prod_{n<=N} |P_n| split at 2N and K*N, and the Stirling comparison
for log Q_N.  rho counts indices n < N; the Q_N statistics run through N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import _kernels, primdiv
from .errors import PreconditionError

MAX_CENSUS_N = 10_000_000


@dataclass(frozen=True)
class CensusResult:
    beta: int
    N: int
    rho: int
    no_primitive_count: int
    ratio: float
    omega_QN: int
    s: int
    s_prime: int
    t: int
    u: int
    K: int
    log_QN: float


@dataclass(frozen=True)
class SieveRecord:
    n: int
    value: int
    largest_prime_factor: int
    leftover_prime: int | None
    has_primitive: bool


def _validate(beta: int, N: int) -> None:
    if beta == 0 or (beta < 0 and math.isqrt(-beta) ** 2 == -beta):
        raise PreconditionError(f"-beta = {-beta} is a perfect square; P_n can vanish")
    if N < 2:
        raise PreconditionError("census needs N >= 2")
    if N > MAX_CENSUS_N:
        raise PreconditionError(f"N={N} exceeds the {MAX_CENSUS_N} memory budget")
    # keeps every |P_n| below (2N+1)^2, so at most one prime > 2N survives
    if abs(beta) > 3 * N * N:
        raise PreconditionError("|beta| must be at most 3*N^2 for the sieve size bounds")


class CensusRun:
    """One sieve pass over n = 1..N with all derived statistics."""

    def __init__(self, beta: int, N: int, K: int = 10):
        _validate(beta, N)
        if K <= 2:
            raise PreconditionError("K must exceed 2")
        self.beta = int(beta)
        self.N = int(N)
        self.K = int(K)

        self.lpf, self._hits = _kernels.quad_lpf(self.beta, self.N)
        n = np.arange(self.N + 1, dtype=np.int64)
        self.values = n * n + self.beta
        self.abs_values = np.abs(self.values)

        # primitive-divisor flags: gcd definition on the finite prefix,
        # the biased criterion (big prime factor) beyond it
        boundary = min(abs(self.beta), self.N)
        self.has_primitive = np.zeros(self.N + 1, dtype=bool)
        if boundary >= 1:
            prefix = [int(v) for v in self.values[1 : boundary + 1]]
            parts = primdiv.primitive_part_scan(prefix)
            self.has_primitive[1 : boundary + 1] = np.array(parts) > 1
        past = np.arange(boundary + 1, self.N + 1, dtype=np.int64)
        self.has_primitive[boundary + 1 :] = self.lpf[boundary + 1 :] > 2 * past

        self._leftover_mask = self.lpf > 2 * self.N
        self.result = self._build_result()

    def _build_result(self) -> CensusResult:
        N, beta, K = self.N, self.beta, self.K
        rho = int(np.count_nonzero(self.has_primitive[1:N]))

        two_beta = 2 * beta
        special = [int(p) for p in self._hits if two_beta % int(p) == 0]
        s = len(self._hits) - len(special)

        leftovers = np.unique(self.lpf[self._leftover_mask])
        # primes beyond 2N cannot divide 2*beta once |beta| < N
        s_prime = int(leftovers.size)
        t = int(np.count_nonzero(leftovers < K * N))
        u = s_prime - t

        omega = len(self._hits) + s_prime
        log_qn = float(np.sum(np.log(self.abs_values[1:].astype(np.float64))))

        return CensusResult(
            beta=beta,
            N=N,
            rho=rho,
            no_primitive_count=(N - 1) - rho,
            ratio=rho / N,
            omega_QN=omega,
            s=s,
            s_prime=s_prime,
            t=t,
            u=u,
            K=K,
            log_QN=log_qn,
        )

    def records(self) -> Iterator[SieveRecord]:
        """Per-index audit stream."""
        for n in range(1, self.N + 1):
            lpf = int(self.lpf[n])
            yield SieveRecord(
                n=n,
                value=int(self.values[n]),
                largest_prime_factor=lpf,
                leftover_prime=lpf if lpf > 2 * self.N else None,
                has_primitive=bool(self.has_primitive[n]),
            )

    def prime_term_count(self) -> int:
        """#{n < N : |P_n| prime} (a value is prime iff it equals its own
        largest prime factor)."""
        upto = slice(1, self.N)
        return int(
            np.count_nonzero(
                (self.lpf[upto] == self.abs_values[upto]) & (self.abs_values[upto] > 1)
            )
        )


def quadratic_sieve_census(beta: int, N: int, K: int = 10) -> CensusRun:
    """Run the sieve and return the full census (result + record stream)."""
    return CensusRun(beta, N, K)


def rho(beta: int, N: int) -> int:
    """rho_beta(N): indices n < N whose P_n has a primitive divisor."""
    return CensusRun(beta, N).result.rho


@dataclass(frozen=True)
class OmegaResult:
    omega: int
    s: int
    s_prime: int


def omega_QN(beta: int, N: int) -> OmegaResult:
    """Distinct primes dividing Q_N, split at 2N (s counts only primes with
    -beta a quadratic residue; the finitely many dividing 2*beta are in
    omega but outside s)."""
    r = CensusRun(beta, N).result
    return OmegaResult(omega=r.omega_QN, s=r.s, s_prime=r.s_prime)


@dataclass(frozen=True)
class Theorem3Check:
    upper_ok: bool
    lower_ok: bool
    upper_margin: float
    lower_margin: float
    strengthened_upper_ok: bool


def theorem3_bounds_check(
    beta: int, N: int, C: float, D: float, run: CensusRun | None = None
) -> Theorem3Check:
    """Evaluate rho < N - C*N/log N and N/2 - D*N/log N < rho, plus the
    strengthened upper bound with C replaced by log log N."""
    if N < 1000:
        raise PreconditionError("bounds check needs N >= 1000")
    if run is None:
        run = CensusRun(beta, N)
    r = run.result.rho
    logn = math.log(N)
    upper = N - C * N / logn
    lower = N / 2 - D * N / logn
    strengthened = N - N * math.log(logn) / logn
    return Theorem3Check(
        upper_ok=r < upper,
        lower_ok=lower < r,
        upper_margin=upper - r,
        lower_margin=r - lower,
        strengthened_upper_ok=r < strengthened,
    )


@dataclass(frozen=True)
class LogQNCheck:
    measured: float
    stirling: float
    gap: float


def log_QN_check(beta: int, N: int, run: CensusRun | None = None) -> LogQNCheck:
    """Sum of log|P_n| over n <= N against the Stirling form 2N log N - 2N.

    The gap is not O(1): Stirling carries an extra log(2*pi*N) term plus
    the convergent sum of log(1 + beta/n^2), so it grows like log N.
    """
    if run is None:
        run = CensusRun(beta, N)
    measured = run.result.log_QN
    stirling = 2 * N * math.log(N) - 2 * N
    return LogQNCheck(measured=measured, stirling=stirling, gap=measured - stirling)


@dataclass(frozen=True)
class Theorem1Witnesses:
    count: int
    sample_indices: tuple[int, ...]


def theorem1_witnesses(
    beta: int, N: int, run: CensusRun | None = None, max_samples: int = 10
) -> Theorem1Witnesses:
    """Indices |beta| < n < N whose P_n is not biased, hence (by the
    biased criterion) has no primitive divisor."""
    if run is None:
        run = CensusRun(beta, N)
    boundary = min(abs(beta), N)
    idx = np.arange(boundary + 1, N, dtype=np.int64)
    mask = ~run.has_primitive[boundary + 1 : N]
    witnesses = idx[mask]
    return Theorem1Witnesses(
        count=int(witnesses.size),
        sample_indices=tuple(int(w) for w in witnesses[:max_samples]),
    )
