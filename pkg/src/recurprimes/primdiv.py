"""Primitive divisors of integer sequences.

A primitive divisor of the n-th term is a divisor coprime to every earlier
nonzero term; a primitive prime divisor is any prime factor of one.  The
primitive part (the largest such divisor) is computed purely with gcds, so
existence questions never require factoring; factorization is used only to
name the primitive primes.

Terms are 1-indexed throughout, matching the sequence conventions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import arith, sequences
from .errors import PreconditionError
from .sequences import LucasU, LucasV, Mersenne, PowerDiff, SequenceSpec, Somos


def _coprime_part(d: int, shared: int) -> int:
    """Largest divisor of d coprime to `shared` (given gcd(d, B) = shared
    for the underlying product B)."""
    g = shared
    while g > 1:
        d //= g
        g = math.gcd(d, g)
    return d


def primitive_part(terms, n: int) -> int:
    """Largest divisor of |terms[n]| coprime to every earlier nonzero term.

    `terms` holds the sequence values t_1..t_k; n is 1-based.  Runs on gcds
    alone: the product of the earlier terms is reduced modulo the current
    term to keep operands small.
    """
    if not 1 <= n <= len(terms):
        raise PreconditionError(f"index {n} outside 1..{len(terms)}")
    current = terms[n - 1]
    if current == 0:
        raise PreconditionError(f"term {n} is zero; primitive divisors are undefined")
    d = abs(current)
    if d == 1:
        return 1
    prod = 1
    for m in range(n - 1):
        t = terms[m]
        if t != 0:
            prod = prod * abs(t) % d
    return _coprime_part(d, math.gcd(d, prod))


def primitive_part_scan(terms) -> list[int]:
    """primitive_part for every index at once (shared running product)."""
    parts = []
    prod = 1
    for t in terms:
        d = abs(t)
        if d <= 1:
            # 0: undefined, reported as 0; 1: unit, no prime divisors
            parts.append(d)
        else:
            parts.append(_coprime_part(d, math.gcd(d, prod % d)))
        if d > 1:
            prod *= d
    return parts


def primitive_primes(terms, n: int, budget: int | None = None) -> tuple[list[int], bool]:
    """Prime factors of the primitive part of term n.

    Returns (primes, incomplete): incomplete is True when the factoring
    budget left a composite cofactor, in which case the list may be missing
    primes.
    """
    part = primitive_part(terms, n)
    if part == 1:
        return [], False
    fac = arith.factor(part, budget=budget)
    return fac.primes(), not fac.complete


@dataclass(frozen=True)
class PrimitiveDivisorReport:
    n: int
    term: int
    primitive_part: int
    primitive_primes: tuple[int, ...]
    primitive_primes_incomplete: bool
    has_primitive_divisor: bool
    primitive_part_composite: bool


def primitive_report(terms, n: int, budget: int | None = None) -> PrimitiveDivisorReport:
    part = primitive_part(terms, n)
    primes, incomplete = primitive_primes(terms, n, budget=budget)
    return PrimitiveDivisorReport(
        n=n,
        term=terms[n - 1],
        primitive_part=part,
        primitive_primes=tuple(primes),
        primitive_primes_incomplete=incomplete,
        has_primitive_divisor=part > 1,
        primitive_part_composite=part > 1 and not arith.is_prime(part),
    )


def scan_exceptions(terms) -> list[int]:
    """Indices whose term has no primitive divisor (primitive part 1).

    Zero terms are skipped entirely: the definition only speaks about
    nonzero terms.
    """
    return [
        i + 1
        for i, (t, part) in enumerate(zip(terms, primitive_part_scan(terms)))
        if t != 0 and part == 1
    ]


def zsigmondy_scan(spec: SequenceSpec, max_n: int) -> list[int]:
    """Exception set {n <= max_n : term n has no primitive divisor} for the
    Zsigmondy-type families (Mersenne, PowerDiff, LucasU, LucasV)."""
    if not isinstance(spec, (Mersenne, PowerDiff, LucasU, LucasV)):
        raise PreconditionError("zsigmondy_scan expects Mersenne/PowerDiff/LucasU/LucasV")
    return scan_exceptions(sequences.generate(spec, max_n))


def bhv_check(spec, max_n: int) -> bool:
    """True iff every term with 30 < n <= max_n has a primitive divisor."""
    if not isinstance(spec, (LucasU, LucasV)):
        raise PreconditionError("bhv_check expects a LucasU or LucasV spec")
    if max_n <= 30:
        raise PreconditionError("bhv_check needs max_n > 30")
    return all(e <= 30 for e in zsigmondy_scan(spec, max_n))


@dataclass(frozen=True)
class SchinzelCheck:
    k: int
    primitive_part: int
    composite: bool
    factors: tuple[tuple[int, int], ...]
    incomplete: bool


def schinzel_m4k_check(k: int, budget: int | None = None) -> SchinzelCheck:
    """Primitive part of M_{4k} and its compositeness verdict, for odd k
    with 5 < k <= 31."""
    if k % 2 == 0 or not 5 < k <= 31:
        raise PreconditionError("k must be odd with 5 < k <= 31")
    terms = sequences.generate(Mersenne(), 4 * k)
    part = primitive_part(terms, 4 * k)
    fac = arith.factor(part, budget=budget) if part > 1 else None
    return SchinzelCheck(
        k=k,
        primitive_part=part,
        composite=part > 1 and not arith.is_prime(part),
        factors=fac.factors if fac else (),
        incomplete=bool(fac) and not fac.complete,
    )


def somos_primitive_scan(e: int, f: int, initials, max_n: int) -> list[int]:
    """Exception indices for a Somos sequence.

    Integrality is asserted while generating; a violation aborts with
    SomosIntegralityError carrying the offending index.
    """
    terms = sequences.generate(Somos(e, f, tuple(initials)), max_n)
    return scan_exceptions(terms)
