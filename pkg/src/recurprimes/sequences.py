"""Exact generation of the sequence families under study.

All sequences are 1-indexed.  Lucas-type families are parameterized by
(trace, norm) = (u+v, u*v) of the conjugate quadratic integers u, v, so
every computation stays in exact integer arithmetic:

    Mersenne        M_n = 2^n - 1
    PowerDiff(a,b)  U_n = a^n - b^n
    LucasU          U_n = (u^n - v^n)/(u - v),  U_{n+2} = t*U_{n+1} - q*U_n
    LucasV          V_n = u^n + v^n,            same recurrence
    W               W_n = (u^n - 1)(v^n - 1) = q^n - V_n + 1
    QuadraticPoly   P_n = n^2 + beta
    LinearRecurrence L_{n+k} = c_{k-1} L_{n+k-1} + ... + c_0 L_n
    Somos(e,f)      S_{n+4} S_n = e S_{n+3} S_{n+1} + f S_{n+2}^2
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import PreconditionError, SomosIntegralityError, SomosZeroError

MAX_RECURRENCE_ORDER = 12
_UNITY_TOL = 1e-8
_MAX_UNITY_ORDER = 24


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def _check_quadratic_pair(trace: int, norm: int) -> None:
    # u, v must be conjugate roots of an irreducible x^2 - trace*x + norm
    if _is_square(trace * trace - 4 * norm):
        raise PreconditionError(
            f"trace^2 - 4*norm = {trace * trace - 4 * norm} is a perfect square; "
            "u and v are not conjugate quadratic irrationals"
        )


@dataclass(frozen=True)
class Mersenne:
    pass


@dataclass(frozen=True)
class PowerDiff:
    a: int
    b: int

    def __post_init__(self):
        if not (self.a > self.b >= 1):
            raise PreconditionError("PowerDiff requires a > b >= 1")
        if math.gcd(self.a, self.b) != 1:
            raise PreconditionError("PowerDiff requires gcd(a, b) = 1")


@dataclass(frozen=True)
class LucasU:
    trace: int
    norm: int

    def __post_init__(self):
        _check_quadratic_pair(self.trace, self.norm)


@dataclass(frozen=True)
class LucasV:
    trace: int
    norm: int

    def __post_init__(self):
        _check_quadratic_pair(self.trace, self.norm)


@dataclass(frozen=True)
class WSequence:
    """W_n = (u^n - 1)(v^n - 1); negate=True yields the sign-flipped sequence
    -W, matching how such sequences are usually listed."""

    trace: int
    norm: int
    negate: bool = False

    def __post_init__(self):
        _check_quadratic_pair(self.trace, self.norm)


@dataclass(frozen=True)
class QuadraticPoly:
    beta: int

    def __post_init__(self):
        if self.beta == 0:
            raise PreconditionError("QuadraticPoly requires beta != 0")


@dataclass(frozen=True)
class LinearRecurrence:
    """coeffs = (c_0, ..., c_{k-1}); initials = (L_1, ..., L_k)."""

    coeffs: tuple[int, ...]
    initials: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        object.__setattr__(self, "initials", tuple(self.initials))
        if len(self.coeffs) < 1:
            raise PreconditionError("recurrence order must be >= 1")
        if self.coeffs[0] == 0:
            raise PreconditionError("c_0 must be nonzero")
        if len(self.initials) != len(self.coeffs):
            raise PreconditionError("need exactly k initial terms")


@dataclass(frozen=True)
class Somos:
    e: int
    f: int
    initials: tuple[int, int, int, int] = (1, 1, 1, 1)

    def __post_init__(self):
        object.__setattr__(self, "initials", tuple(self.initials))
        if self.e == 0 and self.f == 0:
            raise PreconditionError("Somos requires e, f not both zero")
        if len(self.initials) != 4:
            raise PreconditionError("Somos takes exactly four initial terms")


SequenceSpec = (
    Mersenne
    | PowerDiff
    | LucasU
    | LucasV
    | WSequence
    | QuadraticPoly
    | LinearRecurrence
    | Somos
)


def _lucas_uv(trace: int, norm: int, max_n: int, kind: str) -> list[int]:
    # U_0 = 0, U_1 = 1;  V_0 = 2, V_1 = trace
    prev, cur = (0, 1) if kind == "U" else (2, trace)
    out = []
    for _ in range(max_n):
        out.append(cur)
        prev, cur = cur, trace * cur - norm * prev
    return out


def _somos_terms(spec: Somos, max_n: int) -> list[int]:
    terms = list(spec.initials[:max_n])
    for n in range(len(terms) + 1, max_n + 1):
        # S_n = (e*S_{n-1}*S_{n-3} + f*S_{n-2}^2) / S_{n-4}
        divisor = terms[n - 5]
        if divisor == 0:
            raise SomosZeroError(n - 4)
        numer = spec.e * terms[n - 2] * terms[n - 4] + spec.f * terms[n - 3] ** 2
        q, r = divmod(numer, divisor)
        if r != 0:
            raise SomosIntegralityError(n)
        terms.append(q)
    return terms


def generate(spec: SequenceSpec, max_n: int) -> list[int]:
    """Terms 1..max_n of the sequence, exactly."""
    if max_n < 1:
        raise PreconditionError("max_n must be >= 1")
    if isinstance(spec, Mersenne):
        return [(1 << n) - 1 for n in range(1, max_n + 1)]
    if isinstance(spec, PowerDiff):
        return [spec.a**n - spec.b**n for n in range(1, max_n + 1)]
    if isinstance(spec, LucasU):
        return _lucas_uv(spec.trace, spec.norm, max_n, "U")
    if isinstance(spec, LucasV):
        return _lucas_uv(spec.trace, spec.norm, max_n, "V")
    if isinstance(spec, WSequence):
        v = _lucas_uv(spec.trace, spec.norm, max_n, "V")
        sign = -1 if spec.negate else 1
        return [sign * (spec.norm**n - v[n - 1] + 1) for n in range(1, max_n + 1)]
    if isinstance(spec, QuadraticPoly):
        return [n * n + spec.beta for n in range(1, max_n + 1)]
    if isinstance(spec, LinearRecurrence):
        k = len(spec.coeffs)
        terms = list(spec.initials[:max_n])
        for _ in range(max_n - len(terms)):
            nxt = sum(c * t for c, t in zip(spec.coeffs, terms[-k:]))
            terms.append(nxt)
        return terms
    if isinstance(spec, Somos):
        return _somos_terms(spec, max_n)
    raise PreconditionError(f"unknown sequence spec {spec!r}")


def term(spec: SequenceSpec, n: int) -> int:
    """The n-th term (n >= 1)."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    if isinstance(spec, Mersenne):
        return (1 << n) - 1
    if isinstance(spec, PowerDiff):
        return spec.a**n - spec.b**n
    if isinstance(spec, QuadraticPoly):
        return n * n + spec.beta
    return generate(spec, n)[-1]


@dataclass(frozen=True)
class SomosIntegrityReport:
    all_integral: bool
    first_violation: int | None
    checked_through: int


def check_somos_integrality(e: int, f: int, initials, max_n: int) -> SomosIntegrityReport:
    """Run the Somos recurrence over exact rationals and report the first
    non-integer term, if any.

    A zero divisor term mid-stream raises SomosZeroError: past that point
    the recurrence is undefined, which is a different failure from a
    non-integer value.
    """
    spec = Somos(e, f, tuple(initials))
    if max_n < 1:
        raise PreconditionError("max_n must be >= 1")
    try:
        _somos_terms(spec, max_n)
    except SomosIntegralityError as exc:
        return SomosIntegrityReport(False, exc.index, max_n)
    return SomosIntegrityReport(True, None, max_n)


def fermat_number(n: int) -> int:
    """F_n = 2^(2^n) + 1 for 0 <= n <= 25."""
    if not 0 <= n <= 25:
        raise PreconditionError("fermat_number supports 0 <= n <= 25")
    return (1 << (1 << n)) + 1


@dataclass(frozen=True)
class RecurrenceAnalysis:
    """Numeric root data for x^k - c_{k-1} x^{k-1} - ... - c_0."""

    characteristic_coeffs: tuple[int, ...]
    roots: tuple[complex, ...]
    multiplicities: tuple[int, ...]
    residual: float
    degenerate: bool
    degeneracy_witness: tuple[int, int, int] | None = field(default=None)


def _cluster_roots(raw: np.ndarray) -> tuple[list[complex], list[int]]:
    scale = max(1.0, float(np.max(np.abs(raw))))
    tol = 1e-5 * scale
    reps: list[complex] = []
    counts: list[int] = []
    for z in sorted(raw, key=lambda w: (w.real, w.imag)):
        for i, r in enumerate(reps):
            if abs(z - r) < tol:
                # running mean keeps the representative centred
                reps[i] = (r * counts[i] + z) / (counts[i] + 1)
                counts[i] += 1
                break
        else:
            reps.append(complex(z))
            counts.append(1)
    return reps, counts


def _unity_order(ratio: complex) -> int | None:
    if abs(abs(ratio) - 1.0) > 1e-6:
        return None
    w = ratio
    for m in range(1, _MAX_UNITY_ORDER + 1):
        if abs(w - 1.0) < _UNITY_TOL:
            return m
        w *= ratio
    return None


def analyze_recurrence(coeffs) -> RecurrenceAnalysis:
    """Characteristic roots, multiplicities and a degeneracy verdict.

    Degenerate means two roots coincide or the ratio of two distinct roots
    is an m-th root of unity for some m <= 24 (checked numerically to 1e-8).
    """
    coeffs = tuple(int(c) for c in coeffs)
    k = len(coeffs)
    if k < 1:
        raise PreconditionError("need at least one coefficient")
    if k > MAX_RECURRENCE_ORDER:
        raise PreconditionError(f"order {k} exceeds {MAX_RECURRENCE_ORDER}")
    if coeffs[0] == 0:
        raise PreconditionError("c_0 must be nonzero")

    # monic characteristic polynomial, highest degree first
    poly = np.array([1.0] + [-float(c) for c in reversed(coeffs)])
    raw = np.roots(poly)
    reps, counts = _cluster_roots(raw)

    expanded = np.real_if_close(np.poly(raw), tol=1e6)
    residual = float(np.max(np.abs(expanded - poly) / np.maximum(1.0, np.abs(poly))))

    witness = None
    degenerate = any(c > 1 for c in counts)
    if not degenerate:
        for i in range(len(reps)):
            for j in range(len(reps)):
                if i == j:
                    continue
                m = _unity_order(reps[i] / reps[j])
                if m is not None:
                    witness = (i, j, m)
                    degenerate = True
                    break
            if degenerate:
                break

    return RecurrenceAnalysis(
        characteristic_coeffs=coeffs,
        roots=tuple(reps),
        multiplicities=tuple(counts),
        residual=residual,
        degenerate=degenerate,
        degeneracy_witness=witness,
    )
