"""Backend-parametrized checks of the sieving kernels against naive oracles
and against each other."""

import numpy as np
import pytest

from recurprimes import _kernels

from oracles import lpf_by_trial, naive_biased_count, simple_sieve, trial_factor


def test_primes_up_to_matches_simple_sieve(kernels):
    assert list(kernels.primes_up_to(1000)) == simple_sieve(1000)
    assert list(kernels.primes_up_to(2)) == [2]
    assert list(kernels.primes_up_to(1)) == []


def test_spf_sieve_matches_trial_division(kernels):
    spf = kernels.spf_sieve(2000)
    assert spf[0] == 0 and spf[1] == 0
    for n in range(2, 2001):
        assert spf[n] == min(trial_factor(n))


def test_count_biased_small_values(kernels):
    for n in (2, 3, 4, 5, 19, 20, 21, 33, 34, 100, 127):
        assert kernels.count_biased(n) == naive_biased_count(n), n


def test_count_biased_block_boundaries(kernels):
    # counts must not depend on where the block seams fall
    assert kernels.count_biased(3000) == naive_biased_count(3000)


def test_biased_flags_match_counts(kernels):
    flags = kernels.biased_flags(500)
    assert not flags[0] and not flags[1]
    assert int(flags.sum()) == naive_biased_count(500)
    for k in (22, 26, 34):
        assert flags[k]
    for k in (24, 28, 33):
        assert not flags[k]


@pytest.mark.parametrize("beta", [1, -2, 6, 5, -11, 17])
def test_quad_lpf_against_trial_division(kernels, beta):
    limit = 300
    lpf, hits = kernels.quad_lpf(beta, limit)
    assert lpf[0] == 0
    seen = set()
    for n in range(1, limit + 1):
        v = abs(n * n + beta)
        if v == 1:
            assert lpf[n] == 0
        else:
            fac = trial_factor(v)
            assert lpf[n] == max(fac), (beta, n)
            seen.update(p for p in fac if p <= 2 * limit)
    assert sorted(seen) == sorted(int(p) for p in hits)


def test_backends_agree_on_larger_run():
    backends = _kernels.available_backends()
    if len(backends) < 2:
        pytest.skip("only one backend available")
    a = _kernels.get_backend(backends[0])
    b = _kernels.get_backend(backends[1])
    assert a.count_biased(250_000) == b.count_biased(250_000)
    lpf_a, hits_a = a.quad_lpf(-7, 5000)
    lpf_b, hits_b = b.quad_lpf(-7, 5000)
    assert np.array_equal(lpf_a, lpf_b)
    assert np.array_equal(hits_a, hits_b)
    assert np.array_equal(a.spf_sieve(100_000), b.spf_sieve(100_000))
