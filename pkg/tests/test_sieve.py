import io

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from primelab.sieve import (
    CacheChecksumError,
    CacheMagicError,
    CacheTruncatedError,
    PrimeTable,
    count_congruent,
    is_prime,
    load_cache,
    save_cache,
    sieve_primes,
    sieving_prime_set,
)

FIRST_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def brute_primes(limit):
    return [n for n in range(2, limit + 1)
            if all(n % d for d in range(2, int(n**0.5) + 1))]


def test_small_primes_exact():
    table = sieve_primes(50)
    assert list(table.primes) == FIRST_PRIMES


def test_limits_zero_one_two():
    assert len(sieve_primes(0)) == 0
    assert len(sieve_primes(1)) == 0
    assert list(sieve_primes(2).primes) == [2]


def test_matches_brute_force_up_to_2000():
    table = sieve_primes(2000)
    assert list(table.primes) == brute_primes(2000)


def test_segmentation_is_invisible():
    whole = sieve_primes(10_000)
    tiny_segments = sieve_primes(10_000, segment_odd_bits=64)
    assert np.array_equal(whole.primes, tiny_segments.primes)


def test_membership_and_count():
    table = sieve_primes(1000)
    assert table.is_prime(997)
    assert not table.is_prime(999)
    assert not table.is_prime(1)
    assert not table.is_prime(-7)
    assert table.count_upto(100) == 25
    with pytest.raises(ValueError):
        table.is_prime(1001)


def test_table_is_write_protected():
    table = sieve_primes(100)
    with pytest.raises(ValueError):
        table.primes[0] = 9


def test_is_prime_certificate_beyond_table():
    assert is_prime(10**9 + 7)
    assert not is_prime(10**9 + 8)
    assert is_prime(2) and is_prime(3) and not is_prime(4)


def test_sieving_prime_set_boundaries():
    assert list(sieving_prime_set(4)) == [2]
    assert list(sieving_prime_set(8)) == [2]
    assert list(sieving_prime_set(9)) == [2, 3]
    assert list(sieving_prime_set(100)) == [2, 3, 5, 7]
    with pytest.raises(ValueError):
        sieving_prime_set(3)


@given(st.integers(1, 500), st.integers(1, 97))
@settings(max_examples=200, derandomize=True, deadline=None)
def test_count_congruent_matches_enumeration(x, m):
    for r in range(m):
        want = sum(1 for n in range(1, x + 1) if n % m == r)
        assert count_congruent(x, r, m) == want


def test_count_congruent_counts_from_one():
    assert count_congruent(20, 0, 2) == 10
    assert count_congruent(20, 1, 2) == 10  # includes the unit 1
    assert count_congruent(5, 7, 9) == 0


def test_cache_round_trip(tmp_path):
    table = sieve_primes(10_000)
    path = tmp_path / "primes.cache"
    save_cache(table, str(path))
    loaded = load_cache(str(path))
    assert loaded.limit == table.limit
    assert np.array_equal(loaded.primes, table.primes)
    # byte determinism
    buf1, buf2 = io.BytesIO(), io.BytesIO()
    save_cache(table, buf1)
    save_cache(loaded, buf2)
    assert buf1.getvalue() == buf2.getvalue()


def test_cache_bad_magic():
    with pytest.raises(CacheMagicError):
        load_cache(io.BytesIO(b"NOTMAGIC" + b"\0" * 32))


def test_cache_truncated():
    buf = io.BytesIO()
    save_cache(sieve_primes(10_000), buf)
    with pytest.raises(CacheTruncatedError):
        load_cache(io.BytesIO(buf.getvalue()[:-20]))


def test_cache_checksum():
    buf = io.BytesIO()
    save_cache(sieve_primes(10_000), buf)
    raw = bytearray(buf.getvalue())
    raw[16] ^= 0x01  # flip one bitmap bit; trailer count now disagrees
    with pytest.raises(CacheChecksumError):
        load_cache(io.BytesIO(bytes(raw)))


@given(st.integers(0, 5000))
@settings(max_examples=60, derandomize=True, deadline=None)
def test_prefix_le_matches_count(limit):
    table = sieve_primes(5000)
    assert len(table.prefix_le(limit)) == table.count_upto(limit)
