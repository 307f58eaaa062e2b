"""Prime generation, primality certificates, and residue-class counting.

Everything here is exact integer arithmetic.  The central object is the
immutable :class:`PrimeTable`: an ascending array of primes up to a limit
together with a membership bitset over the odd integers.  Construction uses
an odd-only segmented sieve so limits up to 1e9 fit in bounded memory.
"""

from __future__ import annotations

import math
import os
import struct
import threading
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "PrimeTable",
    "sieve_primes",
    "is_prime",
    "sieving_prime_set",
    "count_congruent",
    "save_cache",
    "load_cache",
    "CacheError",
    "CacheMagicError",
    "CacheTruncatedError",
    "CacheChecksumError",
]

CACHE_MAGIC = b"PRIMSET1"

# Odd numbers covered by one sieve segment.
SEGMENT_ODD_BITS = 1 << 20


class CacheError(Exception):
    """Base class for prime-cache file problems."""


class CacheMagicError(CacheError):
    """The cache file does not start with the expected magic bytes."""


class CacheTruncatedError(CacheError):
    """The cache file ends before the declared payload is complete."""


class CacheChecksumError(CacheError):
    """The trailing prime count does not match the bitmap contents."""


@dataclass(frozen=True)
class PrimeTable:
    """Immutable sorted primes in [2, limit] with an odd-number bitset.

    ``odd_bits[i]`` is True iff 2*i + 1 is prime (so index 0, the unit 1,
    is always False).  Safe to share across threads after construction.
    """

    limit: int
    primes: np.ndarray
    odd_bits: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.primes.setflags(write=False)
        self.odd_bits.setflags(write=False)

    def __len__(self) -> int:
        return len(self.primes)

    def __contains__(self, n: int) -> bool:
        return self.is_prime(n)

    def is_prime(self, n: int) -> bool:
        """Membership test for n <= limit (raises otherwise)."""
        if n > self.limit:
            raise ValueError(f"{n} exceeds table limit {self.limit}")
        if n < 2:
            return False
        if n % 2 == 0:
            return n == 2
        return bool(self.odd_bits[n >> 1])

    def count_upto(self, x: int) -> int:
        """pi(x) for x <= limit."""
        if x > self.limit:
            raise ValueError(f"{x} exceeds table limit {self.limit}")
        return int(np.searchsorted(self.primes, x, side="right"))

    def prefix_le(self, bound: int) -> np.ndarray:
        """Primes p <= bound, as a slice of the table."""
        return self.primes[: np.searchsorted(self.primes, bound, side="right")]


def _simple_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.array([], dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def sieve_primes(limit: int, segment_odd_bits: int = SEGMENT_ODD_BITS) -> PrimeTable:
    """Segmented sieve of Eratosthenes up to ``limit`` (inclusive).

    Deterministic for a given limit; limit 0 or 1 yields an empty table.
    """
    if limit < 0:
        raise ValueError("limit must be nonnegative")
    n_odd = (limit + 1) // 2  # odd numbers 1, 3, ..., <= limit
    odd_bits = np.zeros(max(n_odd, 1), dtype=bool)
    if limit < 2:
        return PrimeTable(limit, np.array([], dtype=np.int64), odd_bits[:n_odd])

    base = _simple_sieve(math.isqrt(limit))
    odd_base = base[base > 2]

    lo_idx = 1  # index of odd number 3
    while lo_idx < n_odd:
        hi_idx = min(lo_idx + segment_odd_bits, n_odd)  # exclusive
        seg = np.ones(hi_idx - lo_idx, dtype=bool)
        lo_val = 2 * lo_idx + 1
        hi_val = 2 * hi_idx - 1  # last odd value in segment
        for p in odd_base:
            p = int(p)
            start = max(p * p, ((lo_val + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            if start > hi_val:
                continue
            seg[(start - lo_val) // 2 :: p] = False
        odd_bits[lo_idx:hi_idx] = seg
        lo_idx = hi_idx

    odd_primes = 2 * np.flatnonzero(odd_bits).astype(np.int64) + 1
    primes = np.concatenate(([2], odd_primes))
    return PrimeTable(limit, primes, odd_bits[:n_odd])


# Shared table for is_prime / sieving_prime_set; grown on demand.
_shared_lock = threading.Lock()
_shared_table: PrimeTable | None = None


def shared_table(at_least: int = 1 << 16) -> PrimeTable:
    """Process-wide PrimeTable, re-sieved (geometrically) when too small."""
    global _shared_table
    with _shared_lock:
        if _shared_table is None or _shared_table.limit < at_least:
            limit = max(at_least, 1 << 16)
            if _shared_table is not None:
                limit = max(limit, 2 * _shared_table.limit)
            _shared_table = sieve_primes(limit)
        return _shared_table


def is_prime(n: int, table: PrimeTable | None = None) -> bool:
    """Deterministic primality by trial division up to sqrt(n).

    A True result is a certificate: n passed division by every prime
    <= sqrt(n).  No probabilistic testing is involved.
    """
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    root = math.isqrt(n)
    if table is not None and n <= table.limit:
        return table.is_prime(n)
    if table is None or table.limit < root:
        table = shared_table(max(root, 1 << 16))
    if n <= table.limit:
        return table.is_prime(n)
    for p in table.prefix_le(root):
        if n % int(p) == 0:
            return False
    return True


def sieving_prime_set(x: int, table: PrimeTable | None = None) -> np.ndarray:
    """All primes p with p*p <= x -- the trial-division certificate set."""
    if x < 4:
        raise ValueError("x must be >= 4")
    root = math.isqrt(x)
    if table is None or table.limit < root:
        table = shared_table(max(root, 1 << 16))
    return table.prefix_le(root)


def count_congruent(x: int, r: int, m: int) -> int:
    """Exact |{n in [1, x] : n = r (mod m)}|.

    Counts start at 1, not 0: the paper's worked arithmetic only
    reconciles when the unit is included and 0 is not.
    """
    if m < 1:
        raise ValueError("modulus must be >= 1")
    if not 0 <= r < m:
        raise ValueError(f"residue {r} out of range for modulus {m}")
    if x < 1:
        return 0
    if r == 0:
        return x // m
    if r > x:
        return 0
    return (x - r) // m + 1


def save_cache(table: PrimeTable, destination) -> None:
    """Write the bit-exact cache format (byte-deterministic).

    Layout: 8-byte magic ``PRIMSET1``; 8-byte LE limit; bitmap of
    ceil((limit+1)/16) bytes, bit i (LSB-first) = odd 2i+1 prime;
    trailing 8-byte LE prime count (including 2).
    """
    payload = _cache_bytes(table)
    if hasattr(destination, "write"):
        destination.write(payload)
    else:
        tmp = f"{destination}.tmp.{os.getpid()}"
        with open(tmp, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, destination)


def _cache_bytes(table: PrimeTable) -> bytes:
    n_bytes = (table.limit + 1 + 15) // 16
    bits = np.zeros(n_bytes * 8, dtype=bool)
    bits[: len(table.odd_bits)] = table.odd_bits
    bitmap = np.packbits(bits, bitorder="little").tobytes()
    return (
        CACHE_MAGIC
        + struct.pack("<Q", table.limit)
        + bitmap
        + struct.pack("<Q", len(table.primes))
    )


def load_cache(source) -> PrimeTable:
    """Read a cache produced by :func:`save_cache`; round-trip identity."""
    if hasattr(source, "read"):
        raw = source.read()
    else:
        with open(source, "rb") as fh:
            raw = fh.read()
    if len(raw) < 16 or raw[:8] != CACHE_MAGIC:
        raise CacheMagicError("bad magic: not a prime cache file")
    limit = struct.unpack("<Q", raw[8:16])[0]
    n_bytes = (limit + 1 + 15) // 16
    if len(raw) < 16 + n_bytes + 8:
        raise CacheTruncatedError(
            f"expected {16 + n_bytes + 8} bytes for limit {limit}, got {len(raw)}"
        )
    bitmap = np.frombuffer(raw[16 : 16 + n_bytes], dtype=np.uint8)
    declared = struct.unpack("<Q", raw[16 + n_bytes : 24 + n_bytes])[0]
    bits = np.unpackbits(bitmap, bitorder="little")
    n_odd = (limit + 1) // 2
    odd_bits = bits[:n_odd].astype(bool)
    odd_primes = 2 * np.flatnonzero(odd_bits).astype(np.int64) + 1
    if limit >= 2:
        primes = np.concatenate(([2], odd_primes))
    else:
        primes = odd_primes
    if len(primes) != declared:
        raise CacheChecksumError(
            f"bitmap holds {len(primes)} primes but trailer declares {declared}"
        )
    return PrimeTable(limit, primes, odd_bits)
