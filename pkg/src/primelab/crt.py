"""Chinese remainder solving and streaming enumeration over residue choices.

Moduli products are kept as arbitrary-precision Python integers throughout:
products of primes overflow 64 bits very quickly, and the Goldbach span
analysis references the full product directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "CongruenceSystem",
    "CrtSolution",
    "ChoiceSpec",
    "NonCoprimeModuliError",
    "crt_solve",
    "crt_enumerate",
    "choice_count",
    "PRODUCT_MODE_CAP",
]

# product mode materializes every CRT class; beyond this we range-scan
PRODUCT_MODE_CAP = 1_000_000

# numpy int64 is safe for the vectorized combine only below this modulus
_NUMPY_MOD_CAP = 1 << 62


class NonCoprimeModuliError(ValueError):
    """Raised when a congruence system's moduli are not pairwise coprime."""


@dataclass(frozen=True)
class CongruenceSystem:
    """x = a_i (mod m_i) with pairwise-coprime moduli (checked at solve time)."""

    congruences: tuple[tuple[int, int], ...]  # (residue, modulus)

    def __post_init__(self):
        for r, m in self.congruences:
            if m < 1:
                raise ValueError("moduli must be positive")
            if not 0 <= r < m:
                raise ValueError(f"residue {r} out of range for modulus {m}")

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]]) -> "CongruenceSystem":
        return cls(tuple((int(r), int(m)) for r, m in pairs))


@dataclass(frozen=True)
class CrtSolution:
    value: int  # canonical representative in [0, modulus)
    modulus: int

    def satisfies(self, r: int, m: int) -> bool:
        return self.value % m == r


def crt_solve(system: CongruenceSystem) -> CrtSolution:
    """Fold the congruences; verify every one against the result before returning."""
    if not system.congruences:
        raise ValueError("empty congruence system")
    value, modulus = 0, 1
    for r, m in system.congruences:
        g = math.gcd(modulus, m)
        if g != 1:
            raise NonCoprimeModuliError(
                f"modulus {m} shares factor {g} with accumulated product {modulus}"
            )
        delta = (r - value) * pow(modulus, -1, m) % m
        value += modulus * delta
        modulus *= m
    sol = CrtSolution(value % modulus, modulus)
    for r, m in system.congruences:
        if not sol.satisfies(r, m):  # pragma: no cover - internal consistency
            raise AssertionError(f"CRT verification failed at x = {r} (mod {m})")
    return sol


@dataclass(frozen=True)
class ChoiceSpec:
    """Ordered (prime, allowed residue set) pairs with distinct primes."""

    entries: tuple[tuple[int, tuple[int, ...]], ...]

    def __post_init__(self):
        seen = set()
        for p, allowed in self.entries:
            if p in seen:
                raise ValueError(f"duplicate prime {p}")
            seen.add(p)
            if not allowed:
                raise ValueError(f"empty allowed set for prime {p}")
            if any(not 0 <= r < p for r in allowed):
                raise ValueError(f"residue out of range mod {p}")

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, Iterable[int]]]) -> "ChoiceSpec":
        return cls(tuple((int(p), tuple(sorted(set(int(r) for r in rs)))) for p, rs in pairs))

    @property
    def modulus(self) -> int:
        return math.prod(p for p, _ in self.entries)


def choice_count(spec: ChoiceSpec) -> int:
    """prod |allowed(p)| -- the number of distinct CRT classes."""
    return math.prod(len(allowed) for _, allowed in spec.entries)


def _canonical_values_numpy(spec: ChoiceSpec) -> np.ndarray:
    m = spec.modulus
    vals = np.zeros(1, dtype=np.int64)
    for p, allowed in spec.entries:
        rest = m // p
        basis = rest * pow(rest, -1, p) % m  # = 1 mod p, 0 mod others
        contrib = np.array([r * basis % m for r in allowed], dtype=np.int64)
        vals = (vals[:, None] + contrib[None, :]).ravel() % m
    vals.sort()
    return vals


def _canonical_values_bigint(spec: ChoiceSpec) -> list[int]:
    m = spec.modulus
    bases = []
    for p, allowed in spec.entries:
        rest = m // p
        basis = rest * pow(rest, -1, p) % m
        bases.append([r * basis % m for r in allowed])
    return sorted(sum(parts) % m for parts in cartesian(*bases))


def _enumerate_product(spec: ChoiceSpec, lo: int, hi: int) -> Iterator[int]:
    m = spec.modulus
    if m < _NUMPY_MOD_CAP:
        canonical = [int(v) for v in _canonical_values_numpy(spec)]
    else:
        canonical = _canonical_values_bigint(spec)
    for k in range(lo // m, hi // m + 1):
        base = k * m
        for v in canonical:
            n = base + v
            if lo <= n <= hi:
                yield n


def _enumerate_scan(spec: ChoiceSpec, lo: int, hi: int, chunk: int = 1 << 18) -> Iterator[int]:
    start = lo
    while start <= hi:
        stop = min(start + chunk - 1, hi)
        n = np.arange(start, stop + 1, dtype=np.int64)
        mask = np.ones(len(n), dtype=bool)
        for p, allowed in spec.entries:
            mask &= np.isin(n % p, np.array(allowed, dtype=np.int64))
        for v in n[mask]:
            yield int(v)
        start = stop + 1


def crt_enumerate(spec: ChoiceSpec, lo: int, hi: int, mode: str = "auto") -> Iterator[int]:
    """Ascending stream of n in [lo, hi] with n mod p in allowed(p) for all entries.

    Product mode builds every CRT class once (good for wide ranges over a
    small class count); range-scan walks the interval (good for narrow
    ranges under an exponential class count).  The streams are identical.
    """
    if lo < 0 or hi < lo:
        if hi < lo:
            return iter(())
        raise ValueError("range must satisfy 0 <= lo <= hi")
    if not spec.entries:
        return iter(range(lo, hi + 1))
    if mode == "auto":
        n_classes = choice_count(spec)
        mode = "product" if n_classes <= PRODUCT_MODE_CAP else "scan"
        # a narrow range is cheaper to scan even when the product is small
        if mode == "product" and (hi - lo + 1) < n_classes:
            mode = "scan"
    if mode == "product":
        return _enumerate_product(spec, lo, hi)
    if mode == "scan":
        if hi > (1 << 62):
            raise ValueError("range-scan bounds must fit in int64")
        return _enumerate_scan(spec, lo, hi)
    raise ValueError(f"unknown mode {mode!r}")
