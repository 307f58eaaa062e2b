"""Forbidden/allowed residue machinery.

Residue periodicity in arithmetic progressions, forbidden residue sets for
twin, Sophie Germain, and k-tuple patterns, admissibility testing, and
remainder sequences.  All operations are pure and stateless.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .sieve import is_prime

__all__ = [
    "ResidueSpec",
    "AdmissibleTuple",
    "RemainderSequence",
    "APResidueCycle",
    "ap_residue_sequence",
    "twin_forbidden",
    "sophie_forbidden",
    "tuple_forbidden",
    "is_admissible",
    "tight_tuples",
    "remainder_sequence",
]


@dataclass(frozen=True)
class ResidueSpec:
    """Per-prime forbidden residue sets, primes strictly increasing.

    Forbidden sets are stored deduplicated ({0, 2} mod 2 collapses to {0})
    so that each cardinality is the count of distinct residues.
    """

    entries: tuple[tuple[int, frozenset[int]], ...]

    def __post_init__(self):
        last = 0
        for p, forb in self.entries:
            if p <= last:
                raise ValueError("primes must be strictly increasing")
            last = p
            if any(not 0 <= r < p for r in forb):
                raise ValueError(f"residue out of range mod {p}")
            if len(forb) >= p:
                raise ValueError(f"no residue survives mod {p}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, Iterable[int]]]) -> "ResidueSpec":
        return cls(tuple((int(p), frozenset(int(r) % int(p) for r in rs)) for p, rs in pairs))

    @classmethod
    def twins(cls, primes: Iterable[int]) -> "ResidueSpec":
        return cls.from_pairs((p, twin_forbidden(p)) for p in primes)

    @classmethod
    def sophie_germain(cls, primes: Iterable[int]) -> "ResidueSpec":
        return cls.from_pairs((p, sophie_forbidden(p)) for p in primes)

    @classmethod
    def primes_only(cls, primes: Iterable[int]) -> "ResidueSpec":
        """The plain sieve spec: only residue 0 forbidden at each prime."""
        return cls.from_pairs((p, (0,)) for p in primes)

    @classmethod
    def for_tuple(cls, offsets: Sequence[int], primes: Iterable[int]) -> "ResidueSpec":
        return cls.from_pairs((p, tuple_forbidden(offsets, p)) for p in primes)

    def allowed(self, p: int) -> frozenset[int]:
        for q, forb in self.entries:
            if q == p:
                return frozenset(range(p)) - forb
        raise KeyError(p)

    def cardinalities(self) -> tuple[int, ...]:
        """The u_i sequence: distinct forbidden residues per prime."""
        return tuple(len(forb) for _, forb in self.entries)


@dataclass(frozen=True)
class AdmissibleTuple:
    """Offsets b_1 < ... < b_{k-1}; tuple length k = len(offsets) + 1."""

    offsets: tuple[int, ...]

    def __post_init__(self):
        if any(b <= 0 for b in self.offsets):
            raise ValueError("offsets must be positive")
        if list(self.offsets) != sorted(set(self.offsets)):
            raise ValueError("offsets must be strictly increasing")
        if not is_admissible(self.offsets):
            raise ValueError(f"offsets {self.offsets} are not admissible")

    @property
    def k(self) -> int:
        return len(self.offsets) + 1

    @property
    def diameter(self) -> int:
        return self.offsets[-1]


@dataclass(frozen=True)
class RemainderSequence:
    subject: int
    moduli: tuple[int, ...]
    remainders: tuple[int, ...]

    def rows(self) -> list[dict]:
        """Two-row tabular form (moduli then remainders)."""
        return [
            {"row": "mod", **{str(m): m for m in self.moduli}},
            {"row": str(self.subject), **{str(m): r for m, r in zip(self.moduli, self.remainders)}},
        ]


@dataclass(frozen=True)
class APResidueCycle:
    """Residues of a + k*b modulo p: a full permutation cycle or a constant."""

    kind: str  # "PERMUTATION" | "CONSTANT"
    period: int
    values: tuple[int, ...]

    @property
    def constant(self) -> int:
        if self.kind != "CONSTANT":
            raise ValueError("not a constant cycle")
        return self.values[0]


def ap_residue_sequence(a: int, b: int, p: int) -> APResidueCycle:
    """Classify the residue sequence of the progression a, a+b, a+2b, ... mod p.

    When p does not divide b the first p terms hit every residue exactly
    once (a permutation, repeating with period p); when p | b the sequence
    is the constant a mod p.
    """
    if b < 1:
        raise ValueError("common difference b must be positive")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if b % p == 0:
        return APResidueCycle("CONSTANT", 1, (a % p,))
    cycle = tuple((a + k * b) % p for k in range(p))
    return APResidueCycle("PERMUTATION", p, cycle)


def twin_forbidden(p: int) -> frozenset[int]:
    """Residues the upper twin member must avoid: {0, 2 mod p}.

    For p = 2 the two coincide and the set collapses to {0}.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return frozenset({0, 2 % p})


def sophie_forbidden(p: int) -> frozenset[int]:
    """Residues p must avoid for (p, 2p+1) both prime: {0, beta}, 2*beta+1 = 0 mod p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return frozenset({0})
    return frozenset({0, (p - 1) // 2})


def tuple_forbidden(offsets: Sequence[int], p: int) -> frozenset[int]:
    """Forbidden residues mod p for the shifted variable n = p' + b_{k-1}.

    The pattern p', p'+b_1, ..., p'+b_{k-1} is simultaneously prime only if
    n avoids (b_{k-1} - b) mod p for every b in {0} union offsets.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    last = offsets[-1]
    return frozenset((last - b) % p for b in (0, *offsets))


def is_admissible(offsets: Sequence[int]) -> bool:
    """True iff {0} union offsets misses a residue class mod q for every prime q <= k."""
    if list(offsets) != sorted(set(offsets)) or any(b <= 0 for b in offsets):
        return False
    k = len(offsets) + 1
    for q in range(2, k + 1):
        if not is_prime(q):
            continue
        residues = {0} | {b % q for b in offsets}
        if len(residues) == q:
            return False
    return True


def tight_tuples(k: int) -> list[AdmissibleTuple]:
    """All admissible (k-1)-tuples with minimal largest offset, 2 <= k <= 5.

    Exhaustive search with offset bound 2*k*k; small k only, by design.
    """
    if not 2 <= k <= 5:
        raise ValueError("k must be in 2..5")
    bound = 2 * k * k
    for last in range(2, bound + 1):
        found = []
        for inner in combinations(range(1, last), k - 2):
            offsets = (*inner, last)
            if is_admissible(offsets):
                found.append(AdmissibleTuple(offsets))
        if found:
            return found
    raise RuntimeError("no admissible tuple within search bound")  # pragma: no cover


def remainder_sequence(x: int, primes: Sequence[int]) -> RemainderSequence:
    """The vector of x mod p over the given primes (the tabular form of the text)."""
    if not primes:
        raise ValueError("primes must be nonempty")
    for p in primes:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    return RemainderSequence(x, tuple(primes), tuple(x % p for p in primes))
