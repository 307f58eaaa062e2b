"""Goldbach decomposition search via remainder splitting and CRT enumeration.

The pipeline: split the remainders of the even target 2n into nonzero parts
at every sieving prime, enumerate the resulting CRT classes, and read off
prime pairs.  A candidate p in (1, 2n) coprime to every sieving prime is
automatically prime (its trial-division certificate is vacuous); is_prime
is still called on every emitted member as an independent certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .crt import ChoiceSpec, choice_count, crt_enumerate
from .sieve import PrimeTable, is_prime, shared_table, sieving_prime_set

__all__ = [
    "SplitPlan",
    "SpanReport",
    "split_remainder",
    "build_split_plan",
    "goldbach_enumerate",
    "brute_goldbach_pairs",
    "span_report",
    "fixed_prefix_candidates",
    "goldbach_refine",
    "partition_probe",
    "twin_crt_search",
    "TwinPair",
    "EXACT_SPAN_MAX_PRIME",
]

# Full-period span enumeration is capped at sieving primes up to 13
# (period 30030, at most 5760 classes); the class count grows exponentially.
EXACT_SPAN_MAX_PRIME = 13


def _check_even_target(two_n: int) -> None:
    if two_n < 6 or two_n % 2:
        raise ValueError("target must be an even integer >= 6")


def split_remainder(beta: int, p: int) -> list[tuple[int, int]]:
    """All ordered pairs (eta, delta), both in [1, p-1], with eta + delta = beta mod p.

    There are p - 1 such pairs when beta = 0 and p - 2 otherwise (the split
    eta = beta, delta = 0 and its mirror are excluded).
    """
    if not 0 <= beta < p:
        raise ValueError(f"residue {beta} out of range for modulus {p}")
    return [
        (eta, (beta - eta) % p)
        for eta in range(1, p)
        if (beta - eta) % p != 0
    ]


@dataclass(frozen=True)
class SplitPlan:
    """Remainder splits of an even target at each of its sieving primes."""

    two_n: int
    primes: tuple[int, ...]
    beta: tuple[int, ...]
    splits: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def u(self) -> tuple[int, ...]:
        """Residues removed per prime: 1 where beta = 0, else 2."""
        return tuple(p - len(s) for p, s in zip(self.primes, self.splits))

    @property
    def class_count(self) -> int:
        return math.prod(len(s) for s in self.splits)

    def eta_spec(self) -> ChoiceSpec:
        """Allowed first-part residues per prime, as a CRT choice spec."""
        return ChoiceSpec.of(
            (p, sorted({eta for eta, _ in s})) for p, s in zip(self.primes, self.splits)
        )


def build_split_plan(two_n: int, table: PrimeTable | None = None) -> SplitPlan:
    _check_even_target(two_n)
    primes = tuple(int(p) for p in sieving_prime_set(two_n, table))
    beta = tuple(two_n % p for p in primes)
    splits = tuple(tuple(split_remainder(b, p)) for b, p in zip(beta, primes))
    return SplitPlan(two_n, primes, beta, splits)


def _verify_candidate(p: int, plan: SplitPlan, table: PrimeTable) -> None:
    # every in-range candidate is coprime to the sieving set, hence prime
    for q in plan.primes:
        if p % q == 0:
            raise AssertionError(f"candidate {p} divisible by sieving prime {q}")
    if p > plan.primes[-1] and not is_prime(p, table):
        raise AssertionError(f"candidate {p} in range yet composite")


def brute_goldbach_pairs(two_n: int, table: PrimeTable | None = None) -> list[tuple[int, int]]:
    """Oracle: all (p, q), p <= q prime, p + q = two_n, by direct scan."""
    _check_even_target(two_n)
    if table is None or table.limit < two_n:
        table = shared_table(max(two_n, 4))
    return [
        (p, two_n - p)
        for p in range(2, two_n // 2 + 1)
        if table.is_prime(p) and table.is_prime(two_n - p)
    ]


def goldbach_enumerate(
    two_n: int,
    mode: str = "EXACT",
    allow_zero_eta: bool = False,
    table: PrimeTable | None = None,
) -> list[tuple[int, int]]:
    """Prime pairs (p, q), p <= q, p + q = two_n, from the split-plan classes.

    EXACT walks every CRT candidate in (1, two_n); GUIDED walks ascending
    and stops at the first verified pair.  The unit candidate 1 is skipped
    (not prime).  allow_zero_eta additionally admits pairs whose smaller
    member is itself a sieving prime (the zero-part splits the plan omits).
    """
    _check_even_target(two_n)
    if mode not in ("EXACT", "GUIDED"):
        raise ValueError(f"mode must be EXACT or GUIDED, not {mode!r}")
    if table is None or table.limit < two_n:
        table = shared_table(max(two_n, 4))
    plan = build_split_plan(two_n, table)
    spec = plan.eta_spec()
    pairs: set[tuple[int, int]] = set()
    for p in crt_enumerate(spec, 2, two_n - 1):
        _verify_candidate(p, plan, table)
        q = two_n - p
        if q >= 2 and is_prime(p, table) and is_prime(q, table):
            pairs.add((min(p, q), max(p, q)))
            if mode == "GUIDED":
                break
    if allow_zero_eta:
        for p in plan.primes:
            q = two_n - p
            if q >= 2 and is_prime(q, table):
                pairs.add((min(p, q), max(p, q)))
    return sorted(pairs)


@dataclass(frozen=True)
class SpanReport:
    """Empirical spread of the CRT candidates over one full period [1, M]."""

    two_n: int
    feasible: bool
    M: int
    threshold: int  # M - 2n
    candidate_count: int = 0
    candidate_min: int | None = None
    candidate_max: int | None = None
    span: int | None = None
    exceeds_threshold: bool | None = None
    flag: bool = False
    lemma_all_u2_min: int | None = None
    lemma_all_u1_min: int | None = None
    notes: tuple[str, ...] = ()

    def row(self) -> dict:
        return {
            "two_n": self.two_n,
            "feasible": self.feasible,
            "M": self.M,
            "threshold": self.threshold,
            "candidates": self.candidate_count,
            "min": self.candidate_min,
            "max": self.candidate_max,
            "span": self.span,
            "exceeds_threshold": self.exceeds_threshold,
            "flag": self.flag,
            "all_u2_min_bound": self.lemma_all_u2_min,
            "all_u1_min_bound": self.lemma_all_u1_min,
            "notes": list(self.notes),
        }


def _theoretical_min(primes: tuple[int, ...], u_value: int) -> int:
    """M minus the telescoped lowering sum with every u_i set to u_value.

    With u = 1 the sum telescopes to p_1 * p_2 = 6 for k >= 3; with u = 2
    it leaves the alternating closed form.  For k < 3 the sum is empty.
    """
    k = len(primes)
    m = math.prod(primes)
    lowering = sum(
        math.prod(primes[: k - j - 1]) * (primes[k - j - 1] - u_value)
        for j in range(k - 2)
    )
    return m - lowering


def span_report(two_n: int, table: PrimeTable | None = None) -> SpanReport:
    _check_even_target(two_n)
    plan = build_split_plan(two_n, table)
    m = math.prod(plan.primes)
    threshold = m - two_n
    if plan.primes[-1] > EXACT_SPAN_MAX_PRIME:
        return SpanReport(
            two_n, False, m, threshold,
            notes=(
                f"largest sieving prime {plan.primes[-1]} exceeds the "
                f"full-period enumeration cap {EXACT_SPAN_MAX_PRIME}",
            ),
        )
    candidates = list(crt_enumerate(plan.eta_spec(), 1, m))
    notes = []
    if candidates and candidates[0] == 1:
        notes.append("unit candidate 1 present (excluded from prime pairs)")
    lo, hi = candidates[0], candidates[-1]
    span = hi - lo
    exceeds = span > threshold
    flag = exceeds
    if len(candidates) == 1:
        flag = False
        notes.append("single candidate: span degenerate (0), flag suppressed")
    return SpanReport(
        two_n, True, m, threshold,
        candidate_count=len(candidates),
        candidate_min=lo, candidate_max=hi, span=span,
        exceeds_threshold=exceeds, flag=flag,
        lemma_all_u2_min=_theoretical_min(plan.primes, 2),
        lemma_all_u1_min=_theoretical_min(plan.primes, 1),
        notes=tuple(notes),
    )


def fixed_prefix_candidates(
    two_n: int, fixed: tuple[int, ...], table: PrimeTable | None = None
) -> list[int]:
    """Candidates over one period with the first len(fixed) residues pinned.

    The remaining primes range over every nonzero residue -- including the
    forbidden split parts -- so the group shows where the member carrying a
    forbidden residue lands relative to the others.  Members of a group
    are separated by multiples of the product of the pinned primes.
    """
    plan = build_split_plan(two_n, table)
    if len(fixed) >= len(plan.primes):
        raise ValueError("fixed prefix must leave at least one free prime")
    entries = []
    for i, (p, s) in enumerate(zip(plan.primes, plan.splits)):
        if i < len(fixed):
            allowed = sorted({eta for eta, _ in s})
            if fixed[i] not in allowed:
                raise ValueError(f"residue {fixed[i]} not an allowed split part mod {p}")
            entries.append((p, [fixed[i]]))
        else:
            entries.append((p, list(range(1, p))))
    m = math.prod(plan.primes)
    return list(crt_enumerate(ChoiceSpec.of(entries), 1, m))


def goldbach_refine(
    two_n: int, t: int, table: PrimeTable | None = None
) -> tuple[int, int] | None:
    """Fold an over-range candidate t > 2n back into a pair around n = 2n/2.

    With r = t - n, look for a divisor s of r with s^2 = 1 modulo every
    sieving prime; if r' = r/s < n and both n - r' and n + r' are prime,
    that pair decomposes 2n.  Returns None when no divisor works.
    """
    _check_even_target(two_n)
    if t <= two_n:
        raise ValueError("t must exceed the even target")
    plan = build_split_plan(two_n, table)
    for p, b in zip(plan.primes, plan.beta):
        if t % p == 0 or t % p == b:
            raise ValueError(f"{t} is not a suitable candidate (fails mod {p})")
    n = two_n // 2
    r = t - n
    divisors = set()
    d = 1
    while d * d <= r:
        if r % d == 0:
            divisors.update((d, r // d))
        d += 1
    for s in sorted(divisors):
        if any(s * s % p != 1 % p for p in plan.primes):
            continue
        r_prime = r // s
        if r_prime < n and is_prime(n - r_prime, table) and is_prime(n + r_prime, table):
            return (n - r_prime, n + r_prime)
    return None


def partition_probe(
    part_a: set[int],
    part_b: set[int],
    exponents: dict[int, int],
    sign: int,
    table: PrimeTable | None = None,
) -> dict:
    """alpha = prod(A^mu) +/- prod(B^nu): prime by construction when 2 < |alpha| < p_{k+1}^2.

    alpha is coprime to every prime in the prefix, so if it also lies below
    the square of the next prime its trial-division certificate is empty.
    The verdict is cross-checked with is_prime either way.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if part_a & part_b or not part_a or not part_b:
        raise ValueError("A and B must be disjoint and nonempty")
    union = sorted(part_a | part_b)
    prefix, p = [], 2
    while len(prefix) < len(union):
        prefix.append(p)
        p += 1
        while not is_prime(p):
            p += 1
    if union != prefix:
        raise ValueError(f"A union B = {union} is not the prime prefix {prefix}")
    if any(exponents.get(q, 0) < 1 for q in union):
        raise ValueError("every prefix prime needs an exponent >= 1")
    next_prime = p  # first prime after the prefix
    alpha = math.prod(q ** exponents[q] for q in sorted(part_a)) + sign * math.prod(
        q ** exponents[q] for q in sorted(part_b)
    )
    bound = next_prime * next_prime
    in_range = 2 < abs(alpha) < bound
    prime = is_prime(abs(alpha), table)
    if in_range and not prime:  # pragma: no cover - would contradict the certificate
        raise AssertionError(f"alpha = {alpha} in certified range yet composite")
    return {
        "alpha": alpha,
        "bound": bound,
        "verdict": "PRIME-BY-CONSTRUCTION" if in_range else "OUT-OF-RANGE",
        "is_prime": prime,
    }


@dataclass(frozen=True)
class TwinPair:
    lower: int
    upper: int
    certified: bool

    def row(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "certified": self.certified}


def twin_crt_search(
    primes: tuple[int, ...], bound: int, table: PrimeTable | None = None
) -> list[TwinPair]:
    """Twin pairs (n-2, n) with n avoiding {0, 2} modulo each given prime.

    Pairs with n below the square of the next prime are CERTIFIED: both
    members then carry empty trial-division certificates.  Beyond that the
    pair is kept only if both members pass is_prime, tagged uncertified.
    """
    if not primes:
        raise ValueError("primes must be nonempty")
    for i, p in enumerate(primes):
        if not is_prime(p) or (i and p <= primes[i - 1]):
            raise ValueError("primes must be ascending and prime")
    next_p = primes[-1] + 1
    while not is_prime(next_p):
        next_p += 1
    cert_bound = next_p * next_p
    spec = ChoiceSpec.of(
        (p, [r for r in range(p) if r not in (0, 2 % p)]) for p in primes
    )
    pairs = []
    for n in crt_enumerate(spec, 5, bound):
        certified = n < cert_bound
        if is_prime(n, table) and is_prime(n - 2, table):
            pairs.append(TwinPair(n - 2, n, certified))
        elif certified:  # pragma: no cover - contradiction with the certificate
            raise AssertionError(f"certified n = {n} or n - 2 composite")
    return pairs
