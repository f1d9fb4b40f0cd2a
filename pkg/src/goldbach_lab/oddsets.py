"""Prime sieving and odd-set membership semantics.

Every graph family in this package is an odd-even graph: vertices are even
integers and adjacency of a, b requires (a+b)/2 and |a-b|/2 to lie in a chosen
set O of odd numbers.  This module defines the admissible-odd-set vocabulary:

  * ``pmm`` (prime multiple missing): all odds except non-trivial multiples
    of a fixed odd prime p (p itself, being p*1, stays admissible),
  * ``intersection``: the conjunction of several pmm conditions,
  * ``near-goldbach``: 1 together with the odd primes below 2n,
  * ``goldbach``: the odd primes below 2n,
  * ``explicit``: an arbitrary injected set (testing hook).

Membership queries are valid for odd y with 1 <= y <= 2n-1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DomainError

KIND_PMM = "pmm"
KIND_INTERSECTION = "intersection"
KIND_NEAR_GOLDBACH = "near-goldbach"
KIND_GOLDBACH = "goldbach"
KIND_EXPLICIT = "explicit"


def prime_flags_upto(limit: int) -> np.ndarray:
    """Boolean array of length limit+1 where flags[i] is True iff i is prime."""
    if limit < 1:
        return np.zeros(max(limit + 1, 0), dtype=bool)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


def sieve_odd_primes(limit: int) -> list[int]:
    """All odd primes strictly below ``limit``, ascending.  Empty for limit <= 3."""
    if limit < 0:
        raise DomainError(f"limit must be non-negative, got {limit}")
    if limit <= 3:
        return []
    flags = prime_flags_upto(limit - 1)
    flags[2] = False
    return np.flatnonzero(flags).tolist()


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q < 4:
        return True
    if q % 2 == 0:
        return False
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


def is_odd_prime(q: int) -> bool:
    return q != 2 and is_prime(q)


class PrimeTable:
    """Bit-indexed primality up to a limit, plus the ordered odd primes below it.

    Immutable after construction; safe to share across threads.
    """

    def __init__(self, limit: int):
        if limit < 0:
            raise DomainError(f"limit must be non-negative, got {limit}")
        self.limit = limit
        self._flags = prime_flags_upto(limit)
        odd = self._flags.copy()
        if limit >= 2:
            odd[2] = False
        self.odd_primes = np.flatnonzero(odd)

    def is_prime(self, q: int) -> bool:
        if q < 0 or q > self.limit:
            raise DomainError(f"{q} outside table limit {self.limit}")
        return bool(self._flags[q])

    @property
    def flags(self) -> np.ndarray:
        return self._flags


@lru_cache(maxsize=64)
def _cached_prime_flags(limit: int) -> np.ndarray:
    flags = prime_flags_upto(limit)
    flags.setflags(write=False)
    return flags


def eta(p: int) -> int:
    """Number of unordered two-part additive partitions of an odd prime p.

    Equals (p-1)/2; this is the expected count of independent paths in the
    graph that drops multiples of p.
    """
    if not is_odd_prime(p):
        raise DomainError(f"eta is defined for odd primes only, got {p}")
    return (p - 1) // 2


@dataclass(frozen=True)
class OddSetSpec:
    """Declarative description of the odd set O of an odd-even graph.

    ``n`` is the graph size parameter: membership is defined for odd y in
    [1, 2n-1].  Use the classmethod constructors; they validate arguments.
    """

    kind: str
    n: int
    primes: tuple[int, ...] = ()
    members: frozenset = field(default_factory=frozenset)

    @classmethod
    def prime_multiple_missing(cls, p: int, n: int) -> "OddSetSpec":
        if not is_odd_prime(p):
            raise DomainError(f"p must be an odd prime, got {p}")
        cls._check_n(n)
        return cls(KIND_PMM, n, primes=(p,))

    @classmethod
    def prime_intersection(cls, ps, n: int) -> "OddSetSpec":
        ps = tuple(ps)
        if not ps:
            raise DomainError("prime list must be nonempty")
        if list(ps) != sorted(set(ps)):
            raise DomainError(f"prime list must be strictly ascending, got {ps}")
        for p in ps:
            if not is_odd_prime(p):
                raise DomainError(f"{p} is not an odd prime")
        cls._check_n(n)
        return cls(KIND_INTERSECTION, n, primes=ps)

    @classmethod
    def near_goldbach(cls, n: int) -> "OddSetSpec":
        cls._check_n(n)
        return cls(KIND_NEAR_GOLDBACH, n)

    @classmethod
    def goldbach(cls, n: int) -> "OddSetSpec":
        cls._check_n(n)
        return cls(KIND_GOLDBACH, n)

    @classmethod
    def explicit(cls, members, n: int) -> "OddSetSpec":
        cls._check_n(n)
        members = frozenset(int(y) for y in members)
        for y in members:
            if y % 2 == 0 or y < 1:
                raise DomainError(f"explicit member {y} is not a positive odd number")
        return cls(KIND_EXPLICIT, n, members=members)

    @staticmethod
    def _check_n(n: int) -> None:
        if n < 1:
            raise DomainError(f"n must be positive, got {n}")

    def contains(self, y: int) -> bool:
        """Membership of odd y in O.  Raises DomainError off the valid range."""
        if y % 2 == 0:
            raise DomainError(f"membership is defined for odd numbers, got {y}")
        if y < 1 or y > 2 * self.n - 1:
            raise DomainError(f"{y} outside the valid range [1, {2 * self.n - 1}]")
        if self.kind == KIND_PMM:
            p = self.primes[0]
            return y == p or y % p != 0
        if self.kind == KIND_INTERSECTION:
            return all(y == p or y % p != 0 for p in self.primes)
        if self.kind == KIND_NEAR_GOLDBACH:
            return y == 1 or is_prime(y)
        if self.kind == KIND_GOLDBACH:
            return y != 1 and is_prime(y)
        return y in self.members

    def membership_table(self) -> np.ndarray:
        """Boolean lookup of length 2n+1: table[y] == contains(y) for odd y.

        Even (and out-of-set) indices are False, so vectorized adjacency
        checks can index it directly with half-sum and half-difference
        arrays; the diagonal (half-sum 2n, half-difference 0) falls out.
        """
        size = 2 * self.n + 1
        table = np.zeros(size, dtype=bool)
        odd = np.arange(1, size, 2)
        if self.kind == KIND_PMM or self.kind == KIND_INTERSECTION:
            keep = np.ones(odd.shape, dtype=bool)
            for p in self.primes:
                keep &= (odd % p != 0) | (odd == p)
            table[odd] = keep
        elif self.kind == KIND_NEAR_GOLDBACH:
            flags = _cached_prime_flags(size - 1) if size > 1 else np.zeros(1, bool)
            table[odd] = flags[odd]
            table[1] = True
        elif self.kind == KIND_GOLDBACH:
            flags = _cached_prime_flags(size - 1) if size > 1 else np.zeros(1, bool)
            table[odd] = flags[odd]
        else:
            for y in self.members:
                if y < size:
                    table[y] = True
        return table

    def describe(self) -> str:
        if self.kind == KIND_PMM:
            return f"odds without non-trivial multiples of {self.primes[0]}"
        if self.kind == KIND_INTERSECTION:
            return "odds without non-trivial multiples of " + ", ".join(
                str(p) for p in self.primes
            )
        if self.kind == KIND_NEAR_GOLDBACH:
            return f"1 and the odd primes below {2 * self.n}"
        if self.kind == KIND_GOLDBACH:
            return f"odd primes below {2 * self.n}"
        return f"explicit set of {len(self.members)} odd numbers"
