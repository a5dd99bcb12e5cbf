"""Integer arithmetic for Hall divisors.

Factorization, Hall (unitary) divisors, p-parts, the CRT residue used to
manufacture witness primes, and bounded prime scans in arithmetic
progressions.  Everything here is a pure function of its arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

import numpy as np
from sympy import factorint as _sympy_factorint
from sympy import isprime as _sympy_isprime

MAX_INT = 2**63 - 1
DEFAULT_PRIME_BOUND = 10**6

_SMALL_PRIMES = [q for q in range(2, 1000) if all(q % r for r in range(2, math.isqrt(q) + 1))]
_SEGMENT = 1 << 20


class BoundExhaustedError(Exception):
    """Raised when a bounded prime search ends before enough primes were found.

    ``found`` holds whatever was collected before the bound was reached.
    """

    def __init__(self, message: str, found: list[int]):
        super().__init__(message)
        self.found = found


class InvalidClassError(ValueError):
    """Residue class that is not coprime to its modulus."""


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for q, e in self.factors:
            if q <= last or e < 1:
                raise ValueError(f"malformed factor list {self.factors!r}")
            last = q
            prod *= q**e
        if prod != self.n:
            raise ValueError(f"factors {self.factors!r} do not multiply to {self.n}")

    @property
    def primes(self) -> list[int]:
        return [q for q, _ in self.factors]

    @property
    def omega(self) -> int:
        """Number of distinct prime factors."""
        return len(self.factors)

    def part(self, q: int) -> int:
        for r, e in self.factors:
            if r == q:
                return r**e
        return 1


@dataclass(frozen=True)
class CongruenceClass:
    modulus: int
    residue: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if not 0 <= self.residue < self.modulus:
            raise ValueError("residue must lie in [0, modulus)")

    def __contains__(self, n: int) -> bool:
        return n % self.modulus == self.residue


@dataclass(frozen=True)
class WitnessPrimeQuery:
    a: int
    b: int
    count: int = 1
    search_bound: int = DEFAULT_PRIME_BOUND

    def __post_init__(self):
        if self.a <= 1 or self.b <= 1:
            raise ValueError("a and b must both exceed 1")
        if math.gcd(self.a, self.b) != 1:
            raise ValueError(f"gcd({self.a}, {self.b}) != 1")
        if self.count < 1:
            raise ValueError("count must be positive")


def _check_range(n: int, name: str = "n") -> None:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise TypeError(f"{name} must be an integer, got {type(n).__name__}")
    if n > MAX_INT:
        raise ValueError(f"{name}={n} exceeds the supported range 2**63-1")


def is_prime(n: int) -> bool:
    """Deterministic primality test on [0, 2**63).

    Below 2**64 sympy's strong BPSW test has no pseudoprimes, so the answer
    is unconditional on the supported range.
    """
    _check_range(n)
    if n < 2:
        return False
    return bool(_sympy_isprime(int(n)))


def factorize(n: int) -> Factorization:
    _check_range(n)
    if n < 1:
        raise ValueError(f"cannot factor {n}; need n >= 1")
    n = int(n)
    factors: dict[int, int] = {}
    rest = n
    for q in _SMALL_PRIMES:
        if q * q > rest:
            break
        if rest % q == 0:
            e = 0
            while rest % q == 0:
                rest //= q
                e += 1
            factors[q] = e
    if rest > 1:
        if rest < _SMALL_PRIMES[-1] ** 2 or is_prime(rest):
            factors[rest] = factors.get(rest, 0) + 1
        else:
            for q, e in _sympy_factorint(rest).items():
                factors[int(q)] = factors.get(int(q), 0) + e
    return Factorization(n, tuple(sorted(factors.items())))


def is_hall_divisor(m: int, n: int) -> bool:
    """True iff m divides n and gcd(m, n/m) == 1."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    return n % m == 0 and math.gcd(m, n // m) == 1


def hall_divisors(n: int) -> list[int]:
    parts = [q**e for q, e in factorize(n).factors]
    out = []
    for r in range(len(parts) + 1):
        for combo in combinations(parts, r):
            out.append(math.prod(combo))
    return sorted(out)


def p_part(n: int, p: int) -> int:
    """Largest power of the prime ``p`` dividing ``n``."""
    if n < 1:
        raise ValueError("n must be positive")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    part = 1
    while n % p == 0:
        n //= p
        part *= p
    return part


def crt_xi(a: int, b: int) -> CongruenceClass:
    """Residue xi mod (ab)^2 with xi = 1+a (mod a^2) and xi = -1+b (mod b^2)."""
    if a <= 1 or b <= 1:
        raise ValueError("a and b must both exceed 1")
    if math.gcd(a, b) != 1:
        raise ValueError(f"gcd({a}, {b}) != 1")
    ma, mb = a * a, b * b
    mod = ma * mb
    # xi = (1+a) + ma * t, with ma * t = (b-1) - (1+a) (mod mb)
    t = ((b - 1 - (1 + a)) * pow(ma, -1, mb)) % mb
    xi = (1 + a + ma * t) % mod
    return CongruenceClass(mod, xi)


def _sieve_segment(lo: int, hi: int) -> np.ndarray:
    """Primes in [lo, hi) as an int64 array."""
    lo = max(lo, 2)
    if hi <= lo:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(hi - lo, dtype=bool)
    root = math.isqrt(hi - 1)
    base = np.ones(root + 1, dtype=bool)
    base[:2] = False
    for q in range(2, math.isqrt(root) + 1):
        if base[q]:
            base[q * q :: q] = False
    for q in np.flatnonzero(base):
        q = int(q)
        start = max(q * q, ((lo + q - 1) // q) * q)
        flags[start - lo :: q] = False
    return np.flatnonzero(flags).astype(np.int64) + lo


def iter_prime_chunks(bound: int, start: int = 2) -> Iterator[np.ndarray]:
    """Yield ascending arrays of primes in [start, bound], segment by segment."""
    lo = start
    while lo <= bound:
        hi = min(bound + 1, lo + _SEGMENT)
        yield _sieve_segment(lo, hi)
        lo = hi


def primes_up_to(bound: int) -> np.ndarray:
    chunks = list(iter_prime_chunks(bound))
    return np.concatenate(chunks) if chunks else np.empty(0, dtype=np.int64)


def primes_in_class_with_gcd(cls: CongruenceClass, count: int, bound: int) -> list[int]:
    """Primes p <= bound with p = r (mod M) and gcd(M, (p - r)/M) == 1.

    Returns at most ``count`` primes in increasing order.  A short list means
    ``bound`` was reached first; a class with gcd(r, M) > 1 raises
    InvalidClassError.
    """
    M, r = cls.modulus, cls.residue
    if math.gcd(r, M) != 1:
        raise InvalidClassError(f"residue {r} is not coprime to modulus {M}")
    found: list[int] = []
    for chunk in iter_prime_chunks(bound):
        hits = chunk[chunk % M == r]
        if hits.size:
            x = (hits - r) // M
            hits = hits[np.gcd(x, M) == 1]
        for p in hits.tolist():
            found.append(p)
            if len(found) == count:
                return found
    return found


def is_witness_prime(a: int, b: int, p: int) -> bool:
    """a is a Hall divisor of p-1 and b is a Hall divisor of p+1."""
    return p > 2 and is_hall_divisor(a, p - 1) and is_hall_divisor(b, p + 1)


def find_witness_primes(query: WitnessPrimeQuery) -> list[int]:
    """Least primes p with a || p-1 and b || p+1, in increasing order.

    Primes are prefiltered to the progression p = 1 (mod a), p = -1 (mod b);
    every survivor is then checked against the Hall-divisor conditions
    directly.  The CRT class from ``crt_xi`` is deliberately not used as the
    filter: it is only one of several classes mod (ab)^2 containing witnesses.
    """
    a, b = query.a, query.b
    ab = a * b
    c = (1 + a * (((-2) * pow(a, -1, b)) % b)) % ab  # c = 1 mod a, c = -1 mod b
    found: list[int] = []
    for chunk in iter_prime_chunks(query.search_bound, start=3):
        hits = chunk[chunk % ab == c]
        if hits.size:
            ok = (np.gcd((hits - 1) // a, a) == 1) & (np.gcd((hits + 1) // b, b) == 1)
            hits = hits[ok]
        for p in hits.tolist():
            found.append(p)
            if len(found) == query.count:
                return found
    raise BoundExhaustedError(
        f"only {len(found)} of {query.count} witness primes for (a={a}, b={b}) "
        f"below {query.search_bound}",
        found,
    )
