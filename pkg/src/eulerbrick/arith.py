"""Exact integer primitives used by every search.

Nothing in here touches floating point. Python integers are unbounded, so the
n**4-scale square certificates produced by the searches never overflow.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import reduce

__all__ = [
    "Factorization",
    "divisors",
    "factorize",
    "gcd",
    "is_prime",
    "is_square",
    "isqrt",
    "two_square_decompositions",
]

# Trial division covers every prime below this; larger cofactors go to
# Miller-Rabin / Pollard rho.
TRIAL_LIMIT = 1 << 12

# Witness set that makes Miller-Rabin deterministic below 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_BELOW = 3317044064679887385961981


def _small_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


_PRIMES = _small_primes(TRIAL_LIMIT)


def gcd(a: int, b: int) -> int:
    """Greatest common divisor of two nonnegative integers; gcd(0, 0) == 0."""
    return math.gcd(a, b)


def isqrt(x: int) -> int:
    """Largest r with r*r <= x."""
    if x < 0:
        raise ValueError(f"isqrt of negative number {x}")
    return math.isqrt(x)


def is_square(x: int) -> int | None:
    """Return the root of ``x`` if it is a perfect square, else ``None``."""
    if x < 0:
        return None
    # Squares are 0, 1, 4 or 9 mod 16; rejects 75% of non-squares cheaply.
    if (x & 15) not in (0, 1, 4, 9):
        return None
    r = math.isqrt(x)
    return r if r * r == x else None


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _PRIMES[:25]:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while not d & 1:
        d >>= 1
        s += 1
    if n < _MR_DETERMINISTIC_BELOW:
        bases = _MR_BASES
    else:
        rng = random.Random(n)
        bases = _MR_BASES + tuple(rng.randrange(2, n - 1) for _ in range(24))
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite ``n``."""
    rng = random.Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = is_square(n)
    if r is not None:
        _split(r, out)
        _split(r, out)
        return
    d = _pollard_brent(n)
    _split(d, out)
    _split(n // d, out)


@dataclass(frozen=True)
class Factorization:
    """Prime factorization ``n = prod(p**a for p, a in factors)``."""

    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def omega(self) -> int:
        """Number of distinct prime factors."""
        return len(self.factors)

    def value(self) -> int:
        return reduce(lambda acc, pa: acc * pa[0] ** pa[1], self.factors, 1)

    def num_divisors(self) -> int:
        return math.prod(a + 1 for _, a in self.factors)


def factorize(n: int) -> Factorization:
    """Complete prime factorization of a positive integer.

    Trial division by the primes below ``TRIAL_LIMIT``, then a deterministic
    Miller-Rabin test and Pollard-Brent rho on whatever cofactor remains.

    >>> factorize(495).factors
    ((3, 2), (5, 1), (11, 1))
    """
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    found: dict[int, int] = {}
    m = n
    for p in _PRIMES:
        if p * p > m:
            break
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            found[p] = k
    if m > 1:
        if m < TRIAL_LIMIT * TRIAL_LIMIT:
            found[m] = found.get(m, 0) + 1
        else:
            _split(m, found)
    return Factorization(n, tuple(sorted(found.items())))


def divisors(f: Factorization | int) -> list[int]:
    """All positive divisors in ascending order."""
    if isinstance(f, int):
        f = factorize(f)
    divs = [1]
    for p, a in f.factors:
        step = []
        pk = 1
        for _ in range(a):
            pk *= p
            step.extend(d * pk for d in divs)
        divs += step
    divs.sort()
    return divs


def two_square_decompositions(T: int, require_gt1: bool = False) -> list[tuple[int, int]]:
    """Pairs ``U <= V`` of coprime odd integers with ``U*U + V*V == T``.

    ``T`` must be even (a sum of two odd squares always is). With
    ``require_gt1`` pairs using 1 are dropped.
    """
    if T < 0 or T & 1:
        raise ValueError(f"T must be a nonnegative even integer, got {T}")
    out = []
    lo = 3 if require_gt1 else 1
    u = lo
    while 2 * u * u <= T:
        v = is_square(T - u * u)
        if v is not None and v & 1 and math.gcd(u, v) == 1:
            if not require_gt1 or v > 1:
                out.append((u, v))
        u += 2
    return out
