"""Difference-of-squares representations of odd n and the triples they give."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .arith import Factorization, divisors, factorize

__all__ = [
    "DiffSquareRep",
    "InvalidInput",
    "PythTriple",
    "check_odd_n",
    "count_triples_odd_edge",
    "diff_square_reps",
    "param_primitive_triple",
    "triples_with_odd_edge",
]


class InvalidInput(ValueError):
    """An argument violates a documented precondition."""


class DiffSquareRep(NamedTuple):
    """``n == t * (e*e - f*f)`` with ``gcd(e, f) == 1`` and ``e > f >= 1``.

    Tuples compare by ``(t, e, f)``, which is the canonical order everywhere.
    """

    t: int
    e: int
    f: int

    @property
    def n(self) -> int:
        return self.t * (self.e * self.e - self.f * self.f)

    @property
    def half_leg(self) -> int:
        """``t*e*f``; the even leg of the triple is twice this."""
        return self.t * self.e * self.f

    @property
    def hypotenuse(self) -> int:
        return self.t * (self.e * self.e + self.f * self.f)

    @property
    def primitive(self) -> bool:
        return self.t == 1

    def min_param(self) -> int:
        return min(self.e, self.f)


@dataclass(frozen=True)
class PythTriple:
    x: int
    y: int
    z: int

    @property
    def r(self) -> int:
        return math.gcd(self.x, self.y, self.z)

    @property
    def primitive(self) -> bool:
        return self.r == 1

    def is_valid(self) -> bool:
        return self.x * self.x + self.y * self.y == self.z * self.z


def check_odd_n(n: int) -> None:
    if not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise InvalidInput(f"n must be an odd integer >= 3, got {n!r}")


def param_primitive_triple(u: int, v: int) -> PythTriple:
    """Primitive triple ``(u^2 - v^2, 2uv, u^2 + v^2)``."""
    if not (u > v >= 1):
        raise InvalidInput(f"need u > v >= 1, got u={u}, v={v}")
    if math.gcd(u, v) != 1:
        raise InvalidInput(f"u and v must be coprime, got gcd={math.gcd(u, v)}")
    if (u - v) % 2 == 0:
        raise InvalidInput(f"u and v must have opposite parity, got u={u}, v={v}")
    return PythTriple(u * u - v * v, 2 * u * v, u * u + v * v)


def diff_square_reps(n: int, fact: Factorization | None = None) -> list[DiffSquareRep]:
    """Every ``(t, e, f)`` with ``n == t*(e^2 - f^2)``, sorted by ``(t, e)``.

    For each divisor ``t`` and each factor pair ``s < w`` of ``n // t``,
    ``e = (w + s) / 2`` and ``f = (w - s) / 2``; pairs with a common factor are
    dropped since they repeat a triple already produced by a larger ``t``.
    """
    check_odd_n(n)
    if fact is None:
        fact = factorize(n)
    divs = divisors(fact)
    reps = []
    for t in divs:
        m = n // t
        for s in divs:
            if s * s >= m:
                break
            if m % s:
                continue
            w = m // s
            e, f = (w + s) >> 1, (w - s) >> 1
            if math.gcd(e, f) == 1:
                reps.append(DiffSquareRep(t, e, f))
    reps.sort()
    return reps


def triples_with_odd_edge(n: int) -> list[PythTriple]:
    """One triple ``(n, 2tef, t(e^2 + f^2))`` per representation of ``n``."""
    return [PythTriple(n, 2 * r.half_leg, r.hypotenuse) for r in diff_square_reps(n)]


def count_triples_odd_edge(f: Factorization | int) -> int:
    """Sum of ``2**(omega(z) - 1)`` over the divisors ``z != 1`` of ``n``."""
    if isinstance(f, int):
        f = factorize(f)
    check_odd_n(f.n)
    # Divisors with exactly k distinct primes: sum over k-subsets of prod(alpha).
    # Accumulated as a polynomial in x where each prime contributes 1 + alpha*x.
    poly = [1]
    for _, a in f.factors:
        nxt = poly + [0]
        for k, c in enumerate(poly):
            nxt[k + 1] += a * c
        poly = nxt
    return sum(c << (k - 1) for k, c in enumerate(poly) if k >= 1)
