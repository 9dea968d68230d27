"""Search for the three biquadratic families

    C1: P^4 + Q^4 + R^4 + S^4 = T^2
    C2: P^4 + Q^4 + a^2 (R^4 + S^4) = T^2
    C3: a^2 (P^4 + Q^4) + b^2 (R^4 + S^4) = T^2

with P, Q, R, S odd and > 1, gcd(P, Q) = gcd(R, S) = 1 and odd scales > 1.
Each hit is annotated with every split ``T = d (U^2 + V^2)`` (odd d, coprime
odd U, V) and whether the chain ``lhs == rhs == d U V`` holds, where lhs/rhs
are PQ/RS weighted by the scales of the family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import NamedTuple

from .arith import divisors, is_square, two_square_decompositions
from .pythag import InvalidInput

__all__ = [
    "Annotation",
    "BiquadHit",
    "annotate_hit",
    "coprime_odd_pairs",
    "search_biquadratic",
]


class Annotation(NamedTuple):
    kind: str  # "direct" when d == 1, else "scaled"
    d: int
    U: int
    V: int
    product_ok: bool


@dataclass(frozen=True)
class BiquadHit:
    conjecture: int
    P: int
    Q: int
    R: int
    S: int
    T: int
    a: int = 1
    b: int = 1
    annotations: tuple[Annotation, ...] = field(default=(), compare=False)

    @property
    def weights(self) -> tuple[int, int]:
        """Scales multiplying ``P^4+Q^4`` and ``R^4+S^4`` (before squaring)."""
        if self.conjecture == 1:
            return 1, 1
        if self.conjecture == 2:
            return 1, self.a
        return self.a, self.b

    @property
    def key(self) -> tuple[int, ...]:
        return (self.conjecture, self.a, self.b, self.P, self.Q, self.R, self.S, self.T)

    def residual(self) -> int:
        wl, wr = self.weights
        P, Q, R, S = self.P, self.Q, self.R, self.S
        return wl * wl * (P**4 + Q**4) + wr * wr * (R**4 + S**4) - self.T * self.T

    def is_valid(self) -> bool:
        vals = (self.P, self.Q, self.R, self.S)
        scales_ok = {
            1: self.a == 1 and self.b == 1,
            2: self.a > 1 and self.a & 1 and self.b == 1,
            3: self.a > 1 and self.b > 1 and self.a & 1 and self.b & 1,
        }.get(self.conjecture, False)
        return bool(
            scales_ok
            and all(v > 1 and v & 1 for v in vals)
            and math.gcd(self.P, self.Q) == 1
            and math.gcd(self.R, self.S) == 1
            and self.T > 0
            and self.T % 2 == 0
            and self.residual() == 0
        )

    @property
    def anomaly(self) -> bool:
        return any(a.product_ok for a in self.annotations)

    def to_dict(self) -> dict:
        return {
            "conjecture": self.conjecture,
            "a": self.a,
            "b": self.b,
            "P": self.P,
            "Q": self.Q,
            "R": self.R,
            "S": self.S,
            "T": self.T,
            "annotations": [a._asdict() for a in self.annotations],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BiquadHit":
        anns = tuple(Annotation(**a) for a in data.get("annotations", ()))
        keys = ("conjecture", "P", "Q", "R", "S", "T", "a", "b")
        return cls(**{k: data[k] for k in keys}, annotations=anns)


def annotate_hit(h: BiquadHit, strict: bool = True) -> BiquadHit:
    """Recompute every ``T = d (U^2 + V^2)`` split and its product condition.

    ``strict`` requires ``U, V > 1``; the scaled kind always has ``d > 1``.
    """
    wl, wr = h.weights
    lhs, rhs = wl * h.P * h.Q, wr * h.R * h.S
    anns = []
    for d in divisors(h.T):
        if not d & 1:
            continue
        for U, V in two_square_decompositions(h.T // d, require_gt1=strict):
            ok = lhs == rhs == d * U * V
            anns.append(Annotation("direct" if d == 1 else "scaled", d, U, V, ok))
    return replace(h, annotations=tuple(anns))


def coprime_odd_pairs(bound: int) -> list[tuple[int, int]]:
    """Pairs ``3 <= P < Q <= bound`` of coprime odd integers."""
    odds = range(3, bound + 1, 2)
    return [(p, q) for p in odds for q in odds if p < q and math.gcd(p, q) == 1]


def _odd_scales(scale_bound: int) -> list[int]:
    return list(range(3, scale_bound + 1, 2))


def search_biquadratic(
    conjecture: int,
    bound: int,
    scale_bound: int = 9,
    strict: bool = True,
    p_values: set[int] | None = None,
) -> list[BiquadHit]:
    """All hits with ``max(P, Q, R, S) <= bound`` and odd scales in ``(1, scale_bound]``.

    Canonical form: ``P < Q`` and ``R < S``; for C1 ``(P, Q) <= (R, S)`` and for
    C3 ``(a, P, Q) <= (b, R, S)``. ``p_values`` restricts the outermost loop
    variable ``P`` so the search can be split across workers.
    """
    if conjecture not in (1, 2, 3):
        raise InvalidInput(f"conjecture must be 1, 2 or 3, got {conjecture!r}")
    if bound < 3:
        raise InvalidInput(f"bound must be >= 3, got {bound}")
    if conjecture != 1 and scale_bound < 3:
        raise InvalidInput(f"scale_bound must be >= 3 for C{conjecture}, got {scale_bound}")
    pairs = coprime_odd_pairs(bound)
    quart = [p**4 + q**4 for p, q in pairs]
    outer = [i for i, (p, _) in enumerate(pairs) if p_values is None or p in p_values]
    scales = _odd_scales(scale_bound)
    hits = []

    def emit(i, j, T, a=1, b=1):
        (P, Q), (R, S) = pairs[i], pairs[j]
        hits.append(annotate_hit(BiquadHit(conjecture, P, Q, R, S, T, a, b), strict))

    if conjecture == 1:
        for i in outer:
            for j in range(i, len(pairs)):
                T = is_square(quart[i] + quart[j])
                if T is not None:
                    emit(i, j, T)
    elif conjecture == 2:
        for i in outer:
            for j in range(len(pairs)):
                for a in scales:
                    T = is_square(quart[i] + a * a * quart[j])
                    if T is not None:
                        emit(i, j, T, a)
    else:
        for i in outer:
            for a in scales:
                left = a * a * quart[i]
                for j in range(len(pairs)):
                    for b in scales:
                        if (a, pairs[i]) > (b, pairs[j]):
                            continue
                        T = is_square(left + b * b * quart[j])
                        if T is not None:
                            emit(i, j, T, a, b)
    hits.sort(key=lambda h: h.key)
    return hits
