"""Euler bricks with an odd edge: witness search, construction, classification.

A witness for odd ``n`` is a pair of distinct representations
``n = t1(e1^2 - f1^2) = t2(e2^2 - f2^2)`` such that
``(t1 e1 f1)^2 + (t2 e2 f2)^2 = d^2``. The brick it gives has edges
``(n, 2 t1 e1 f1, 2 t2 e2 f2)`` and face diagonals
``(t1(e1^2 + f1^2), t2(e2^2 + f2^2), 2d)``.

Type 1 has both scales equal to 1, type 2 exactly one, type 3 neither.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .arith import divisors, is_square
from .pythag import DiffSquareRep, InvalidInput, check_odd_n, diff_square_reps

__all__ = [
    "BrickError",
    "BrickVerdict",
    "BrickWitness",
    "Classification",
    "EulerBrick",
    "MultipleOddEdges",
    "NoOddEdge",
    "NoRepresentation",
    "NotEulerBrick",
    "brick_type",
    "build_brick",
    "classify_brick",
    "search_brick_witnesses",
    "verify_brick",
]


class BrickError(ValueError):
    pass


class NotEulerBrick(BrickError):
    """Some face diagonal is not an integer."""


class NoOddEdge(BrickError):
    pass


class MultipleOddEdges(BrickError):
    pass


class NoRepresentation(BrickError):
    """No scale turns an (odd edge, even edge) face into a representation."""


def brick_type(t1: int, t2: int) -> int:
    return 1 + (t1 > 1) + (t2 > 1)


@dataclass(frozen=True)
class BrickWitness:
    n: int
    rep1: DiffSquareRep
    rep2: DiffSquareRep
    d: int

    @property
    def brick_type(self) -> int:
        return brick_type(self.rep1.t, self.rep2.t)

    @property
    def degenerate(self) -> bool:
        """Distinct representations that nevertheless give equal even edges."""
        return self.rep1.half_leg == self.rep2.half_leg

    @property
    def primitive(self) -> bool:
        return math.gcd(self.n, self.rep1.half_leg, self.rep2.half_leg) == 1

    def is_valid(self) -> bool:
        r1, r2 = self.rep1, self.rep2
        return (
            r1.n == self.n
            and r2.n == self.n
            and r1 < r2
            and math.gcd(r1.e, r1.f) == 1
            and math.gcd(r2.e, r2.f) == 1
            and r1.e > r1.f >= 1
            and r2.e > r2.f >= 1
            and self.d > 0
            and r1.half_leg**2 + r2.half_leg**2 == self.d**2
        )

    def satisfies_strict(self) -> bool:
        """Every parameter of the witness exceeds 1, as the conjectures state."""
        return self.d > 1 and all(x > 1 for x in (self.rep1.e, self.rep1.f, self.rep2.e, self.rep2.f))

    def to_dict(self) -> dict:
        return {
            "rep1": list(self.rep1),
            "rep2": list(self.rep2),
            "d": self.d,
            "brick_type": self.brick_type,
            "degenerate": self.degenerate,
        }

    @classmethod
    def from_dict(cls, n: int, data: dict) -> "BrickWitness":
        return cls(n, DiffSquareRep(*data["rep1"]), DiffSquareRep(*data["rep2"]), data["d"])


class EulerBrick(NamedTuple):
    """Edges ``a, b, c`` and face diagonals, in the order ``ab, ac, bc``."""

    a: int
    b: int
    c: int
    d_ab: int
    d_ac: int
    d_bc: int

    @property
    def primitive(self) -> bool:
        return math.gcd(self.a, self.b, self.c) == 1

    def scaled(self, m: int) -> "EulerBrick":
        return EulerBrick(*(m * x for x in self))


class BrickVerdict(NamedTuple):
    ok: bool
    failed: str | None = None

    def __bool__(self) -> bool:
        return self.ok


_FACES = (("a^2+b^2", 0, 1), ("a^2+c^2", 0, 2), ("b^2+c^2", 1, 2))


def _match_faces(edges: tuple[int, int, int], diagonals: tuple[int, ...]) -> str | None:
    """Name of the first face whose squared sum no supplied diagonal closes.

    Diagonals may come in any order; each one is used at most once.
    """
    remaining = list(diagonals)
    for k, (name, i, j) in enumerate(_FACES):
        s = edges[i] ** 2 + edges[j] ** 2
        # Prefer the positional diagonal so a correct tuple consumes its own slot.
        order = [k] if k < len(diagonals) else []
        order += [m for m in range(len(diagonals)) if m != k]
        for m in order:
            if remaining[m] is not None and remaining[m] ** 2 == s:
                remaining[m] = None
                break
        else:
            return f"{name}={s} has no matching diagonal"
    return None


def verify_brick(brick: Iterable[int]) -> BrickVerdict:
    """Check the three face identities exactly.

    Accepts any 6-sequence ``(a, b, c, d1, d2, d3)``. The diagonals are matched
    to faces regardless of their order; the verdict names the first face
    (ab, ac, bc) left unmatched.
    """
    vals = tuple(brick)
    if len(vals) != 6:
        return BrickVerdict(False, f"expected 6 integers, got {len(vals)}")
    if any(not isinstance(v, int) or v <= 0 for v in vals):
        return BrickVerdict(False, "all lengths must be positive integers")
    failed = _match_faces(vals[:3], vals[3:])
    return BrickVerdict(failed is None, failed)


def build_brick(w: BrickWitness) -> EulerBrick:
    r1, r2 = w.rep1, w.rep2
    return EulerBrick(w.n, 2 * r1.half_leg, 2 * r2.half_leg, r1.hypotenuse, r2.hypotenuse, 2 * w.d)


def search_brick_witnesses(
    n: int, strict: bool = False, reps: list[DiffSquareRep] | None = None
) -> list[BrickWitness]:
    """All witnesses for ``n``, in canonical ``(rep1, rep2)`` order."""
    check_odd_n(n)
    if reps is None:
        reps = diff_square_reps(n)
    if strict:
        reps = [r for r in reps if r.f > 1]
    legs = [r.half_leg * r.half_leg for r in reps]
    out = []
    for i in range(len(reps)):
        li = legs[i]
        for j in range(i + 1, len(reps)):
            d = is_square(li + legs[j])
            if d is None:
                continue
            w = BrickWitness(n, reps[i], reps[j], d)
            if strict and not w.satisfies_strict():
                continue
            out.append(w)
    return out


def _rep_from_face(n: int, diag: int) -> DiffSquareRep:
    """Recover ``(t, e, f)`` from the face with odd edge ``n`` and diagonal ``diag``."""
    for t in divisors(math.gcd(n, diag)):
        m, h = n // t, diag // t
        e = is_square((h + m) // 2)
        f = is_square((h - m) // 2)
        if e is not None and f is not None and f >= 1 and math.gcd(e, f) == 1:
            return DiffSquareRep(t, e, f)
    raise NoRepresentation(f"no scale t makes face (n={n}, diagonal={diag}) a representation")


@dataclass(frozen=True)
class Classification:
    """Result of classifying a brick given by its edges.

    ``scale`` is the common factor removed; ``witness`` describes the primitive
    brick ``edges / scale``.
    """

    edges: tuple[int, int, int]
    scale: int
    witness: BrickWitness

    @property
    def brick_type(self) -> int:
        return self.witness.brick_type


def classify_brick(x: int, y: int, z: int) -> Classification:
    """Identify the witness and type of an Euler brick given by its edges."""
    edges = (x, y, z)
    if any(not isinstance(v, int) or v < 1 for v in edges):
        raise InvalidInput(f"edges must be positive integers, got {edges}")
    for name, i, j in _FACES:
        if is_square(edges[i] ** 2 + edges[j] ** 2) is None:
            raise NotEulerBrick(f"{name} is not a square for edges {edges}")
    g = math.gcd(x, y, z)
    prim = [v // g for v in edges]
    odd = [v for v in prim if v & 1]
    if not odd:
        raise NoOddEdge(f"no odd edge in primitive part {prim}")
    if len(odd) > 1:
        raise MultipleOddEdges(f"odd edges {odd} in primitive part {prim}")
    n = odd[0]
    if n < 3:
        raise NoRepresentation(f"odd edge {n} has no representation")
    evens = [v for v in prim if not v & 1]
    reps = []
    for E in evens:
        diag = is_square(n * n + E * E)
        rep = _rep_from_face(n, diag)
        if 2 * rep.half_leg != E:
            raise NoRepresentation(f"recovered {rep} does not reproduce edge {E}")
        reps.append(rep)
    reps.sort()
    d = is_square(reps[0].half_leg ** 2 + reps[1].half_leg ** 2)
    return Classification(edges, g, BrickWitness(n, reps[0], reps[1], d))
