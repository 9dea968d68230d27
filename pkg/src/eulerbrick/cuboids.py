"""Perfect-cuboid candidates built from three representations of an odd n.

A witness is ``(repE, repG, repK)`` with
``(s1 e f)^2 == (s2 g h)^2 + (s3 k l)^2``. The candidate has edges
``(n, 2 s2 g h, 2 s3 k l)``, face diagonals
``(s2(g^2 + h^2), s3(k^2 + l^2), 2 s1 e f)`` and body diagonal
``s1(e^2 + f^2)``. No such witness is known; any hit is an anomaly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

import gmpy2

from .bricks import _match_faces
from .pythag import DiffSquareRep, check_odd_n, diff_square_reps

__all__ = [
    "ALL_CONJECTURES",
    "CuboidVerdict",
    "CuboidWitness",
    "PerfectCuboid",
    "build_perfect_cuboid",
    "canonical_witness",
    "conjecture_index",
    "independent_recheck",
    "search_cuboid_witnesses",
    "verify_perfect_cuboid",
]

ALL_CONJECTURES = frozenset(range(1, 7))

# (s1 > 1, s2 > 1, s3 > 1) after canonicalization -> conjecture number.
_PATTERNS = {
    (False, False, False): 1,
    (True, False, False): 2,
    (False, True, False): 3,
    (False, True, True): 4,
    (True, True, False): 5,
    (True, True, True): 6,
}


def conjecture_index(s1: int, s2: int, s3: int) -> int:
    """Conjecture number of a scale pattern; ``s2``/``s3`` may come in either order."""
    big2, big3 = s2 > 1, s3 > 1
    if big3 and not big2:
        big2, big3 = True, False
    return _PATTERNS[(s1 > 1, big2, big3)]


def canonical_witness(n, repE, repA, repB) -> "CuboidWitness":
    """Order the two summand reps: a lone scaled rep goes first, else ``(t, e)`` order."""
    if (repB.t > 1) != (repA.t > 1):
        if repB.t > 1:
            repA, repB = repB, repA
    elif repB < repA:
        repA, repB = repB, repA
    return CuboidWitness(n, repE, repA, repB)


@dataclass(frozen=True)
class CuboidWitness:
    n: int
    repE: DiffSquareRep
    repG: DiffSquareRep
    repK: DiffSquareRep

    @property
    def conjecture(self) -> int:
        return conjecture_index(self.repE.t, self.repG.t, self.repK.t)

    @property
    def degenerate(self) -> bool:
        return self.repG == self.repK

    def certificate_holds(self) -> bool:
        return self.repE.half_leg**2 == self.repG.half_leg**2 + self.repK.half_leg**2

    def satisfies_strict(self) -> bool:
        """Every ``(>1)`` bound of the conjecture: all of ``e, f, g, h, k, l``."""
        return all(r.f > 1 for r in (self.repE, self.repG, self.repK))

    def to_dict(self) -> dict:
        return {
            "repE": list(self.repE),
            "repG": list(self.repG),
            "repK": list(self.repK),
            "conjecture": self.conjecture,
            "degenerate": self.degenerate,
        }

    @classmethod
    def from_dict(cls, n: int, data: dict) -> "CuboidWitness":
        return cls(n, *(DiffSquareRep(*data[k]) for k in ("repE", "repG", "repK")))


class PerfectCuboid(NamedTuple):
    a: int
    b: int
    c: int
    d_ab: int
    d_ac: int
    d_bc: int
    body: int


class CuboidVerdict(NamedTuple):
    ok: bool
    failed: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def build_perfect_cuboid(w: CuboidWitness) -> PerfectCuboid:
    E, G, K = w.repE, w.repG, w.repK
    return PerfectCuboid(
        w.n, 2 * G.half_leg, 2 * K.half_leg, G.hypotenuse, K.hypotenuse, 2 * E.half_leg, E.hypotenuse
    )


def verify_perfect_cuboid(c: Iterable[int]) -> CuboidVerdict:
    """Check the three face identities and the body identity exactly.

    Takes seven integers ``(a, b, c, d1, d2, d3, body)``; face diagonals may
    come in any order.
    """
    vals = tuple(c)
    if len(vals) != 7:
        return CuboidVerdict(False, f"expected 7 integers, got {len(vals)}")
    if any(not isinstance(v, int) or v <= 0 for v in vals):
        return CuboidVerdict(False, "all lengths must be positive integers")
    failed = _match_faces(vals[:3], vals[3:6])
    if failed:
        return CuboidVerdict(False, failed)
    a, b, cc, body = vals[0], vals[1], vals[2], vals[6]
    if a * a + b * b + cc * cc != body * body:
        return CuboidVerdict(False, f"a^2+b^2+c^2={a * a + b * b + cc * cc} != body^2={body * body}")
    return CuboidVerdict(True)


def independent_recheck(w: CuboidWitness) -> bool:
    """Recompute the witness and all four identities with GMP integers."""
    mz = gmpy2.mpz
    n = mz(w.n)
    sums = []
    for r in (w.repE, w.repG, w.repK):
        t, e, f = mz(r.t), mz(r.e), mz(r.f)
        if t * (e * e - f * f) != n or gmpy2.gcd(e, f) != 1:
            return False
        sums.append((t * e * f, t * (e * e + f * f)))
    (ef, body), (gh, dg), (kl, dk) = sums
    a, b, c = n, 2 * gh, 2 * kl
    return bool(
        a * a + b * b == dg * dg
        and a * a + c * c == dk * dk
        and b * b + c * c == (2 * ef) ** 2
        and a * a + b * b + c * c == body * body
        and gmpy2.is_square(a * a + b * b + c * c)
    )


def search_cuboid_witnesses(
    n: int,
    conjectures: Iterable[int] = ALL_CONJECTURES,
    strict: bool = False,
    reps: list[DiffSquareRep] | None = None,
) -> list[CuboidWitness]:
    """All witnesses for ``n`` whose conjecture number is in ``conjectures``.

    repE must differ from both summands (a zero summand is impossible);
    repG == repK is searched and flagged degenerate.
    """
    check_odd_n(n)
    wanted = frozenset(conjectures)
    if reps is None:
        reps = diff_square_reps(n)
    if strict:
        reps = [r for r in reps if r.f > 1]
    sq = [r.half_leg * r.half_leg for r in reps]
    by_square: dict[int, list[int]] = {}
    for idx, s in enumerate(sq):
        by_square.setdefault(s, []).append(idx)
    out = []
    for i in range(len(reps)):
        for j in range(i, len(reps)):
            hits = by_square.get(sq[i] + sq[j])
            if not hits:
                continue
            for k in hits:
                w = canonical_witness(n, reps[k], reps[i], reps[j])
                if w.conjecture in wanted and (not strict or w.satisfies_strict()):
                    out.append(w)
    out.sort(key=lambda w: (w.repE, w.repG, w.repK))
    return out
