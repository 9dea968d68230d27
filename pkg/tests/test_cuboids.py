import itertools
import math
import random

import pytest
import sympy

from eulerbrick.bricks import build_brick, search_brick_witnesses
from eulerbrick.cuboids import (
    CuboidWitness,
    build_perfect_cuboid,
    canonical_witness,
    conjecture_index,
    independent_recheck,
    search_cuboid_witnesses,
    verify_perfect_cuboid,
)
from eulerbrick.pythag import DiffSquareRep as Rep, InvalidInput, diff_square_reps


def brute_cuboid_hits(n):
    reps = diff_square_reps(n)
    hits = set()
    for E, G, K in itertools.product(reps, repeat=3):
        if (E.t * E.e * E.f) ** 2 == (G.t * G.e * G.f) ** 2 + (K.t * K.e * K.f) ** 2:
            hits.add((E, frozenset((G, K))))
    return hits


@pytest.mark.parametrize(
    "scales,expected",
    [
        ((1, 1, 1), 1), ((3, 1, 1), 2), ((1, 3, 1), 3), ((1, 1, 5), 3),
        ((1, 3, 5), 4), ((3, 5, 1), 5), ((3, 1, 5), 5), ((3, 5, 7), 6),
    ],
)
def test_conjecture_index(scales, expected):
    assert conjecture_index(*scales) == expected


def test_canonical_puts_lone_scaled_rep_first():
    E, A, B = Rep(1, 5, 4), Rep(1, 9, 8), Rep(3, 2, 1)
    w = canonical_witness(9, E, A, B)
    assert w.repG == B and w.repK == A and w.conjecture == 3
    w = canonical_witness(9, E, Rep(1, 9, 8), Rep(1, 3, 2))
    assert w.repG < w.repK


def test_no_hits_105():
    assert search_cuboid_witnesses(105) == []
    assert brute_cuboid_hits(105) == set()


def test_rejects_even_n():
    with pytest.raises(InvalidInput):
        search_cuboid_witnesses(10)


def test_equal_e_and_g_cannot_certify():
    reps = diff_square_reps(45)
    for E in reps:
        for K in reps:
            assert not CuboidWitness(45, E, E, K).certificate_holds()


def test_oracle_equivalence_to_2000():
    for n in range(3, 2001, 2):
        got = {(w.repE, frozenset((w.repG, w.repK))) for w in search_cuboid_witnesses(n)}
        assert got == brute_cuboid_hits(n), n


def test_symbolic_face_and_body_identities():
    e, f, g, h, k, l = sympy.symbols("e f g h k l", positive=True)
    n = g**2 - h**2
    assert sympy.expand(n**2 + (2 * g * h) ** 2 - (g**2 + h**2) ** 2) == 0
    # body identity given n = e^2 - f^2 and e^2 f^2 = g^2 h^2 + k^2 l^2
    body = (e**2 - f**2) ** 2 + 4 * (g * h) ** 2 + 4 * (k * l) ** 2 - (e**2 + f**2) ** 2
    assert sympy.expand(body.subs((k * l) ** 2, e**2 * f**2 - g**2 * h**2)) == 0


def test_verify_equals_certificate_on_random_triples():
    rng = random.Random(7)
    for _ in range(3000):
        n = rng.randrange(15, 20000, 2)
        reps = diff_square_reps(n)
        if len(reps) < 3:
            continue
        E, G, K = rng.sample(reps, 3)
        w = CuboidWitness(n, E, G, K)
        c = build_perfect_cuboid(w)
        # faces through the odd edge always close; the rest hinges on the certificate
        assert c.a**2 + c.b**2 == c.d_ab**2 and c.a**2 + c.c**2 == c.d_ac**2
        assert bool(verify_perfect_cuboid(c)) == w.certificate_holds() == independent_recheck(w)


def test_forged_body_diagonal_fails_body_identity():
    (w,) = search_brick_witnesses(85)
    b = build_brick(w)
    body = math.isqrt(b.a**2 + b.b**2 + b.c**2)
    for forged in (body, body + 1):
        v = verify_perfect_cuboid((*b, forged))
        assert not v and v.failed.startswith("a^2+b^2+c^2")


def test_historical_brick_is_not_perfect():
    v = verify_perfect_cuboid((44, 117, 240, 125, 244, 267, 275))
    assert not v and "a^2+b^2+c^2" in v.failed
    assert math.isqrt(73225) == 270 and 270**2 != 73225


def test_verify_rejects_all_ones_and_bad_length():
    assert not verify_perfect_cuboid((1, 1, 1, 1, 1, 1, 1))
    assert not verify_perfect_cuboid((1, 2, 3))


def test_strict_and_conjecture_filter_keep_empty():
    for n in range(3, 3000, 2):
        assert search_cuboid_witnesses(n, conjectures={1, 4}, strict=True) == []
