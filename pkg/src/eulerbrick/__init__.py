"""Exact integer searches for Euler bricks and perfect-cuboid witnesses with an odd edge."""

from .arith import Factorization, divisors, factorize, gcd, is_square, isqrt, two_square_decompositions
from .biquad import BiquadHit, annotate_hit, search_biquadratic
from .bricks import BrickWitness, EulerBrick, build_brick, classify_brick, search_brick_witnesses, verify_brick
from .cuboids import CuboidWitness, PerfectCuboid, build_perfect_cuboid, search_cuboid_witnesses, verify_perfect_cuboid
from .pythag import (
    DiffSquareRep,
    PythTriple,
    count_triples_odd_edge,
    diff_square_reps,
    param_primitive_triple,
    triples_with_odd_edge,
)
from .search import SearchConfig, resume, run_search

__version__ = "0.1.0"
