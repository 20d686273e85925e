"""Exact rank/kernel, cross-checked against the brute-force minor oracle."""

import random
from fractions import Fraction

from oracle_rank import rank_bruteforce

from koszulmf.linalg import kernel_dim, rank


def _random_fraction_matrix(rng, rows, cols):
    return [[Fraction(rng.randint(-3, 3), rng.choice([1, 1, 2, 3]))
             for _ in range(cols)] for _ in range(rows)]


def _random_mod_p_matrix(rng, rows, cols, p):
    return [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)]


def test_rank_matches_oracle_rationals():
    rng = random.Random(20260814)
    for _ in range(120):
        rows, cols = rng.randint(0, 4), rng.randint(0, 4)
        m = _random_fraction_matrix(rng, rows, cols)
        assert rank(m) == rank_bruteforce(m)


def test_rank_matches_oracle_mod_p():
    rng = random.Random(99)
    for _ in range(120):
        rows, cols = rng.randint(0, 4), rng.randint(0, 4)
        m = _random_mod_p_matrix(rng, rows, cols, 5)
        assert rank(m, 5) == rank_bruteforce(m, 5)


def test_rank_handles_rank_deficient_pivots():
    # first pivot column zero, needs a swap
    m = [[Fraction(0), Fraction(1)], [Fraction(0), Fraction(2)],
         [Fraction(3), Fraction(0)]]
    assert rank(m) == 2
    # mod 5: entries that vanish only modulo p
    m5 = [[5, 1], [10, 2]]
    assert rank([[v % 5 for v in row] for row in m5], 5) == 1


def test_kernel_dim():
    m = [[Fraction(1), Fraction(2), Fraction(3)]]
    assert kernel_dim(m, 3) == 2
    assert kernel_dim([], 3) == 3          # zero map out of rank 3
    assert kernel_dim([[]], 0) == 0        # nothing to kill
    rng = random.Random(7)
    for _ in range(60):
        rows, cols = rng.randint(0, 3), rng.randint(0, 3)
        m = _random_fraction_matrix(rng, rows, cols)
        assert kernel_dim(m, cols) == cols - rank_bruteforce(m)
