import random
from fractions import Fraction
from math import gcd

import pytest

from pynekhoro.errors import InvalidArgumentError, PreconditionError
from pynekhoro.lattice import farey_fractions, rational_in_interval


def test_whole_interval():
    assert rational_in_interval(0.0, 2.0) == (0, 1)


def test_half():
    p, q = rational_in_interval(0.5, 0.2)
    assert (p, q) == (2, 5)
    assert abs(p) + q < 30


def test_tie_goes_to_the_floor():
    # q = 2, qx = 0.5 exactly
    assert rational_in_interval(0.25, 0.5) == (0, 1)


def test_reduction():
    # q = 4, qx = 2 gives 2/4
    assert rational_in_interval(0.5, 0.25) == (1, 2)


def test_interval_outside_unit_range():
    with pytest.raises(PreconditionError):
        rational_in_interval(-1.0, 0.5)
    with pytest.raises(PreconditionError):
        rational_in_interval(0.9, 0.4)


def test_non_positive_length():
    with pytest.raises(InvalidArgumentError):
        rational_in_interval(0.0, 0.0)
    with pytest.raises(InvalidArgumentError):
        rational_in_interval(0.0, -0.1)


def test_random_cases():
    rng = random.Random(2024)
    checked = 0
    for _ in range(10_000):
        l = rng.uniform(1e-3, 2.0)
        x = rng.uniform(-1.0 + l / 2, 1.0 - l / 2)
        lo, hi = Fraction(x) - Fraction(l) / 2, Fraction(x) + Fraction(l) / 2
        if lo < -1 or hi > 1:
            with pytest.raises(PreconditionError):
                rational_in_interval(x, l)
            continue
        p, q = rational_in_interval(x, l)
        assert q >= 1
        assert gcd(p, q) == 1
        assert lo <= Fraction(p, q) <= hi
        assert abs(p) + q < 6 / Fraction(l)
        checked += 1
    assert checked > 9_000


def test_brute_force_agrees():
    rng = random.Random(11)
    for _ in range(50):
        l = rng.uniform(0.1, 1.0)
        x = rng.uniform(-1.0 + l, 1.0 - l)
        lo, hi = Fraction(x) - Fraction(l) / 2, Fraction(x) + Fraction(l) / 2
        bound = 6 / Fraction(l)
        candidates = {
            (p // gcd(p, q), q // gcd(p, q))
            for q in range(1, int(bound) + 1)
            for p in range(-q, q + 1)
            if abs(p) + q < bound and lo <= Fraction(p, q) <= hi
        }
        assert candidates
        assert rational_in_interval(x, l) in candidates


def test_farey_fractions():
    assert farey_fractions(4) == [(-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1)]
    assert farey_fractions(1) == []
    values = [Fraction(p, q) for p, q in farey_fractions(12)]
    assert values == sorted(values)
    assert len(values) == len(set(values))
    assert all(abs(v) <= 1 for v in values)
