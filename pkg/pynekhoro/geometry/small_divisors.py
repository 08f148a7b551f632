## @file small_divisors.py
#  @brief Exhaustive small-divisor scans over primitive integer vectors
#

import logging
from functools import lru_cache
from math import comb

import numpy as np

from pynekhoro.config import SMALL_DIVISOR_BUDGET
from pynekhoro.errors import BudgetExceededError, DegenerateGradientError, InvalidArgumentError
from pynekhoro.lattice import canonical_generator, vector_gcd

logger = logging.getLogger(__name__)


def lattice_point_count(n, K):
    """! Number of integer vectors k in Z^n with |k|_1 <= K, the origin included

    \f[ \#\{k : |k|_1 \leq K\} = \sum_{i=0}^{\min(n,K)} 2^i \binom{n}{i} \binom{K}{i} \f]
    """
    return sum(2**i * comb(n, i) * comb(K, i) for i in range(min(n, K) + 1))


def _l1_ball(n, K):
    """Integer vectors with |k|_1 <= K in lexicographic order."""
    if n == 1:
        for k in range(-K, K + 1):
            yield (k,)
        return
    for k0 in range(-K, K + 1):
        for rest in _l1_ball(n - 1, K - abs(k0)):
            yield (k0,) + rest


@lru_cache(maxsize=32)
def _primitive_table(n, K):
    vectors = [
        k
        for k in _l1_ball(n, K)
        if any(k) and canonical_generator(k) == k and vector_gcd(k) == 1
    ]
    table = np.array(vectors, dtype=np.int64).reshape(len(vectors), n)
    table.setflags(write=False)
    return table


def primitive_vectors(n, K, budget=None):
    """! Canonical primitive vectors with 0 < |k|_1 <= K, in lexicographic order
    @param n dimension
    @param K l1 bound, K >= 1
    @param budget maximal number of lattice points visited, SMALL_DIVISOR_BUDGET by default
    @returns read-only int64 array of shape (count, n), one row per +-k pair
    """
    if n < 1 or K < 1:
        raise InvalidArgumentError(f"need n >= 1 and K >= 1, got n = {n}, K = {K}")
    if budget is None:
        budget = SMALL_DIVISOR_BUDGET
    visited = lattice_point_count(n, K)
    if visited > budget:
        raise BudgetExceededError(
            f"the scan over |k|_1 <= {K} in dimension {n} visits {visited} vectors, budget is {budget}"
        )
    return _primitive_table(int(n), int(K))


def small_divisor(omega, K, budget=None):
    """! Minimiser of |k.omega| over canonical primitive k with 0 < |k|_1 <= K
    @param omega non-zero real n-vector
    @param K l1 bound
    @returns (k, value) with k a tuple; ties go to the lexicographically smallest k
    """
    omega = np.asarray(omega, dtype=np.float64).ravel()
    if not np.any(omega):
        raise DegenerateGradientError("small divisors of the zero frequency are all zero")
    table = primitive_vectors(omega.size, K, budget)
    values = np.abs(table @ omega)
    i = int(np.argmin(values))
    return tuple(int(x) for x in table[i]), float(values[i])


def in_RK(omega, K, tol, budget=None):
    """! The vector k with |k|_1 <= K making omega resonant, or None
    @param omega non-zero real n-vector
    @param K l1 bound
    @param tol relative tolerance: resonant iff min |k.omega| <= tol |omega|_inf
    """
    k, value = small_divisor(omega, K, budget)
    if value <= tol * np.abs(np.asarray(omega, dtype=np.float64)).max():
        return k
    return None
