## @file completion.py
#  @brief Unimodular completion of a primitive vector with row norms bounded by K
#
# For a primitive k with |k| <= K the completion A has first row k,
# |det A| = 1 and every row of l1 norm at most K. It is built by induction
# on the dimension: split off k_n, complete k_* / d with d = gcd(k_*),
# pad the rows with a zero column and close the matrix with the row
#
#     ( -v k_* / d , u ),   u d + v k_n = 1,
#
# whose cofactor expansion along the last column gives
# det A = det A' (u d + v k_n) = det A'. With the Euclidean bounds
# |u| <= |k_n|, |v| <= d the last row has norm at most |k_*| + |k_n| = |k|.
#

import logging

import numpy as np

from pynekhoro.errors import InvalidArgumentError, PreconditionError
from .checked import (
    as_int_vector,
    check,
    determinant,
    l1_norm,
    row_norm,
    unimodular_inverse,
)
from .euclid import extended_gcd_bounded, is_primitive, vector_gcd

logger = logging.getLogger(__name__)


class UnimodularCompletion:
    def __init__(self, matrix, inverse):
        """! Result of unimodular_completion
        @param matrix the n x n integer matrix A, list of rows
        @param inverse its exact integer inverse, list of rows
        """
        ## A as an int64 numpy array
        self.matrix = np.array(matrix, dtype=np.int64)
        ## A^{-1} as an int64 numpy array
        self.inverse = np.array(inverse, dtype=np.int64)
        ## |A|, the maximal l1 norm of a row
        self.row_norm = row_norm(matrix)
        ## |A^{-1}|
        self.inverse_norm = row_norm(inverse)
        ## det A, +1 or -1
        self.det = determinant(matrix)

    def to_dict(self):
        return {
            "matrix": self.matrix.tolist(),
            "inverse": self.inverse.tolist(),
            "row_norm": int(self.row_norm),
            "inverse_norm": int(self.inverse_norm),
            "det": int(self.det),
        }


def _complete(k):
    """! Recursive completion of a primitive vector, returns a list of rows"""
    n = len(k)
    if n == 1:
        return [[k[0]]]

    k_star = list(k[:-1])
    if all(ki == 0 for ki in k_star):
        # k = (0, ..., 0, +-1): complete the cyclic shift (k_2, ..., k_n, k_1)
        # and rotate the columns back, which keeps the first row equal to k
        shifted = _complete(tuple(k[1:]) + (k[0],))
        return [[row[-1]] + row[:-1] for row in shifted]

    kn = k[-1]
    d = vector_gcd(k_star)
    inner = _complete(tuple(ki // d for ki in k_star))
    _, u, v = extended_gcd_bounded(d, kn)

    rows = [list(k)]
    for row in inner[1:]:
        rows.append(list(row) + [0])
    rows.append([check(-v * (ki // d)) for ki in k_star] + [u])
    return rows


def unimodular_completion(k, K):
    """! Completes a primitive vector into a unimodular matrix with small rows
    @param k primitive integer vector, |k| <= K
    @param K positive integer bound on the l1 norm of each row
    @returns an UnimodularCompletion

    Postconditions (checked at runtime): first row k, |det A| = 1,
    |A| <= K and |A^{-1}| <= n! K^{n-1}.
    """
    k = as_int_vector(k)
    K = int(K)
    if K < 1:
        raise InvalidArgumentError(f"K must be a positive integer, got {K}")
    if not is_primitive(k):
        raise InvalidArgumentError(f"{k} is not primitive")
    if l1_norm(k) > K:
        raise PreconditionError(f"|{k}| = {l1_norm(k)} exceeds K = {K}")

    rows = _complete(k)
    inverse = unimodular_inverse(rows)
    result = UnimodularCompletion(rows, inverse)

    n = len(k)
    if tuple(rows[0]) != k or abs(result.det) != 1 or result.row_norm > K:
        raise AssertionError(f"completion of {k} violates its postconditions: {rows}")
    if result.inverse_norm > _factorial(n) * K ** (n - 1):
        raise AssertionError(f"inverse of the completion of {k} is too large")

    logger.debug("completed %s into %s", k, rows)
    return result


def module_constants(k, K):
    """! Upper bounds on the constants c_Lambda and c'_Lambda of the module generated by k
    @param k primitive integer vector, |k| <= K
    @param K positive integer
    @returns (c_upper, c_prime_upper) = (|A^{-1}|, |A|) for the completion A of k
    """
    completion = unimodular_completion(k, K)
    return int(completion.inverse_norm), int(completion.row_norm)


def _factorial(n):
    out = 1
    for ii in range(2, n + 1):
        out *= ii
    return out
