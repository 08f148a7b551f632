## @file euclid.py
#  @brief Bounded Bezout coefficients and primitivity of integer vectors
#

from functools import reduce
from math import gcd

from pynekhoro.errors import InvalidArgumentError
from .checked import as_int_vector, check


def extended_gcd_bounded(x, y):
    """! Bezout coefficients with the Euclidean bounds
    @param x integer
    @param y integer, (x, y) != (0, 0)
    @returns (d, u, v) with u*x + v*y = d = gcd(x, y), |u| <= |y|/d and |v| <= |x|/d

    The extended Euclidean algorithm on |x|, |y| keeps both coefficient
    sequences inside these bounds; signs are restored at the end. When one
    argument is zero the other coefficient is +-1 and the bound on it is vacuous.
    """
    x = check(int(x))
    y = check(int(y))
    if x == 0 and y == 0:
        raise InvalidArgumentError("gcd(0, 0) is undefined")

    old_r, r = abs(x), abs(y)
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t

    d = old_r
    u = old_s if x >= 0 else -old_s
    v = old_t if y >= 0 else -old_t
    assert u * x + v * y == d
    return d, u, v


def vector_gcd(k):
    """! gcd of all components of an integer vector (0 for the zero vector)"""
    return reduce(gcd, (abs(ki) for ki in as_int_vector(k)), 0)


def is_primitive(k):
    """! True iff the components of the non-zero vector k are relatively prime
    @param k integer vector
    """
    g = vector_gcd(k)
    if g == 0:
        raise InvalidArgumentError("the zero vector is neither primitive nor not")
    return g == 1


def canonical_generator(k):
    """! The representative of +-k whose first non-zero component is positive
    @param k non-zero integer vector
    @returns tuple of ints
    """
    k = as_int_vector(k)
    for ki in k:
        if ki != 0:
            return k if ki > 0 else tuple(-kj for kj in k)
    raise InvalidArgumentError("the zero vector has no canonical sign")


def primitive_part(k):
    """! k divided by the gcd of its components, in canonical sign"""
    g = vector_gcd(k)
    if g == 0:
        raise InvalidArgumentError("the zero vector has no primitive part")
    return canonical_generator(tuple(ki // g for ki in as_int_vector(k)))
