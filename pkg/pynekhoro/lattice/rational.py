## @file rational.py
#  @brief Rational numbers of small height in a prescribed interval
#

from fractions import Fraction
from math import ceil, floor, gcd

from pynekhoro.errors import InvalidArgumentError, PreconditionError


def _exact(x):
    """Exact rational value of a float, int or Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def rational_in_interval(x, l):
    """! A fraction p/q in [x - l/2, x + l/2] with |p| + q < 6/l
    @param x centre of the interval
    @param l length of the interval, 0 < l <= 2, interval contained in [-1, 1]
    @returns (p, q) in lowest terms, q >= 1

    q is the smallest integer not below 1/l and p is [qx] or [qx] + 1
    depending on whether the fractional part of qx is at most 1/2, so that
    |x - p/q| <= 1/(2q) <= l/2. The arithmetic is exact on the binary
    values of x and l.
    """
    xf = _exact(x)
    lf = _exact(l)
    if lf <= 0:
        raise InvalidArgumentError(f"interval length must be positive, got {l}")
    lo, hi = xf - lf / 2, xf + lf / 2
    if lo < -1 or hi > 1:
        raise PreconditionError(f"[{float(lo)}, {float(hi)}] is not contained in [-1, 1]")

    q = ceil(1 / lf)
    qx = q * xf
    p = floor(qx)
    if qx - p > Fraction(1, 2):
        p += 1

    g = gcd(p, q)
    p, q = p // g, q // g

    assert lo <= Fraction(p, q) <= hi
    assert abs(p) + q < 6 / lf
    return p, q


def farey_fractions(order):
    """! Reduced fractions p/q in [-1, 1] with q >= 1 and |p| + q < order
    @param order positive integer bound on the height |p| + q
    @returns sorted list of (p, q) pairs, sorted by the value p/q
    """
    out = []
    for q in range(1, max(order, 1)):
        for p in range(-q, q + 1):
            if abs(p) + q < order and gcd(p, q) == 1:
                out.append((p, q))
    out.sort(key=lambda pq: Fraction(pq[0], pq[1]))
    return out
