## @file thresholds.py
#  @brief Smallness conditions on (eps, K) required by the rank-one lemmas
#
# Conditions are strict: a value equal to its limit is not satisfied. The
# margin is value / limit, so a condition holds iff its margin is below 1.
#

from pynekhoro.config import PLANNER_CONSTANTS, fill_defaults
from pynekhoro.errors import InvalidArgumentError
from .exponents import as_rational


def _condition(name, value, limit):
    return (name, bool(value < limit), float(value / limit))


def _check_eps_K(eps, K):
    eps, K = as_rational(eps), as_rational(K)
    if eps < 0:
        raise InvalidArgumentError(f"eps must be non-negative, got {eps}")
    if K < 1:
        raise InvalidArgumentError(f"K must be at least 1, got {K}")
    return eps, K


def check_thresholds_analytic(eps, K, n, constants=None):
    """! The analytic smallness conditions
    @param eps perturbation size, eps >= 0
    @param K cut-off, K >= 1
    @param n number of degrees of freedom
    @param constants dict with c_smalln1, C and rho0
    @returns list of (name, satisfied, margin):

      - smalln1 -- eps K^{2n} < c_smalln1
      - smalln2_K -- 1/K < C rho0 / 6
      - smalln2_eps -- eps K < 3

    For eps = 0 nothing moves and every condition is reported satisfied with margin 0.
    """
    eps, K = _check_eps_K(eps, K)
    c = fill_defaults(constants, PLANNER_CONSTANTS)
    if eps == 0:
        return [("smalln1", True, 0.0), ("smalln2_K", True, 0.0), ("smalln2_eps", True, 0.0)]
    return [
        _condition("smalln1", eps * K ** (2 * n), as_rational(c["c_smalln1"])),
        _condition("smalln2_K", 1 / K, as_rational(c["C"]) * as_rational(c["rho0"]) / 6),
        _condition("smalln2_eps", eps * K, 3),
    ]


def check_threshold_gevrey(eps, K, n, c=1):
    """! The Gevrey smallness condition eps K^{5(n-1)^2} < c
    @returns (satisfied, margin)
    """
    eps, K = _check_eps_K(eps, K)
    if eps == 0:
        return True, 0.0
    _, ok, margin = _condition("smalln1_gevrey", eps * K ** (5 * (n - 1) ** 2), as_rational(c))
    return ok, margin


def confinement_radius(K, C=1):
    """! Radius 6 / (C K) of confinement near a non-resonant frequency"""
    K, C = as_rational(K), as_rational(C)
    if K <= 0 or C <= 0:
        raise InvalidArgumentError("K and C must be positive")
    return float(6 / (C * K))
