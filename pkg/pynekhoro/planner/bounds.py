## @file bounds.py
#  @brief Radius and time factors of the resonant normal-form estimates
#
# Floating evaluation of the closed forms; the exponents themselves come from
# exponents.py in exact arithmetic.
#

import numpy as np

from pynekhoro.errors import InvalidArgumentError, PreconditionError
from .exponents import AnalyticPlan, GevreyPlan


def _check_rank(n, r):
    if r == n:
        raise InvalidArgumentError("a module of full rank n leaves no slow directions")
    if not 0 <= r <= n - 1:
        raise InvalidArgumentError(f"rank must lie in [0, n-1], got r = {r} for n = {n}")


def _check_eps(eps):
    if eps < 0:
        raise InvalidArgumentError(f"eps must be non-negative, got {eps}")


def poschel_bounds(eps, volume_sq, n, r):
    """! Analytic estimate around a resonance module of rank r and squared volume |Lambda|^2
    @returns (radius_factor, time_log_factor) = ((eps |Lambda|^2)^{1/(2(n-r))}, its inverse)
    """
    _check_rank(n, r)
    _check_eps(eps)
    if volume_sq < 1:
        raise PreconditionError(f"a non-trivial module has |Lambda|^2 >= 1, got {volume_sq}")
    if eps == 0:
        return 0.0, np.inf
    x = eps * volume_sq
    e = 1.0 / (2 * (n - r))
    return x**e, x ** (-e)


def marco_sauzin_bounds(eps, c_up, c_prime_up, n, r, alpha):
    """! Gevrey estimate around a module with constants c = |A^{-1}|, c' = |A|
    @returns (c^{3/2} c' eps^{1/(2(n-r))}, (c^{5(n-r)} eps)^{-1/(2 alpha (n-r))})
    """
    _check_rank(n, r)
    _check_eps(eps)
    if alpha < 1:
        raise PreconditionError(f"alpha must be at least 1, got {alpha}")
    if c_up < 1 or c_prime_up < 1:
        raise PreconditionError("module constants of a non-trivial module are at least 1")
    if eps == 0:
        return 0.0, np.inf
    d = n - r
    radius = c_up**1.5 * c_prime_up * eps ** (1.0 / (2 * d))
    time = (c_up ** (5 * d) * eps) ** (-1.0 / (2 * alpha * d))
    return radius, time


def lemma_bounds_analytic(eps, K, n):
    """! Rank-one analytic factors with |Lambda|^2 <= K^2: ((eps K^2)^{1/(2(n-1))}, inverse)"""
    return poschel_bounds(eps, float(K) ** 2, n, 1)


def lemma_bounds_gevrey(eps, K, n, alpha):
    """! Rank-one Gevrey factors after substituting c <= n! K^{n-1}, c' <= K

    \f[ \left(\varepsilon K^{(n-1)(3n-1)}\right)^{\frac{1}{2(n-1)}}, \quad
        \left(\varepsilon K^{5(n-1)^2}\right)^{-\frac{1}{2\alpha(n-1)}} \f]
    """
    _check_rank(n, 1)
    _check_eps(eps)
    if eps == 0:
        return 0.0, np.inf
    K = float(K)
    radius = (eps * K ** ((n - 1) * (3 * n - 1))) ** (1.0 / (2 * (n - 1)))
    time = (eps * K ** (5 * (n - 1) ** 2)) ** (-1.0 / (2 * alpha * (n - 1)))
    return radius, time


def theorem_estimates(eps, plan):
    """! Confinement radius and time log-factor predicted by a plan at eps
    @param eps 0 < eps < 1
    @param plan AnalyticPlan or GevreyPlan
    @returns dict with radius_exponent, radius, time_exponent and time_log_factor = eps^{-a_gamma}
    """
    if not 0 < eps < 1:
        raise InvalidArgumentError(f"eps must lie in (0, 1), got {eps}")
    if isinstance(plan, AnalyticPlan):
        radius_exponent = plan.delta * (plan.n - 1)
    elif isinstance(plan, GevreyPlan):
        radius_exponent = min(plan.gamma, plan.b_gamma)
    else:
        raise InvalidArgumentError("expected an AnalyticPlan or a GevreyPlan")
    return {
        "radius_exponent": radius_exponent,
        "radius": float(eps) ** float(radius_exponent),
        "time_exponent": plan.a_gamma,
        "time_log_factor": float(eps) ** (-float(plan.a_gamma)),
    }
