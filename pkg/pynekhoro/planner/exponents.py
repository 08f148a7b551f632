## @file exponents.py
#  @brief Exact exponent calculus of the analytic and Gevrey stability estimates
#
# With \f$K = K_0(\varepsilon_0/\varepsilon)^\gamma\f$ the rank-one lemmas give
# a confinement radius \f$\max(\varepsilon^\gamma, \varepsilon^{b_\gamma})\f$ and a
# time \f$\exp(\varepsilon^{-a_\gamma})\f$. All exponents are kept as Fractions.
#

import logging
from fractions import Fraction

from pynekhoro.config import PLANNER_CONSTANTS, fill_defaults
from pynekhoro.errors import InvalidArgumentError, PreconditionError

logger = logging.getLogger(__name__)


def as_rational(x):
    """! Exact rational value of an int, Fraction, "p/q" string or float

    Floats are read through their shortest decimal representation, so that
    1e-6 becomes exactly 1/1000000.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InvalidArgumentError("booleans are not numbers here")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise InvalidArgumentError(f"cannot read {x!r} as a rational number")
    if isinstance(x, float):
        if x != x or x in (float("inf"), float("-inf")):
            raise InvalidArgumentError(f"{x} is not a finite number")
        return Fraction(repr(x))
    raise InvalidArgumentError(f"cannot read {x!r} as a rational number")


def rational_str(x):
    """! "p/q" form of a Fraction, "p" when q = 1"""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def choose_K(eps, eps0, K0, gamma):
    """! The cut-off K = K0 (eps0 / eps)^gamma
    @param eps 0 < eps <= eps0
    @returns K as a float
    """
    if not eps > 0:
        raise PreconditionError(f"eps must be positive, got {eps}")
    if eps > eps0:
        raise PreconditionError(f"eps = {eps} exceeds eps0 = {eps0}")
    if eps == eps0:
        return float(K0)
    return float(K0) * (float(eps0) / float(eps)) ** float(gamma)


class AnalyticPlan:
    def __init__(self, n, gamma, constants):
        self.n = n
        self.gamma = gamma
        ## delta = gamma / (n - 1)
        self.delta = gamma / (n - 1)
        ## a_gamma = (1 - 2 gamma) / (2 (n - 1))
        self.a_gamma = (1 - 2 * gamma) / (2 * (n - 1))
        self.constants = dict(constants)
        self.K0 = self.constants["K0"]
        self.eps0 = self.constants["eps0"]
        ## list of (name, satisfied, margin), filled for a given eps
        self.thresholds = []
        self.eps = None
        self.K = None

    @property
    def kind(self):
        return "analytic"

    def to_dict(self):
        out = {
            "type": "analytic",
            "n": self.n,
            "gamma": rational_str(self.gamma),
            "delta": rational_str(self.delta),
            "a_gamma": rational_str(self.a_gamma),
            "K0": self.K0,
            "eps0": self.eps0,
            "constants": self.constants,
            "placeholder": True,
        }
        if self.eps is not None:
            out["eps"] = self.eps
            out["K"] = self.K
            out["thresholds"] = [
                {"name": name, "satisfied": ok, "margin": margin}
                for name, ok, margin in self.thresholds
            ]
        return out


class GevreyPlan:
    def __init__(self, n, alpha, gamma, constants):
        self.n = n
        self.alpha = alpha
        self.gamma = gamma
        ## delta = 5 gamma (n - 1) / (2 alpha), so that a_gamma = 1/(2 alpha (n-1)) - delta
        self.delta = 5 * gamma * (n - 1) / (2 * alpha)
        ## the same quantity stated without the 1/alpha scaling, (5/2) gamma (n - 1); equal to delta at alpha = 1
        self.delta_unscaled = 5 * gamma * (n - 1) / 2
        ## a_gamma = (1 - 5 gamma (n-1)^2) / (2 alpha (n - 1))
        self.a_gamma = (1 - 5 * gamma * (n - 1) ** 2) / (2 * alpha * (n - 1))
        ## b_gamma = (1 - gamma (n-1)(3n-1)) / (2 (n - 1))
        self.b_gamma = (1 - gamma * (n - 1) * (3 * n - 1)) / (2 * (n - 1))
        self.gamma_le_b = gamma <= self.b_gamma
        self.constants = dict(constants)
        self.K0 = self.constants["K0"]
        self.eps0 = self.constants["eps0"]
        self.threshold = None
        self.eps = None
        self.K = None

    @property
    def kind(self):
        return "gevrey"

    def to_dict(self):
        out = {
            "type": "gevrey",
            "n": self.n,
            "alpha": rational_str(self.alpha),
            "gamma": rational_str(self.gamma),
            "delta": rational_str(self.delta),
            "delta_unscaled": rational_str(self.delta_unscaled),
            "a_gamma": rational_str(self.a_gamma),
            "b_gamma": rational_str(self.b_gamma),
            "gamma_le_b_gamma": self.gamma_le_b,
            "K0": self.K0,
            "eps0": self.eps0,
            "constants": self.constants,
            "placeholder": True,
        }
        if self.eps is not None:
            ok, margin = self.threshold
            out["eps"] = self.eps
            out["K"] = self.K
            out["thresholds"] = [{"name": "smalln1_gevrey", "satisfied": ok, "margin": margin}]
        return out


def _check_n(n):
    if int(n) != n or n < 2:
        raise PreconditionError(f"the exponent calculus needs n >= 2, got {n}")
    return int(n)


def analytic_exponents(n, gamma, eps=None, constants=None):
    """! Exponents of the analytic estimate for a cut-off exponent gamma
    @param n number of degrees of freedom, n >= 2
    @param gamma rational, 0 < gamma <= 1/(2n)
    @param eps if given, K is chosen for eps and the thresholds are evaluated
    @param constants dict of stable constants, PLANNER_CONSTANTS by default
    @returns AnalyticPlan
    """
    from .thresholds import check_thresholds_analytic

    n = _check_n(n)
    gamma = as_rational(gamma)
    if not 0 < gamma <= Fraction(1, 2 * n):
        raise PreconditionError(f"gamma must lie in (0, 1/(2n)] = (0, 1/{2 * n}], got {gamma}")
    constants = fill_defaults(constants, PLANNER_CONSTANTS)
    plan = AnalyticPlan(n, gamma, constants)

    if plan.a_gamma != Fraction(1, 2 * (n - 1)) - plan.delta:
        raise ArithmeticError("a_gamma != 1/(2(n-1)) - delta")
    if not gamma <= plan.a_gamma:
        raise ArithmeticError("gamma > a_gamma")
    if not Fraction(1, 2 * n) <= plan.a_gamma < Fraction(1, 2 * (n - 1)):
        raise ArithmeticError("a_gamma outside [1/(2n), 1/(2(n-1)))")

    if eps is not None:
        plan.eps = float(eps)
        plan.K = choose_K(float(eps), constants["eps0"], constants["K0"], gamma)
        plan.thresholds = check_thresholds_analytic(eps, plan.K, n, constants)
    logger.debug("stable constants are placeholders: %s", constants)
    return plan


def gevrey_exponents(n, alpha, gamma, eps=None, constants=None):
    """! Exponents of the Gevrey estimate
    @param n number of degrees of freedom, n >= 2
    @param alpha Gevrey exponent, alpha >= 1
    @param gamma rational, 0 < gamma <= 1/(5(n-1)^2)
    @returns GevreyPlan; gamma_le_b is False when gamma > b_gamma, which happens for n = 2 and gamma > 1/7
    """
    from .thresholds import check_threshold_gevrey

    n = _check_n(n)
    alpha = as_rational(alpha)
    gamma = as_rational(gamma)
    if alpha < 1:
        raise PreconditionError(f"alpha must be at least 1, got {alpha}")
    if not 0 < gamma <= Fraction(1, 5 * (n - 1) ** 2):
        raise PreconditionError(
            f"gamma must lie in (0, 1/(5(n-1)^2)] = (0, 1/{5 * (n - 1) ** 2}], got {gamma}"
        )
    constants = fill_defaults(constants, PLANNER_CONSTANTS)
    plan = GevreyPlan(n, alpha, gamma, constants)

    if plan.a_gamma != 1 / (2 * alpha * (n - 1)) - plan.delta:
        raise ArithmeticError("a_gamma != 1/(2 alpha (n-1)) - delta")
    if not Fraction(n - 2, 5 * (n - 1) ** 2) <= plan.b_gamma <= Fraction(1, 2 * (n - 1)):
        raise ArithmeticError("b_gamma outside [(n-2)/(5(n-1)^2), 1/(2(n-1))]")
    if not plan.gamma_le_b:
        logger.warning("gamma = %s exceeds b_gamma = %s for n = %d", gamma, plan.b_gamma, n)

    if eps is not None:
        plan.eps = float(eps)
        plan.K = choose_K(float(eps), constants["eps0"], constants["K0"], gamma)
        plan.threshold = check_threshold_gevrey(eps, plan.K, n, constants["c_smalln1_gevrey"])
    return plan
