import random
from fractions import Fraction
from math import factorial

import mpmath
import numpy as np
import pytest

from pynekhoro.errors import InvalidArgumentError, PreconditionError
from pynekhoro.planner import (
    analytic_exponents,
    as_rational,
    check_threshold_gevrey,
    check_thresholds_analytic,
    choose_K,
    confinement_radius,
    gevrey_exponents,
    lemma_bounds_analytic,
    lemma_bounds_gevrey,
    marco_sauzin_bounds,
    poschel_bounds,
    rational_str,
    theorem_estimates,
)


def test_as_rational():
    assert as_rational("1/6") == Fraction(1, 6)
    assert as_rational(1e-6) == Fraction(1, 1000000)
    assert as_rational(3) == Fraction(3)
    assert rational_str(Fraction(11, 72)) == "11/72"
    assert rational_str(Fraction(4, 2)) == "2"
    for bad in (True, "one third", float("nan"), None):
        with pytest.raises(InvalidArgumentError):
            as_rational(bad)


def test_analytic_recovers_the_classical_exponent():
    plan = analytic_exponents(3, Fraction(1, 6))
    assert plan.a_gamma == Fraction(1, 6)
    assert plan.delta == Fraction(1, 12)


def test_analytic_four_degrees_of_freedom():
    plan = analytic_exponents(4, "1/24")
    assert plan.a_gamma == Fraction(11, 72)
    assert plan.delta == Fraction(1, 72)
    assert plan.delta <= Fraction(1, 24)
    doc = plan.to_dict()
    assert doc["a_gamma"] == "11/72"
    assert doc["placeholder"] is True


def test_analytic_small_gamma_limit():
    plan = analytic_exponents(3, Fraction(1, 10**9))
    assert abs(plan.a_gamma - Fraction(1, 4)) < Fraction(1, 10**8)
    assert plan.a_gamma < Fraction(1, 4)


def test_analytic_identities_over_random_gamma():
    rng = random.Random(1)
    for _ in range(500):
        n = rng.randint(2, 8)
        q = rng.randint(2 * n, 10**6)
        gamma = Fraction(rng.randint(1, q // (2 * n)), q)
        plan = analytic_exponents(n, gamma)
        assert plan.a_gamma == Fraction(1, 2 * (n - 1)) - plan.delta
        assert gamma <= plan.a_gamma
        assert Fraction(1, 2 * n) <= plan.a_gamma < Fraction(1, 2 * (n - 1))
        assert 0 < plan.delta <= Fraction(1, 2 * n * (n - 1))


def test_analytic_preconditions():
    with pytest.raises(PreconditionError):
        analytic_exponents(3, 0)
    with pytest.raises(PreconditionError):
        analytic_exponents(3, Fraction(1, 5))
    with pytest.raises(PreconditionError):
        analytic_exponents(1, Fraction(1, 4))


def test_gevrey_endpoint():
    plan = gevrey_exponents(3, 1, Fraction(1, 20))
    assert plan.a_gamma == 0
    assert plan.delta == Fraction(1, 4)
    assert plan.b_gamma == Fraction(1, 20)


def test_gevrey_exact_values():
    plan = gevrey_exponents(3, 2, "1/40")
    assert plan.a_gamma == Fraction(1, 16)
    assert plan.b_gamma == Fraction(3, 20)
    assert plan.gamma_le_b
    assert plan.to_dict()["b_gamma"] == "3/20"


def test_gevrey_unscaled_delta():
    plan = gevrey_exponents(3, 2, "1/40")
    assert plan.delta == Fraction(1, 16)
    assert plan.delta_unscaled == Fraction(1, 8)
    doc = plan.to_dict()
    assert doc["delta"] == "1/16"
    assert doc["delta_unscaled"] == "1/8"
    endpoint = gevrey_exponents(3, 1, Fraction(1, 20))
    assert endpoint.delta_unscaled == endpoint.delta == Fraction(1, 4)


def test_gevrey_two_degrees_of_freedom():
    assert gevrey_exponents(2, 1, Fraction(1, 7)).gamma_le_b
    assert not gevrey_exponents(2, 1, Fraction(1, 6)).gamma_le_b


def test_gevrey_identities_over_random_gamma():
    rng = random.Random(2)
    for _ in range(500):
        n = rng.randint(2, 8)
        alpha = Fraction(rng.randint(2, 8), 2)
        bound = 5 * (n - 1) ** 2
        q = rng.randint(bound, 10**6)
        gamma = Fraction(rng.randint(1, q // bound), q)
        plan = gevrey_exponents(n, alpha, gamma)
        assert plan.a_gamma == 1 / (2 * alpha * (n - 1)) - plan.delta
        assert plan.a_gamma >= 0
        assert Fraction(n - 2, 5 * (n - 1) ** 2) <= plan.b_gamma <= Fraction(1, 2 * (n - 1))


def test_gevrey_preconditions():
    with pytest.raises(PreconditionError):
        gevrey_exponents(3, Fraction(1, 2), Fraction(1, 40))
    with pytest.raises(PreconditionError):
        gevrey_exponents(3, 1, Fraction(1, 19))


def test_analytic_thresholds():
    for name, ok, margin in check_thresholds_analytic(0, 50, 3):
        assert ok and margin == 0.0

    conditions = {name: (ok, margin) for name, ok, margin in check_thresholds_analytic(1e-6, 10, 3)}
    assert conditions["smalln1"] == (False, 1.0)
    assert conditions["smalln2_eps"][0]

    conditions = check_thresholds_analytic(1e-3, 1, 3, {"C": 12, "rho0": 1})
    K_condition = [c for c in conditions if c[0] == "smalln2_K"][0]
    assert K_condition == ("smalln2_K", True, 0.5)

    with pytest.raises(InvalidArgumentError):
        check_thresholds_analytic(-1e-3, 10, 3)


def test_gevrey_threshold():
    assert check_threshold_gevrey(0, 10, 3) == (True, 0.0)
    assert check_threshold_gevrey(2.0**-20, 2, 3) == (False, 1.0)
    ok, margin = check_threshold_gevrey(1e-3, 3, 2)
    assert ok
    assert margin == pytest.approx(0.243)


def test_plan_with_eps():
    plan = analytic_exponents(3, "1/6", eps=1e-6)
    assert plan.K == pytest.approx(10.0)
    doc = plan.to_dict()
    assert [t["name"] for t in doc["thresholds"]] == ["smalln1", "smalln2_K", "smalln2_eps"]

    plan = gevrey_exponents(3, 2, "1/40", eps=1e-4)
    assert plan.to_dict()["thresholds"][0]["name"] == "smalln1_gevrey"


def test_choose_K():
    assert choose_K(0.5, 0.5, 3.0, Fraction(1, 6)) == 3.0
    assert choose_K(1.0 / 2**6, 1.0, 3.0, Fraction(1, 6)) == pytest.approx(6.0)
    assert choose_K(1e-4, 1e-3, 1.0, Fraction(1, 4)) == pytest.approx(10**0.25)
    with pytest.raises(PreconditionError):
        choose_K(2.0, 1.0, 1.0, Fraction(1, 6))


def test_confinement_radius():
    assert confinement_radius(3, 2) == 1.0
    with pytest.raises(InvalidArgumentError):
        confinement_radius(0)


def test_poschel_bounds():
    assert poschel_bounds(0.0, 1.0, 3, 1)[0] == 0.0
    radius, time = poschel_bounds(1e-4, 1.0, 3, 1)
    assert radius == pytest.approx(0.1)
    assert time == pytest.approx(10.0)
    with pytest.raises(InvalidArgumentError):
        poschel_bounds(1e-4, 1.0, 3, 3)
    with pytest.raises(PreconditionError):
        poschel_bounds(1e-4, 0.5, 3, 1)
    assert lemma_bounds_analytic(1e-4, 1, 3) == poschel_bounds(1e-4, 1.0, 3, 1)


def test_marco_sauzin_bounds():
    assert marco_sauzin_bounds(0.0, 8, 2, 3, 1, 1)[0] == 0.0
    radius, _ = marco_sauzin_bounds(1e-6, 8, 2, 3, 1, 1)
    assert radius == pytest.approx(1.4311, abs=1e-4)
    mpmath.mp.dps = 30
    oracle = mpmath.mpf(8) ** 1.5 * 2 * mpmath.mpf("1e-6") ** mpmath.mpf("0.25")
    assert radius == pytest.approx(float(oracle), rel=1e-13)
    with pytest.raises(InvalidArgumentError):
        marco_sauzin_bounds(1e-6, 8, 2, 3, 3, 1)


EPS_GRID = [1e-12, 1e-9, 1e-6, 1e-4, 1e-2, 0.5]


@pytest.mark.parametrize("n,r,volume_sq", [(2, 1, 1.0), (3, 1, 4.0), (4, 2, 9.0)])
def test_poschel_bounds_monotone_in_eps(n, r, volume_sq):
    radii, times = zip(*(poschel_bounds(eps, volume_sq, n, r) for eps in EPS_GRID))
    assert all(a < b for a, b in zip(radii, radii[1:]))
    assert all(a > b for a, b in zip(times, times[1:]))


@pytest.mark.parametrize("n,r,alpha", [(2, 1, 1.0), (3, 1, 2.0), (4, 2, 1.5)])
def test_marco_sauzin_bounds_monotone_in_eps(n, r, alpha):
    radii, times = zip(*(marco_sauzin_bounds(eps, 6, 2, n, r, alpha) for eps in EPS_GRID))
    assert all(a < b for a, b in zip(radii, radii[1:]))
    assert all(a > b for a, b in zip(times, times[1:]))


@pytest.mark.parametrize("n,K,alpha", [(2, 3, 1.0), (3, 2, 2.0), (4, 5, 1.5)])
def test_gevrey_lemma_factors_follow_from_module_constants(n, K, alpha):
    eps = 1e-9
    c = factorial(n) * K ** (n - 1)
    radius, time = marco_sauzin_bounds(eps, c, K, n, 1, alpha)
    lemma_radius, lemma_time = lemma_bounds_gevrey(eps, K, n, alpha)
    assert radius / lemma_radius == pytest.approx(factorial(n) ** 1.5, rel=1e-10)
    assert lemma_time / time == pytest.approx(factorial(n) ** (5 / (2 * alpha)), rel=1e-10)


def test_theorem_estimates():
    est = theorem_estimates(1e-6, analytic_exponents(3, "1/6"))
    assert est["radius_exponent"] == Fraction(1, 6)
    assert est["radius"] == pytest.approx(0.1)
    assert est["time_log_factor"] == pytest.approx(10.0)

    est = theorem_estimates(1e-4, gevrey_exponents(3, 2, "1/40"))
    assert est["radius_exponent"] == Fraction(1, 40)
    assert est["time_exponent"] == Fraction(1, 16)
    assert est["time_log_factor"] == pytest.approx(10 ** 0.25)

    with pytest.raises(InvalidArgumentError):
        theorem_estimates(1.0, analytic_exponents(3, "1/6"))
    assert np.isfinite(theorem_estimates(0.5, gevrey_exponents(2, 1, "1/6"))["radius"])
