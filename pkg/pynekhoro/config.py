## @file config.py
#  @brief Default parameters of the pynekhoro components
#
# Components take plain params dicts and fill the missing keys from these
# tables, so the CLI, the harness and the tests share one set of defaults.
#

import os

## implicit midpoint integrator
INTEGRATOR_DEFAULTS = {
    "step": 1e-2,
    "newton_tol": 1e-13,
    "newton_max_iters": 50,
    "fixed_point_iters": 20,
    "sample_stride": 1,
}

## resonance-crossing detection along sampled frequencies
DETECTION_DEFAULTS = {
    "l": 0.05,
    "window": 50,
    "xtol": 1e-10,
    "residual_tol": 1e-8,
    "max_split_depth": 30,
}

## stable constants the theory leaves unspecified; all placeholders
PLANNER_CONSTANTS = {
    "K0": 1.0,
    "eps0": 1.0,
    "c_smalln1": 1.0,
    "c_smalln1_gevrey": 1.0,
    "C": 1.0,
    "rho0": 1.0,
}

## maximal number of integer vectors a small-divisor scan may visit
SMALL_DIVISOR_BUDGET = 2_000_000

## experiment harness
SCAN_DEFAULTS = {
    "count": 20,
    "seed": 0,
    "t_max": 1e4,
    "rho": 0.1,
    "K_detect": 5,
    "nworkers": None,
}

## environment variable overriding the scan worker count
THREADS_ENV = "NEKHORO_THREADS"


def fill_defaults(params, defaults):
    """! Returns a copy of params with the missing keys taken from defaults
    @param params dict given by the caller, may be None
    @param defaults dict of default values
    @returns a new dict
    """
    params = dict(params or {})
    for key, value in defaults.items():
        if key not in params.keys():
            params[key] = value
    return params


def worker_count(requested=None):
    """! Number of scan workers: NEKHORO_THREADS, then the request, then the cpu count"""
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {env!r}")
    if requested is not None:
        return max(1, int(requested))
    return os.cpu_count() or 1
