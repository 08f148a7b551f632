## @file fitting.py
#  @brief Power-law fit of the median action drift against eps
#

import numpy as np
from scipy.stats import linregress

from pynekhoro.errors import NotFittableError


def fit_power_law(eps, drift):
    """! Least-squares fit of drift = c eps^a on log-log axes
    @param eps sequence of eps > 0
    @param drift sequence of drift > 0
    @returns (a_fit, c_fit, stderr) with stderr the standard error of the slope
    """
    eps = np.asarray(eps, dtype=np.float64)
    drift = np.asarray(drift, dtype=np.float64)
    usable = (eps > 0) & (drift > 0) & np.isfinite(drift)
    if np.count_nonzero(usable) < 3:
        raise NotFittableError(
            f"need at least 3 points with eps > 0 and non-zero drift, got {np.count_nonzero(usable)}"
        )
    if np.unique(eps[usable]).size < 2:
        raise NotFittableError("all usable points have the same eps")
    fit = linregress(np.log(eps[usable]), np.log(drift[usable]))
    return float(fit.slope), float(np.exp(fit.intercept)), float(fit.stderr)


def fit_confinement(result):
    """! Fits the median max_drift of a ScanResult per eps
    @param result ScanResult
    @returns (a_fit, c_fit, stderr)
    """
    medians = result.median_drifts()
    eps = list(medians.keys())
    return fit_power_law(eps, [medians[e] for e in eps])
