## @file frequency.py
#  @brief The frequency map of an integrable model and its iso-energetic extension
#

import logging

import numpy as np
from scipy.linalg import svdvals

from pynekhoro.errors import DegenerateGradientError, InvalidArgumentError
from pynekhoro.output_data import OutputData

logger = logging.getLogger(__name__)


class FrequencyPoint:
    def __init__(self, omega):
        """! A frequency vector together with its sup-norm index
        @param omega real n-vector
        """
        self.omega = np.array(omega, dtype=np.float64).ravel()
        ## smallest j with |omega_j| = |omega|_inf
        self.sup_index = int(np.argmax(np.abs(self.omega)))

    @property
    def sup_norm(self):
        return float(np.abs(self.omega[self.sup_index]))

    def ratios(self):
        """! omega_i / |omega|_inf, all in [-1, 1]"""
        if self.sup_norm == 0.0:
            raise DegenerateGradientError("the frequency vanishes")
        return self.omega / self.sup_norm


def frequency_point(model, I):
    """! omega = grad h(I) as a FrequencyPoint"""
    return FrequencyPoint(model.frequency(I))


def psi_h(model, I, lam):
    """! The iso-energetic map (I, lambda) -> (h(I), lambda grad h(I))
    @param model IntegrableModel
    @param I action vector
    @param lam scaling lambda > 0
    @returns (energy, scaled frequency)
    """
    if not lam > 0:
        raise InvalidArgumentError(f"lambda must be positive, got {lam}")
    I = np.asarray(I, dtype=np.float64)
    return float(model.h(I)), lam * model.frequency(I)


def psi_h_jacobian(model, I, lam):
    """! The (n+1) x (n+1) matrix of (v, u) -> (omega.v, u omega + lambda Hess(h) v)"""
    I = np.asarray(I, dtype=np.float64)
    omega = model.frequency(I)
    n = omega.size
    J = np.zeros((n + 1, n + 1))
    J[0, :n] = omega
    J[1:, :n] = lam * model.hessian(I)
    J[1:, n] = omega
    return J


def psi_h_nondegenerate(model, I, lam, tol=1e-10):
    """! Checks that the iso-energetic map is a local diffeomorphism at (I, lambda)
    @param model IntegrableModel
    @param I action vector
    @param lam scaling lambda > 0
    @param tol threshold on the smallest singular value
    @returns OutputData with sigma_min, jacobian and successful (sigma_min >= tol)
    """
    if not lam > 0:
        raise InvalidArgumentError(f"lambda must be positive, got {lam}")
    J = psi_h_jacobian(model, I, lam)
    sigma = svdvals(J)

    out = OutputData()
    out.jacobian = J
    out.sigma_min = float(sigma.min())
    out.successful = out.sigma_min >= tol
    if not out.successful:
        logger.debug("iso-energetic map degenerate at I = %s: sigma_min = %g", I, out.sigma_min)
    return out
