## @file certificates.py
#  @brief Certified constants m (quasi-convexity) and M (derivative bound) of an integrable model
#

import itertools
import logging

import numpy as np
from scipy.linalg import eigh

from pynekhoro.errors import DegenerateGradientError, InvalidArgumentError
from pynekhoro.output_data import OutputData

logger = logging.getLogger(__name__)


def orthogonal_frame(omega):
    """! Orthonormal basis of the hyperplane orthogonal to omega
    @param omega non-zero real n-vector
    @returns n x (n-1) matrix P with orthonormal columns, P^t omega = 0

    Deterministic Gram-Schmidt on the canonical basis, starting from
    omega / |omega| and skipping the index of the largest |omega_j|.
    """
    omega = np.asarray(omega, dtype=np.float64)
    n = omega.size
    jmax = int(np.argmax(np.abs(omega)))
    frame = [omega / np.linalg.norm(omega)]
    for jj in range(n):
        if jj == jmax:
            continue
        v = np.zeros(n)
        v[jj] = 1.0
        for _ in range(2):  # re-orthogonalise once
            for w in frame:
                v = v - (w @ v) * w
        frame.append(v / np.linalg.norm(v))
    return np.array(frame[1:]).T.reshape(n, n - 1)


def _grid(center, radius, grid_per_axis):
    center = np.asarray(center, dtype=np.float64)
    if grid_per_axis == 1:
        axes = [[c] for c in center]
    else:
        axes = [np.linspace(c - radius, c + radius, grid_per_axis) for c in center]
    for point in itertools.product(*axes):
        yield np.array(point)


def qc_certificate(model, center, radius, grid_per_axis):
    """! Sampled lower bound m of the Hessian of h restricted to the orthogonal of grad h
    @param model IntegrableModel
    @param center centre of the sup-norm ball
    @param radius radius of the ball, >= 0
    @param grid_per_axis number of grid points per axis, >= 1
    @returns cert with `cert.successful`, `cert.m_lower`, `cert.grid_per_axis`,
             `cert.npoints`, `cert.label` ("sampled") and `cert.worst_point`

    The certificate fails (successful = False) when a projected eigenvalue is
    not positive. A vanishing gradient raises DegenerateGradientError.
    """
    if grid_per_axis < 1:
        raise InvalidArgumentError("grid_per_axis must be at least 1")
    if radius < 0:
        raise InvalidArgumentError("radius must be non-negative")

    cert = OutputData()
    cert.grid_per_axis = int(grid_per_axis)
    cert.label = "sampled"
    cert.m_lower = np.inf
    cert.worst_point = None
    cert.npoints = 0

    for I in _grid(center, radius, grid_per_axis):
        omega = model.frequency(I)
        if not np.any(omega):
            raise DegenerateGradientError(f"grad h vanishes at I = {I.tolist()}")
        cert.npoints += 1
        if model.n == 1:
            continue  # the orthogonal of omega is trivial
        P = orthogonal_frame(omega)
        eigenvalues = eigh(P.T @ model.hessian(I) @ P, eigvals_only=True)
        if eigenvalues[0] < cert.m_lower:
            cert.m_lower = float(eigenvalues[0])
            cert.worst_point = I.tolist()

    cert.successful = bool(cert.m_lower > 0.0)
    if not cert.successful:
        logger.info("quasi-convexity certificate failed: m_lower = %g", cert.m_lower)
    return cert


def deriv_bound(model, center, radius):
    """! Closed-form bound M on the derivatives of h up to order three on a sup-norm ball
    @param model IntegrableModel
    @param center centre of the ball
    @param radius radius of the ball, >= 0
    @returns M = max(sup |d_i h|, max |Q_ij|, 0)
    """
    center = np.asarray(center, dtype=np.float64)
    Q = model.Q
    # grad h is affine: the sup of |(Q I + omega0)_i| over the cube sits at a vertex
    gradient = np.abs(model.frequency(center)) + radius * np.abs(Q).sum(axis=1)
    return float(max(gradient.max(initial=0.0), np.abs(Q).max(initial=0.0), 0.0))
