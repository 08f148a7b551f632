## @file integrable.py
#  @brief Quadratic integrable Hamiltonians h(I) = 1/2 I^t Q I + omega0 . I
#

import numpy as np

from pynekhoro.errors import InvalidArgumentError


## The integrable part of a near-integrable system
#
# \f[ h(I) = \frac{1}{2} I^T Q I + \omega_0 \cdot I, \quad \nabla h(I) = Q I + \omega_0, \quad \nabla^2 h = Q, \f]
# and all third derivatives vanish, so the constants of the quasi-convexity
# and derivative-bound conditions are computable in closed form.
#
# To use the class:
#
#     h = IntegrableModel(np.eye(3))
#     omega = h.frequency([0.1, 0.2, 0.3])
#
class IntegrableModel:
    def __init__(self, Q, omega0=None):
        """! Set up the model
        @param Q symmetric n x n real matrix, the constant Hessian
        @param omega0 real n-vector, the frequency at I = 0 (zero by default)
        """
        Q = np.atleast_2d(np.array(Q, dtype=np.float64))
        n = Q.shape[0]
        if Q.shape != (n, n):
            raise InvalidArgumentError(f"Q must be square, got shape {Q.shape}")
        if not np.allclose(Q, Q.T, rtol=0.0, atol=1e-14 * max(1.0, np.abs(Q).max())):
            raise InvalidArgumentError("Q must be symmetric")
        if omega0 is None:
            omega0 = np.zeros(n)
        omega0 = np.array(omega0, dtype=np.float64).reshape(-1)
        if omega0.shape != (n,):
            raise InvalidArgumentError("omega0 must have the dimension of Q")

        ## symmetric Hessian, symmetrised to machine precision
        self.Q = 0.5 * (Q + Q.T)
        self.omega0 = omega0
        self.n = n

    def h(self, I):
        """! Evaluates h(I)"""
        I = np.asarray(I, dtype=np.float64)
        return 0.5 * I @ self.Q @ I + self.omega0 @ I

    def frequency(self, I):
        """! Evaluates the frequency map omega(I) = grad h(I)"""
        return self.Q @ np.asarray(I, dtype=np.float64) + self.omega0

    def hessian(self, I=None):
        """! The constant Hessian of h"""
        return self.Q.copy()

    def to_dict(self):
        return {"Q": self.Q.tolist(), "omega0": self.omega0.tolist()}
