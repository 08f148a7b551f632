## @file near_integrable.py
#  @brief Hamilton's equations of H = h + eps f as a pynekhoro problem
#

import numpy as np

from .base_problem import BaseProblem


##
# The ODE problem of a SystemSpec,
#
# \f[ \dot\theta = \nabla h(I) + \varepsilon \partial_I f(\theta, I), \quad \dot I = -\varepsilon \partial_\theta f(\theta, I). \f]
#
# To use the class:
#
#     problem = NearIntegrableProblem(spec)
#     dy = problem.f(0.0, y)
#
class NearIntegrableProblem(BaseProblem):
    def __init__(self, spec):
        """! Set up the problem
        @param spec the SystemSpec to integrate
        """
        super().__init__(spec.n, spec.R)
        self.spec = spec

    def vector_field(self, theta, I):
        """! Returns (dtheta/dt, dI/dt) at (theta, I)"""
        spec = self.spec
        dtheta = spec.h.frequency(I)
        if spec.epsilon == 0.0:
            return dtheta, np.zeros(self.n)
        f_theta, f_I = spec.f.gradient(theta, I)
        return dtheta + spec.epsilon * f_I, -spec.epsilon * f_theta

    def f(self, t, y, *args):
        n = self.n
        dtheta, dI = self.vector_field(y[:n], y[n:])
        return np.concatenate((dtheta, dI))

    def jacobian(self, t, y, *args):
        n = self.n
        spec = self.spec
        J = np.zeros((2 * n, 2 * n))
        J[:n, n:] = spec.h.Q
        if spec.epsilon != 0.0:
            f_tt, f_ti, f_ii = spec.f.hessian(y[:n], y[n:])
            eps = spec.epsilon
            J[:n, :n] = eps * f_ti.T
            J[:n, n:] += eps * f_ii
            J[n:, :n] = -eps * f_tt
            J[n:, n:] = -eps * f_ti
        return J

    def hamiltonian(self, y):
        n = self.n
        return self.spec.hamiltonian(y[:n], y[n:])

    def integrable_energy(self, y):
        """! h(I) alone, without the perturbation"""
        return self.spec.h.h(y[self.n :])
