## @file base_integrator.py
#  @brief Base class of the one-step maps used to advance Hamiltonian orbits
#

import numpy as np


## Base class of the fixed-step integrators
#
# An integrator owns the current point (t, x) of an orbit of y' = F(t, y) and
# replaces it by its image under one step of the method. Orbits are always
# advanced with whole steps, so the sample times are exact multiples of the step.
#
# Derived classes implement
#
#   - step -- map (t, x) to (t + h, x_{n+1})
#   - tangent -- Jacobian of the last step map, for symplecticity checks
#   .
#
# and read their parameters from the params dict given to __init__.
class BaseIntegrator:
    def __init__(self, params):
        """! Keeps a copy of the integrator parameters
        @param params dict, the parameters of the method
        """
        self._params = dict(params)
        self.t = None
        self.x = None

    def set_initial_value(self, t, x):
        """! Places the integrator at the point x of the phase space at time t"""
        self.t = float(t)
        self.x = np.array(x, dtype=np.float64)

    def step(self, h=None):
        """! Advances (t, x) by one step
        @param h the step size, params['step'] if None
        @returns the new x
        """
        raise NotImplementedError("integrators have to implement step")

    def tangent(self, x_old, x_new, h=None):
        """! The derivative of the step map at x_old, given its image x_new"""
        raise NotImplementedError("integrators have to implement tangent")
