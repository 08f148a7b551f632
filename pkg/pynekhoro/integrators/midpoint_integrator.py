## @file midpoint_integrator.py
#  @brief Contains the class of the implicit midpoint integrator
#

import logging

import numpy as np

from pynekhoro.config import INTEGRATOR_DEFAULTS
from pynekhoro.errors import IntegrationFailure
from .base_integrator import BaseIntegrator

logger = logging.getLogger(__name__)


## MidpointIntegrator advances y' = F(t, y) with the implicit midpoint rule
#
# \f[ y_{n+1} = y_n + h F\left(t_n + \frac{h}{2}, \frac{y_n + y_{n+1}}{2}\right), \f]
#
# which is symplectic, symmetric and of order two for Hamiltonian F.
# The implicit equation is solved by fixed-point iteration, with a Newton
# fallback when the iteration does not contract fast enough.
#
# See __init__ for how to set up the integrator
class MidpointIntegrator(BaseIntegrator):
    def __init__(self, params):
        """! Sets up the ODE solver
        @param params dict, the parameters used in the ODE solver

        <code>params['ode']</code> -- callable f: rhs=f(t,x,*args), must provide

        <code>params['jac']=None</code> -- callable jac(t,x,*args) = dF/dx, needed by the Newton fallback and the tangent map

        <code>params['args']=()</code> -- the argment that will be used to call f

        <code>params['step']=1e-2</code> -- the fixed step size

        <code>params['newton_tol']=1e-13</code> -- tolerance on the sup norm of the implicit-equation residual

        <code>params['newton_max_iters']=50</code> -- the maximum number of Newton iterations

        <code>params['fixed_point_iters']=20</code> -- the fixed-point iterations tried before Newton
        """

        if "ode" not in params.keys():
            raise ValueError("Please specify the ODE to solve for the Integrator class")
        else:
            self.rhs = params["ode"]

        if "jac" not in params.keys():
            params["jac"] = None
        self.jac = params["jac"]

        if "args" not in params.keys():
            params["args"] = ()
        self.args = params["args"]

        for key, value in INTEGRATOR_DEFAULTS.items():
            if key not in params.keys():
                params[key] = value

        if params["step"] == 0:
            raise ValueError("The step size must not be zero")
        if params["newton_tol"] < 1e-15:
            raise ValueError("newton_tol below the machine-precision scale cannot be reached")

        self.newton_tol = params["newton_tol"]
        self.newton_max_iters = params["newton_max_iters"]
        self.fixed_point_iters = params["fixed_point_iters"]

        ## the number of Newton fallbacks so far, for diagnostics
        self.newton_fallbacks = 0

        super().__init__(params)

    def set_initial_value(self, t, x):
        """! Sets up the initial value for the ODE solver
        @param t the start of time
        @param x the start of coordinates
        """
        x = np.array(x, dtype=np.float64)
        self.rhs(t, x, *self.args)
        super().set_initial_value(t, x)

    def _residual(self, x_new, t_mid, h):
        return x_new - self.x - h * self.rhs(t_mid, 0.5 * (self.x + x_new), *self.args)

    def step(self, h=None):
        """! Advances the solution by one midpoint step
        @param h the step size, params['step'] if None; negative h steps backwards
        @returns the new value of x
        """
        if h is None:
            h = self._params["step"]
        x_old = self.x
        t_mid = self.t + 0.5 * h
        scale = max(1.0, np.abs(x_old).max(initial=0.0))

        # fixed-point iteration from the explicit Euler predictor
        x_new = x_old + h * self.rhs(self.t, x_old, *self.args)
        for _ in range(self.fixed_point_iters):
            x_next = x_old + h * self.rhs(t_mid, 0.5 * (x_old + x_new), *self.args)
            change = np.abs(x_next - x_new).max()
            x_new = x_next
            if change <= self.newton_tol * scale:
                break
        residual = np.abs(self._residual(x_new, t_mid, h)).max()

        if residual > self.newton_tol * scale:
            x_new, residual = self._newton(x_new, t_mid, h, scale)

        self.x = x_new
        self.t = self.t + h
        return self.x

    def _newton(self, x_new, t_mid, h, scale):
        """Newton iteration on G(x) = x - x_n - h F((x_n + x)/2)."""
        if self.jac is None:
            raise IntegrationFailure(
                "fixed-point iteration did not converge and no Jacobian is available",
                diagnostics={"t": self.t, "step": h},
            )
        self.newton_fallbacks += 1
        n = x_new.size
        residual = np.inf
        for it in range(self.newton_max_iters):
            G = self._residual(x_new, t_mid, h)
            residual = np.abs(G).max()
            if residual <= self.newton_tol * scale:
                return x_new, residual
            J = np.eye(n) - 0.5 * h * self.jac(t_mid, 0.5 * (self.x + x_new), *self.args)
            x_new = x_new - np.linalg.solve(J, G)
        G = self._residual(x_new, t_mid, h)
        residual = np.abs(G).max()
        if residual <= self.newton_tol * scale:
            return x_new, residual
        raise IntegrationFailure(
            "implicit midpoint step did not converge",
            diagnostics={
                "t": self.t,
                "step": h,
                "residual": float(residual),
                "iterations": self.newton_max_iters,
            },
        )

    def tangent(self, x_old, x_new, h=None):
        """! Jacobian of the one-step map x_old -> x_new
        @param x_old the state before the step
        @param x_new the state after the step
        @param h the step size used
        @returns (I - h/2 DF)^{-1} (I + h/2 DF), DF taken at the midpoint
        """
        if self.jac is None:
            raise ValueError("The tangent map needs params['jac']")
        if h is None:
            h = self._params["step"]
        n = x_old.size
        t_mid = self.t - 0.5 * h
        DF = self.jac(t_mid, 0.5 * (x_old + x_new), *self.args)
        return np.linalg.solve(np.eye(n) - 0.5 * h * DF, np.eye(n) + 0.5 * h * DF)
