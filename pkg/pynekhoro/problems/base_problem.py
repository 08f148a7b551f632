## @file base_problem.py
#  @brief containing base problem class for pynekhoro ODE solvers
#

import numpy as np

## Abstract class that used to drive calculation.
#
# This is an abstract class, should never be used as an instance.
#
# All problems should be a derived type of BaseProblem.
# They should contain the ODEs to solve, as specified by the Hamiltonian system of that problem.
#
# ## Hamilton's equations
# For a Hamiltonian \f$H(\theta, I)\f$ in action-angle coordinates on
# \f$\mathbb{T}^n \times \mathbb{R}^n\f$ the canonical equations are
#
# \f[ \frac{d\theta}{dt} = \frac{\partial H}{\partial I}, \quad \frac{dI}{dt} = -\frac{\partial H}{\partial \theta}. \f]
#
# The state is stored as \f$y = (\theta_1,\dots,\theta_n, I_1,\dots,I_n)\f$.
#
# ## Implementing a Problem class
# All problem classes should inherit the BaseProblem class.
#
#     class SomeProblem(BaseProblem):
#         def __init__(self, params):
#             """some codes to initialize the problem"""
#         def f(self, t, y, *args):
#             """some codes compute the RHS (F) of the ODEs given t and y"""
#         def jacobian(self, t, y, *args):
#             """some codes compute dF/dy given t and y"""
#         def hamiltonian(self, y):
#             """some codes evaluate the conserved energy"""
#
# The member function `f` should be implemented in any case. `jacobian` is
# needed by the Newton fallback of the implicit integrator and by the tangent map.
#
class BaseProblem:
    def __init__(self, n=1, R=np.inf):
        ## the number of degrees of freedom, the ODE has size 2n
        self.n = n
        self.problem_size = 2 * n
        ## radius of the action domain in the sup norm
        self.R = R

    def f(self, t, y, *args):
        """! Returns ODE RHS
        @param t time in ODE
        @param y variables in ODE
        @param *args parameter for the ODE
        @returns the RHS of the ODE
        """
        raise NotImplementedError("A problem class should implement member function f")

    def jacobian(self, t, y, *args):
        """! Returns the derivative of the ODE RHS with respect to y
        @param t time in ODE
        @param y variables in ODE
        @returns the 2n x 2n Jacobian
        """
        raise NotImplementedError(
            "A problem class should implement member function jacobian"
        )

    def hamiltonian(self, y):
        """! Returns the energy, or None if the problem has none"""
        return None

    def integrable_energy(self, y):
        """! Returns the unperturbed energy h(I), or None if the problem has none"""
        return None

    def actions(self, y):
        """! The action part I of the state"""
        return y[self.n :]

    def angles(self, y):
        """! The angle part theta of the state"""
        return y[: self.n]

    def wrap(self, y):
        """! Maps the angles back into [0, 1)
        @param y the state
        @returns a new state with theta mod 1
        """
        out = y.copy()
        out[: self.n] = out[: self.n] % 1.0
        # x % 1.0 can round up to 1.0 for tiny negative x
        out[: self.n][out[: self.n] >= 1.0] = 0.0
        return out
