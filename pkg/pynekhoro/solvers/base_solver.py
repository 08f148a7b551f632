## @file base_solver.py
#  @brief Base class of the orbit solvers
#

from pynekhoro.errors import InvalidArgumentError
from pynekhoro.integrators import BaseIntegrator, MidpointIntegrator
from pynekhoro.problems import BaseProblem


## Couples a problem with an integrator
#
# The solver hands the vector field and its Jacobian of the problem to a new
# integrator instance. Derived classes implement `compute` and set
# `successful` once it returns normally.
class BaseSolver:
    def __init__(self, problem, params=dict(), integrator=None, integrator_params=dict()):
        """! Sets up the solver
        @param problem a pynekhoro.problems.BaseProblem
        @param params dict, the parameters of the solver
        @param integrator a BaseIntegrator subclass, MidpointIntegrator if None
        @param integrator_params dict, passed to the integrator together with the vector field
        """
        ## True once compute has finished without error
        self.successful = False

        if not isinstance(problem, BaseProblem):
            raise InvalidArgumentError(f"{type(problem).__name__} is not a BaseProblem")
        integrator = MidpointIntegrator if integrator is None else integrator
        if not (isinstance(integrator, type) and issubclass(integrator, BaseIntegrator)):
            raise InvalidArgumentError(f"{integrator!r} is not a BaseIntegrator subclass")

        integrator_params = dict(integrator_params)
        integrator_params["ode"] = problem.f
        integrator_params.setdefault("jac", problem.jacobian)

        self._params = dict(params)
        self._problem = problem
        self._integrator = integrator(integrator_params)

    def compute(self, *args, **kwargs):
        raise NotImplementedError("solvers have to implement compute")

    def is_successful(self):
        """! True if the last computation completed"""
        return self.successful
