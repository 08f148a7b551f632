## @file trajectory.py
#  @brief Trajectories of H = h + eps f, their recording, and escape times
#

import logging

import numpy as np

from pynekhoro.config import INTEGRATOR_DEFAULTS, fill_defaults
from pynekhoro.errors import IntegrationFailure, InvalidArgumentError, PreconditionError
from pynekhoro.integrators import MidpointIntegrator
from pynekhoro.problems import BaseProblem, NearIntegrableProblem, SystemSpec
from .base_solver import BaseSolver

logger = logging.getLogger(__name__)

DOMAIN_EXIT = "domain-exit"
MAX_TIME = "max-time"


class State:
    def __init__(self, theta, I, t=0.0):
        """! A point (theta, I) of T^n x R^n at time t
        @param theta angles, stored mod 1 in [0, 1)
        @param I actions, must be finite
        @param t time
        """
        theta = np.array(theta, dtype=np.float64).ravel()
        I = np.array(I, dtype=np.float64).ravel()
        if theta.size != I.size:
            raise InvalidArgumentError("theta and I have different dimensions")
        if not np.all(np.isfinite(I)) or not np.all(np.isfinite(theta)):
            raise InvalidArgumentError("state components must be finite")
        theta = theta % 1.0
        theta[theta >= 1.0] = 0.0
        theta.setflags(write=False)
        I.setflags(write=False)
        self.theta = theta
        self.I = I
        self.t = float(t)

    @property
    def n(self):
        return self.I.size

    def to_vector(self):
        """! The ODE state y = (theta, I)"""
        return np.concatenate((self.theta, self.I))

    @classmethod
    def from_vector(cls, y, t=0.0):
        n = y.size // 2
        return cls(y[:n], y[n:], t)

    def __eq__(self, other):
        return (
            isinstance(other, State)
            and self.t == other.t
            and np.array_equal(self.theta, other.theta)
            and np.array_equal(self.I, other.I)
        )

    def __repr__(self):
        return f"State(theta={self.theta.tolist()}, I={self.I.tolist()}, t={self.t})"


## The recorded output of a TrajectorySolver
#
# Samples are taken every `sample_stride` steps, plus the initial and the final
# state. Alongside them the solver keeps running maxima over every step:
#
#   - max_drift -- \f$\max_t |I(t) - I_0|_\infty\f$
#   - max_energy_error -- \f$\max_t |H(t) - H(0)|\f$, the measured integrator drift
#   - max_h_error -- \f$\max_t |h(I(t)) - h(I_0)|\f$
#
# The arrays are read-only.
class Trajectory:
    def __init__(
        self,
        times,
        thetas,
        actions,
        energies,
        exit=None,
        max_drift=None,
        max_energy_error=None,
        max_h_error=None,
        nsteps=0,
    ):
        self.times = np.array(times, dtype=np.float64)
        self.thetas = np.array(thetas, dtype=np.float64).reshape(self.times.size, -1)
        self.actions = np.array(actions, dtype=np.float64).reshape(self.times.size, -1)
        self.energies = np.array(energies, dtype=np.float64)
        for arr in (self.times, self.thetas, self.actions, self.energies):
            arr.setflags(write=False)
        if np.any(np.diff(self.times) <= 0):
            raise InvalidArgumentError("sample times must be strictly increasing")
        ## (time, reason) with reason "domain-exit" or "max-time"
        self.exit = exit
        self.nsteps = nsteps

        drift = self.sample_drift()
        self.max_drift = float(drift.max(initial=0.0)) if max_drift is None else float(max_drift)
        if max_energy_error is None:
            err = np.abs(self.energies - self.energies[0]) if self.energies.size else np.zeros(0)
            max_energy_error = float(np.nan_to_num(err).max(initial=0.0))
        self.max_energy_error = float(max_energy_error)
        self.max_h_error = None if max_h_error is None else float(max_h_error)

    @property
    def n(self):
        return self.actions.shape[1]

    def __len__(self):
        return self.times.size

    def sample(self, i):
        """! The i-th sample as a State"""
        return State(self.thetas[i], self.actions[i], self.times[i])

    def states(self):
        for i in range(len(self)):
            yield self.sample(i)

    @property
    def energy_log(self):
        """! List of (t, H) aligned with the samples"""
        return list(zip(self.times.tolist(), self.energies.tolist()))

    def sample_drift(self):
        """! |I(t) - I_0|_inf at every sample"""
        if self.times.size == 0:
            return np.zeros(0)
        return np.abs(self.actions - self.actions[0]).max(axis=1)

    def escape_time(self, rho):
        """! First time the sampled sup-norm drift reaches rho
        @param rho the escape threshold, rho > 0
        @returns the time, linearly interpolated between the two enclosing samples, or None
        """
        if rho <= 0:
            raise PreconditionError(f"rho must be positive, got {rho}")
        drift = self.sample_drift()
        hits = np.nonzero(drift >= rho)[0]
        if hits.size == 0:
            return None
        i = hits[0]
        if i == 0:
            return float(self.times[0])
        d0, d1 = drift[i - 1], drift[i]
        t0, t1 = self.times[i - 1], self.times[i]
        return float(t0 + (rho - d0) / (d1 - d0) * (t1 - t0))

    def frequencies(self, model):
        """! (t, omega) pairs of the frequency map along the samples"""
        return [(t, model.frequency(I)) for t, I in zip(self.times, self.actions)]

    def write_csv(self, path):
        """! Writes the samples as CSV with columns t, theta_1..theta_n, I_1..I_n, H"""
        n = self.n
        header = ",".join(
            ["t"] + [f"theta_{i + 1}" for i in range(n)] + [f"I_{i + 1}" for i in range(n)] + ["H"]
        )
        data = np.column_stack((self.times, self.thetas, self.actions, self.energies))
        np.savetxt(path, data, fmt="%.17g", delimiter=",", header=header, comments="")

    @classmethod
    def read_csv(cls, path):
        """! Reads a trajectory written by write_csv"""
        with open(path, "r") as fh:
            header = fh.readline().strip().split(",")
        if not header or header[0] != "t" or header[-1] != "H" or (len(header) - 2) % 2:
            raise InvalidArgumentError(f"{path} is not a trajectory CSV file")
        n = (len(header) - 2) // 2
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        if data.size == 0:
            data = np.zeros((0, 2 * n + 2))
        return cls(data[:, 0], data[:, 1 : n + 1], data[:, n + 1 : 2 * n + 1], data[:, -1])


## Integrates one orbit of a problem with fixed steps and records it
#
# To use the class:
#
#     solver = TrajectorySolver(NearIntegrableProblem(spec), {"t_max": 100.0}, integrator_params={"step": 1e-2})
#     traj = solver.compute(State(theta0, I0))
#
# The orbit stops at t_max or as soon as \f$|I|_\infty \geq R\f$.
class TrajectorySolver(BaseSolver):
    def __init__(self, problem, params=dict(), integrator=None, integrator_params=dict()):
        """! Sets up the trajectory solver
        @param problem must inherit pynekhoro.problems.BaseProblem
        @param params dict, the parameters for the solver
        @param integrator the integrator class, MidpointIntegrator by default
        @param integrator_params dict, the parameters passed to the integrator

        <code>params['t_max']=1.0</code> -- the final time

        <code>params['R']=problem.R</code> -- radius of the action domain in the sup norm
        """
        params = dict(params)
        if "t_max" not in params.keys():
            params["t_max"] = 1.0
        if "R" not in params.keys():
            params["R"] = problem.R
        if params["t_max"] < 0:
            raise InvalidArgumentError("t_max must be non-negative")

        integrator_params = fill_defaults(integrator_params, INTEGRATOR_DEFAULTS)
        if integrator_params["step"] <= 0:
            raise InvalidArgumentError("the step size must be positive")
        if int(integrator_params["sample_stride"]) < 1:
            raise InvalidArgumentError("sample_stride must be at least 1")

        super().__init__(problem, params, integrator, integrator_params)
        self.t_max = params["t_max"]
        self.R = params["R"]
        self.step = integrator_params["step"]
        self.stride = int(integrator_params["sample_stride"])

    def compute(self, initial):
        """! Integrates from the initial State
        @param initial the State at time initial.t
        @returns a Trajectory
        """
        self.successful = False
        problem = self._problem
        n = problem.n
        if initial.n != n:
            raise InvalidArgumentError(f"initial state has dimension {initial.n}, problem has {n}")
        if not np.abs(initial.I).max() < self.R:
            raise PreconditionError("the initial action is outside the domain B(0, R)")

        y0 = initial.to_vector()
        I0 = initial.I
        H0 = problem.hamiltonian(y0)
        h0 = problem.integrable_energy(y0)
        H0 = np.nan if H0 is None else H0

        times, thetas, actions, energies = [initial.t], [initial.theta], [I0], [H0]
        max_drift = 0.0
        max_energy_error = 0.0
        max_h_error = None if h0 is None else 0.0

        nsteps = int(np.ceil(self.t_max / self.step - 1e-9))
        self._integrator.set_initial_value(initial.t, y0)
        exit = (initial.t + nsteps * self.step, MAX_TIME)
        y = y0

        for i in range(1, nsteps + 1):
            try:
                y = self._integrator.step(self.step)
            except IntegrationFailure as err:
                err.partial = Trajectory(
                    times, thetas, actions, energies, None, max_drift, max_energy_error, max_h_error, i - 1
                )
                logger.warning("orbit failed at t = %g: %s", times[-1], err)
                raise
            y = problem.wrap(y)
            self._integrator.x = y
            t = initial.t + i * self.step
            self._integrator.t = t

            I = y[n:]
            max_drift = max(max_drift, float(np.abs(I - I0).max()))
            H = problem.hamiltonian(y)
            if H is not None:
                max_energy_error = max(max_energy_error, abs(H - H0))
            if h0 is not None:
                max_h_error = max(max_h_error, abs(problem.integrable_energy(y) - h0))

            outside = np.abs(I).max() >= self.R
            if i % self.stride == 0 or i == nsteps or outside:
                times.append(t)
                thetas.append(y[:n])
                actions.append(I)
                energies.append(np.nan if H is None else H)
            if outside:
                exit = (t, DOMAIN_EXIT)
                nsteps = i
                logger.info("orbit left the domain at t = %g", t)
                break

        self.successful = True
        return Trajectory(
            times, thetas, actions, energies, exit, max_drift, max_energy_error, max_h_error, nsteps
        )


def _as_problem(spec):
    if isinstance(spec, SystemSpec):
        return NearIntegrableProblem(spec)
    if isinstance(spec, BaseProblem):
        return spec
    raise InvalidArgumentError("expected a SystemSpec or a BaseProblem")


def vector_field(spec, state):
    """! Hamilton's equations at a state
    @param spec the SystemSpec
    @param state the State
    @returns (dtheta, dI)
    """
    return NearIntegrableProblem(spec).vector_field(state.theta, state.I)


def step_midpoint(spec, state, config=None):
    """! One implicit midpoint step, theta wrapped mod 1
    @param spec a SystemSpec or a BaseProblem
    @param state the State to advance
    @param config integrator params dict; a negative 'step' integrates backwards
    @returns the new State
    """
    problem = _as_problem(spec)
    config = fill_defaults(config, INTEGRATOR_DEFAULTS)
    config["ode"] = problem.f
    config["jac"] = problem.jacobian
    integrator = MidpointIntegrator(config)
    integrator.set_initial_value(state.t, state.to_vector())
    y = integrator.step(config["step"])
    return State.from_vector(y, state.t + config["step"])


def step_tangent(spec, state, config=None):
    """! One midpoint step together with the Jacobian of the step map
    @returns (new State, 2n x 2n matrix)
    """
    problem = _as_problem(spec)
    config = fill_defaults(config, INTEGRATOR_DEFAULTS)
    config["ode"] = problem.f
    config["jac"] = problem.jacobian
    integrator = MidpointIntegrator(config)
    y0 = state.to_vector()
    integrator.set_initial_value(state.t, y0)
    y1 = integrator.step(config["step"]).copy()
    M = integrator.tangent(y0, y1, config["step"])
    return State.from_vector(y1, state.t + config["step"]), M


def integrate(spec, initial, t_max, config=None):
    """! Integrates from initial until t_max or domain exit
    @param spec a SystemSpec or a BaseProblem
    @param initial the initial State, with I in B(0, R)
    @param t_max the final time
    @param config integrator params dict
    @returns a Trajectory
    """
    solver = TrajectorySolver(_as_problem(spec), {"t_max": t_max}, integrator_params=config or {})
    return solver.compute(initial)


def escape_time(spec, initial, rho, t_max, config=None):
    """! First sampled time with |I(t) - I_0|_inf >= rho, or None before t_max"""
    if rho <= 0:
        raise PreconditionError(f"rho must be positive, got {rho}")
    return integrate(spec, initial, t_max, config).escape_time(rho)
