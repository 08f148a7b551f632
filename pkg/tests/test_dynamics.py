import numpy as np
import pytest

from pynekhoro.errors import IntegrationFailure, InvalidArgumentError, PreconditionError
from pynekhoro.problems import (
    BaseProblem,
    Coefficient,
    IntegrableModel,
    NearIntegrableProblem,
    Perturbation,
    SystemSpec,
    canonical_benchmark,
    pendulum,
)
from pynekhoro.solvers import (
    State,
    Trajectory,
    TrajectorySolver,
    escape_time,
    integrate,
    step_midpoint,
    step_tangent,
    vector_field,
)


class ConstantDrift(BaseProblem):
    """theta' = 0, I' = c on one degree of freedom."""

    def __init__(self, c, R=1.0):
        super().__init__(1, R)
        self.c = c

    def f(self, t, y, *args):
        return np.array([0.0, self.c])

    def jacobian(self, t, y, *args):
        return np.zeros((2, 2))


def _coupled_spec(epsilon=0.05):
    h = IntegrableModel([[1.0, 0.2], [0.2, 2.0]], omega0=[0.1, 0.0])
    f = Perturbation(
        2,
        [
            ([1, -1], Coefficient(0.5, linear=[0.3, -0.2]), 0.2),
            ([0, 1], Coefficient(1.0, quadratic=[[0.4, 0.1], [0.1, 0.2]]), 0.0),
        ],
    )
    return SystemSpec(h, f, epsilon, 2.0)


def _circle_distance(a, b):
    d = np.abs(np.asarray(a) - np.asarray(b)) % 1.0
    return np.minimum(d, 1.0 - d)


def test_state_wraps_angles():
    s = State([1.25, -0.25], [0.1, 0.2], 3.0)
    np.testing.assert_allclose(s.theta, [0.25, 0.75])
    assert s.t == 3.0
    assert State.from_vector(s.to_vector(), 3.0) == s
    with pytest.raises(InvalidArgumentError):
        State([0.0], [np.inf])
    with pytest.raises(InvalidArgumentError):
        State([0.0, 0.1], [0.2])


def test_vector_field_integrable():
    spec = canonical_benchmark(0.0)
    state = State([0.1, 0.2, 0.3], [0.3, -0.2, 0.1])
    dtheta, dI = vector_field(spec, state)
    np.testing.assert_array_equal(dI, 0.0)
    np.testing.assert_array_equal(dtheta, spec.h.frequency(state.I))


def test_vector_field_pendulum():
    eps = 0.3
    state = State([0.15], [0.4])
    dtheta, dI = vector_field(pendulum(eps), state)
    assert dtheta[0] == pytest.approx(0.4)
    assert dI[0] == pytest.approx(2 * np.pi * eps * np.sin(2 * np.pi * 0.15))


def test_vector_field_matches_hamiltonian_derivatives():
    spec = _coupled_spec()
    theta = np.array([0.37, 0.81])
    I = np.array([0.3, -0.6])
    dtheta, dI = vector_field(spec, State(theta, I))
    h = 1e-6
    for ii in range(2):
        e = np.zeros(2)
        e[ii] = h
        H_I = (spec.hamiltonian(theta, I + e) - spec.hamiltonian(theta, I - e)) / (2 * h)
        H_theta = (spec.hamiltonian(theta + e, I) - spec.hamiltonian(theta - e, I)) / (2 * h)
        assert dtheta[ii] == pytest.approx(H_I, abs=1e-8)
        assert dI[ii] == pytest.approx(-H_theta, abs=1e-8)


def test_problem_jacobian_matches_finite_differences():
    problem = NearIntegrableProblem(_coupled_spec())
    y = np.array([0.37, 0.81, 0.3, -0.6])
    J = problem.jacobian(0.0, y)
    h = 1e-6
    for jj in range(4):
        e = np.zeros(4)
        e[jj] = h
        fd = (problem.f(0.0, y + e) - problem.f(0.0, y - e)) / (2 * h)
        np.testing.assert_allclose(J[:, jj], fd, atol=1e-7)


def test_integrable_step_keeps_actions():
    spec = canonical_benchmark(0.0)
    state = State([0.1, 0.95, 0.5], [0.3, 0.4, -0.2])
    new = step_midpoint(spec, state, {"step": 0.1})
    np.testing.assert_array_equal(new.I, state.I)
    expected = (state.theta + 0.1 * spec.h.frequency(state.I)) % 1.0
    assert _circle_distance(new.theta, expected).max() <= 1e-15
    assert new.t == pytest.approx(0.1)


def test_step_is_reversible():
    spec = _coupled_spec(0.2)
    config = {"step": 0.05, "newton_tol": 1e-13}
    state = State([0.3, 0.6], [0.4, -0.3])
    forward = step_midpoint(spec, state, config)
    back = step_midpoint(spec, forward, dict(config, step=-0.05))
    assert _circle_distance(back.theta, state.theta).max() <= 10 * 1e-13
    assert np.abs(back.I - state.I).max() <= 10 * 1e-13


def test_tangent_map_is_symplectic():
    state, M = step_tangent(pendulum(0.1), State([0.3], [0.5]), {"step": 0.05})
    assert np.linalg.det(M) == pytest.approx(1.0, abs=1e-12)

    n = 3
    _, M = step_tangent(canonical_benchmark(0.05), State([0.1, 0.5, 0.7], [0.2, -0.1, 0.3]), {"step": 0.02})
    J = np.block([[np.zeros((n, n)), np.eye(n)], [-np.eye(n), np.zeros((n, n))]])
    np.testing.assert_allclose(M.T @ J @ M, J, atol=1e-12)


def _shoelace(vertices):
    x, y = np.asarray(vertices).T
    return 0.5 * (np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


@pytest.mark.slow
def test_tangent_polygon_keeps_its_area():
    # a hexagon in the tangent plane, carried by the linearised step maps
    angles = 2 * np.pi * np.arange(6) / 6
    polygon = np.column_stack((np.cos(angles), 0.5 * np.sin(angles)))
    area0 = _shoelace(polygon)
    spec = pendulum(0.1)
    state = State([0.3], [0.5])
    config = {"step": 0.05}
    for _ in range(10_000):
        state, M = step_tangent(spec, state, config)
        polygon = polygon @ M.T
    assert state.t == pytest.approx(500.0)
    assert _shoelace(polygon) == pytest.approx(area0, rel=1e-8)


def test_integrable_orbit():
    spec = SystemSpec(IntegrableModel(np.eye(2)), Perturbation(2), 0.0, 1.0)
    theta0 = np.array([0.1, 0.2])
    I0 = np.array([0.3, 0.4])
    traj = integrate(spec, State(theta0, I0), 10.0, {"step": 1e-2, "sample_stride": 10})
    assert traj.max_drift <= 1e-12
    assert traj.exit[1] == "max-time"
    final = traj.sample(len(traj) - 1)
    assert final.t == pytest.approx(10.0)
    assert _circle_distance(final.theta, theta0 + final.t * I0).max() <= 1e-9
    assert escape_time(spec, State(theta0, I0), 1e-3, 10.0) is None


def test_benchmark_without_perturbation_keeps_actions():
    traj = integrate(canonical_benchmark(0.0), State([0.1, 0.2, 0.3], [0.2, -0.1, 0.05]), 50.0)
    assert traj.max_drift <= 1e-12
    assert traj.max_h_error <= 1e-12


def test_samples_and_energy_log():
    traj = integrate(pendulum(1e-3), State([0.25], [0.1]), 1.0, {"step": 0.1, "sample_stride": 3})
    # samples at steps 0, 3, 6, 9 and the final step 10
    assert len(traj) == 5
    assert np.all(np.diff(traj.times) > 0)
    assert len(traj.energy_log) == len(traj)
    assert traj.energy_log[0][1] == pytest.approx(0.005)
    assert traj.nsteps == 10


def test_domain_exit():
    problem = ConstantDrift(0.5)
    traj = integrate(problem, State([0.0], [0.0]), 10.0, {"step": 1e-2, "sample_stride": 10})
    t_exit, reason = traj.exit
    assert reason == "domain-exit"
    assert abs(t_exit - 2.0) <= 1e-2
    assert np.abs(traj.actions[-1]).max() >= 1.0
    assert traj.escape_time(0.3) == pytest.approx(0.6, abs=0.1)


def test_initial_state_outside_domain():
    with pytest.raises(PreconditionError):
        integrate(pendulum(0.1, R=1.0), State([0.0], [1.5]), 1.0)
    with pytest.raises(PreconditionError):
        escape_time(pendulum(0.1), State([0.0], [0.1]), 0.0, 1.0)


def test_integration_failure_carries_partial_orbit():
    config = {"step": 0.5, "fixed_point_iters": 0, "newton_max_iters": 1}
    with pytest.raises(IntegrationFailure) as info:
        integrate(pendulum(0.5), State([0.3], [0.3]), 5.0, config)
    assert isinstance(info.value.partial, Trajectory)
    assert len(info.value.partial) >= 1
    assert "residual" in info.value.diagnostics


def test_solver_class():
    solver = TrajectorySolver(NearIntegrableProblem(pendulum(1e-2)), {"t_max": 1.0}, integrator_params={"step": 0.1})
    traj = solver.compute(State([0.0], [0.2]))
    assert solver.is_successful()
    assert traj.nsteps == 10
    with pytest.raises(InvalidArgumentError):
        TrajectorySolver(NearIntegrableProblem(pendulum(1e-2)), {"t_max": 1.0}, integrator_params={"step": 0.0})


def test_determinism():
    spec = canonical_benchmark(1e-2)
    initial = State([0.1, 0.2, 0.3], [0.2, -0.1, 0.05])
    a = integrate(spec, initial, 20.0, {"sample_stride": 7})
    b = integrate(spec, initial, 20.0, {"sample_stride": 7})
    np.testing.assert_array_equal(a.times, b.times)
    np.testing.assert_array_equal(a.thetas, b.thetas)
    np.testing.assert_array_equal(a.actions, b.actions)
    assert a.max_drift == b.max_drift
    assert a.max_energy_error == b.max_energy_error


def test_csv_round_trip(tmp_path):
    traj = integrate(canonical_benchmark(1e-2), State([0.1, 0.2, 0.3], [0.2, -0.1, 0.05]), 5.0, {"sample_stride": 10})
    path = str(tmp_path / "traj.csv")
    traj.write_csv(path)
    with open(path) as fh:
        assert fh.readline().strip() == "t,theta_1,theta_2,theta_3,I_1,I_2,I_3,H"
    back = Trajectory.read_csv(path)
    np.testing.assert_array_equal(back.times, traj.times)
    np.testing.assert_array_equal(back.thetas, traj.thetas)
    np.testing.assert_array_equal(back.actions, traj.actions)
    np.testing.assert_array_equal(back.energies, traj.energies)


def test_energy_error_is_second_order():
    initial = State([0.25], [0.1])
    coarse = integrate(pendulum(1e-3), initial, 100.0, {"step": 1e-2})
    fine = integrate(pendulum(1e-3), initial, 100.0, {"step": 5e-3})
    ratio = coarse.max_energy_error / fine.max_energy_error
    assert 3.5 <= ratio <= 4.5


@pytest.mark.slow
def test_pendulum_energy_drift_over_long_run():
    traj = integrate(pendulum(1e-3), State([0.25], [0.1]), 1000.0, {"step": 1e-2, "sample_stride": 1000})
    assert traj.nsteps == 100000
    assert traj.max_energy_error <= 1e-8


@pytest.mark.slow
def test_escape_time_is_stable_under_step_halving():
    spec = canonical_benchmark(1e-2)
    initial = State([0.1, 0.2, 0.3], [0.2, -0.1, 0.05])
    coarse = escape_time(spec, initial, 0.1, 200.0, {"step": 1e-2})
    fine = escape_time(spec, initial, 0.1, 200.0, {"step": 5e-3})
    if coarse is None or fine is None:
        assert coarse is None and fine is None
    else:
        assert abs(coarse - fine) <= 0.01 * coarse
