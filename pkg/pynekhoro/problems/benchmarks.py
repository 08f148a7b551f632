## @file benchmarks.py
#  @brief Ready-made systems used by the tests and the experiment harness
#

import numpy as np

from .integrable import IntegrableModel
from .perturbation import Perturbation
from .system import Regularity, SystemSpec


def pendulum(epsilon, R=10.0):
    """! The pendulum H = I^2/2 + eps cos(2 pi theta), n = 1
    @param epsilon perturbation size
    @param R action domain radius
    """
    h = IntegrableModel([[1.0]])
    f = Perturbation(1, [([1], 1.0, 0.0)])
    return SystemSpec(h, f, epsilon, R, Regularity("analytic", s=1.0))


def canonical_benchmark(epsilon, R=1.0):
    """! The convex n = 3 benchmark of the experiment harness
    @param epsilon perturbation size
    @param R action domain radius

    \f[ H = \frac{1}{2}|I|^2 + \varepsilon \left[\cos 2\pi\theta_1 + \cos 2\pi(\theta_1-\theta_2) + \cos 2\pi(\theta_2-\theta_3)\right] \f]
    with nearest-neighbour angle couplings; m = M = 1.
    """
    h = IntegrableModel(np.eye(3))
    f = Perturbation(
        3,
        [
            ([1, 0, 0], 1.0, 0.0),
            ([1, -1, 0], 1.0, 0.0),
            ([0, 1, -1], 1.0, 0.0),
        ],
    )
    return SystemSpec(h, f, epsilon, R, Regularity("analytic", s=1.0), m=1.0, M=1.0)
