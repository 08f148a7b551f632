from .base_problem import *
from .integrable import IntegrableModel
from .perturbation import Coefficient, Perturbation
from .system import Regularity, SystemSpec, load_system, save_system
from .certificates import qc_certificate, deriv_bound, orthogonal_frame
from .near_integrable import NearIntegrableProblem
from .benchmarks import pendulum, canonical_benchmark
