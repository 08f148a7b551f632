from .base_solver import BaseSolver
from .trajectory import (
    State,
    Trajectory,
    TrajectorySolver,
    vector_field,
    step_midpoint,
    step_tangent,
    integrate,
    escape_time,
)
