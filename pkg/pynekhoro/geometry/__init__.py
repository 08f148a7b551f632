from .frequency import FrequencyPoint, frequency_point, psi_h, psi_h_jacobian, psi_h_nondegenerate
from .small_divisors import lattice_point_count, primitive_vectors, small_divisor, in_RK
from .crossings import (
    ResonanceEvent,
    Witness,
    DetectionReport,
    crossing_report,
    detect_crossings,
    merge_events,
    write_events,
)
