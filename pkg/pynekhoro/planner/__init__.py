from .exponents import (
    AnalyticPlan,
    GevreyPlan,
    analytic_exponents,
    gevrey_exponents,
    choose_K,
    as_rational,
    rational_str,
)
from .thresholds import check_thresholds_analytic, check_threshold_gevrey, confinement_radius
from .bounds import (
    poschel_bounds,
    marco_sauzin_bounds,
    lemma_bounds_analytic,
    lemma_bounds_gevrey,
    theorem_estimates,
)
