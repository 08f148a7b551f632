from .checked import l1_norm, row_norm, determinant, unimodular_inverse
from .euclid import (
    extended_gcd_bounded,
    is_primitive,
    canonical_generator,
    primitive_part,
    vector_gcd,
)
from .completion import UnimodularCompletion, unimodular_completion, module_constants
from .smith import SmithDecomposition, smith_normal_form
from .resonance_module import ResonanceModule, module_volume
from .rational import rational_in_interval, farey_fractions
