"""Degree and exponential-degree filtrations on rational modules over F_p for
the additive group and the upper unitriangular groups U_N, with the supporting
machinery: divided-power distribution families, truncated exponentials of
p-nilpotent matrices, Jordan-type freeness tests at 1-parameter subgroups, and
mock-triviality / Frobenius-kernel freeness checks.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .coalgebras import CoalgebraId, ga_poly, ga_trunc, mat_poly, un_poly, un_trunc
from .comodule import (
    CoalgebraSubspace,
    Comodule,
    FreenessVerdict,
    JordanType,
    coideal_preimage,
    dual_action,
    jordan_type,
    local_freeness,
    radical_quotient_dim,
    trivial_comodule,
    validate,
)
from .expdeg import (
    NilpotentMatrix,
    SymbolicNilpotentDomain,
    coalg_exp_degree,
    coalg_filtration_piece,
    exp_pullback,
    exponential_degree,
    exponential_height,
    frobenius_twist,
    ga_exp_filtration,
    mock_trivial_check,
    module_exp_filtration,
    relate_inclusions_check,
    truncated_exp,
)
from .fpcomb import PrimeField, binom_mod, carries_in_addition, digit_dominates
from .ga import (
    GaUFamily,
    carries_basis,
    comodule_to_family,
    degree_filtration_ga,
    derived_v,
    family_to_comodule,
    ga_one_param_theta,
    generated_submodule,
    regular_comodule,
    restrict_frobenius_ga,
    retract_iso_check,
    section_frobenius_ga,
    v_on_poly,
    y_r_family,
)
from .linalg import Subspace
from .polyring import MultiPoly, TensorPoly, format_poly, parse_poly
from .support import (
    OneParamSubgroup,
    frobenius_injectivity_check,
    ga_psg,
    is_free_at,
    pullback_module,
    support_sample,
    theta_operator,
    un_psg,
    validate_1psg,
)
from .un import (
    UNContext,
    coproduct_poly,
    degree_filtration_un,
    degree_piece,
    frobenius_kernel_dims,
    natural_rep,
    sym_square_rep,
    x_coproduct,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
