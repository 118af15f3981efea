"""Special-function families, their registry and family-specific bounds."""

from .base import (
    FamilyDescriptor,
    TuranSpec,
    Validity,
    family_names,
    get_family,
    ratio_enclosure,
    side_validity,
)
from .catalog import (
    hermite_imag_bounds,
    laguerre_fixed_alpha_turan,
    laguerre_neg_bounds,
    oblate_p_bounds,
    oblate_q_bounds,
    pcf_u_bounds,
    pcf_u_reflected_bounds,
    pcf_v_bounds,
)
from .realaxis import (
    RealAxisBound,
    ZeroBoundReport,
    hermite_real_lower_bound,
    laguerre_printed_xstar,
    laguerre_real_lower_bound,
    largest_zero_upper_bound,
)
from .special import (
    F_alpha,
    iterated_erfc_ratio_bounds,
    mills_bounds,
    mills_cf,
    pcf_logderiv_bounds,
    pcf_value_ratio_bounds,
)
from .turan import TuranReport, turan_bounds, turan_check

__all__ = [
    "F_alpha",
    "FamilyDescriptor",
    "RealAxisBound",
    "TuranReport",
    "TuranSpec",
    "Validity",
    "ZeroBoundReport",
    "family_names",
    "get_family",
    "hermite_imag_bounds",
    "hermite_real_lower_bound",
    "iterated_erfc_ratio_bounds",
    "laguerre_fixed_alpha_turan",
    "laguerre_neg_bounds",
    "laguerre_printed_xstar",
    "laguerre_real_lower_bound",
    "largest_zero_upper_bound",
    "mills_bounds",
    "mills_cf",
    "oblate_p_bounds",
    "oblate_q_bounds",
    "pcf_logderiv_bounds",
    "pcf_u_bounds",
    "pcf_u_reflected_bounds",
    "pcf_v_bounds",
    "pcf_value_ratio_bounds",
    "ratio_enclosure",
    "side_validity",
    "turan_bounds",
    "turan_check",
]
