"""Certified-style enclosures for ratios of special functions.

Bounds come from the characteristic roots of first-order difference-differential
systems, refined through the three-term recurrence, and are checked against an
independent high-precision oracle (:mod:`ratio_bounds.oracle`).
"""

from .bounds import (
    Bound,
    Enclosure,
    Kind,
    Side,
    SolutionClass,
    first_pk_bound,
    lg_logderiv_bounds,
    pk_enclosure,
    second_pk_bound_dominant,
    second_pk_bound_minimal,
)
from .families import (
    family_names,
    get_family,
    hermite_real_lower_bound,
    iterated_erfc_ratio_bounds,
    laguerre_real_lower_bound,
    largest_zero_upper_bound,
    mills_bounds,
    pcf_logderiv_bounds,
    pcf_value_ratio_bounds,
    ratio_enclosure,
    turan_check,
)
from .refine import (
    EnclosureSequence,
    cf_evaluate_with_tail,
    refine_enclosure,
    ttrr_step_down,
    ttrr_step_up,
    turan_enclosure,
)
from .system import (
    CoefficientSystem,
    Interval,
    Regime,
    characteristic_data,
    classify_regime,
    recurrence_data,
    root_monotonicity,
)

__version__ = "0.1.0"

__all__ = [
    "Bound",
    "CoefficientSystem",
    "Enclosure",
    "EnclosureSequence",
    "Interval",
    "Kind",
    "Regime",
    "Side",
    "SolutionClass",
    "cf_evaluate_with_tail",
    "characteristic_data",
    "classify_regime",
    "family_names",
    "first_pk_bound",
    "get_family",
    "hermite_real_lower_bound",
    "iterated_erfc_ratio_bounds",
    "laguerre_real_lower_bound",
    "largest_zero_upper_bound",
    "lg_logderiv_bounds",
    "mills_bounds",
    "pcf_logderiv_bounds",
    "pcf_value_ratio_bounds",
    "pk_enclosure",
    "ratio_enclosure",
    "recurrence_data",
    "refine_enclosure",
    "root_monotonicity",
    "second_pk_bound_dominant",
    "second_pk_bound_minimal",
    "ttrr_step_down",
    "ttrr_step_up",
    "turan_check",
    "turan_enclosure",
]
