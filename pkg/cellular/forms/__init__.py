"""
Cellular integrands as factored rational functions: parameters, frames,
orders of vanishing and pullback identities.
"""
from cellular.forms.factors import FRAMES, Factor, FactoredRational, FrameError, alphabet, product_of
from cellular.forms.params import (
    HomogeneityError,
    HomogeneitySystem,
    ParamSet,
    extend_parameters,
    homogeneity_system,
    in_region_C,
    pi_even_params,
    pi_odd_params,
    sample_region_point,
    solve_homogeneity,
)
from cellular.forms.builder import (
    DifferentialForm,
    basic_cubical_integrand,
    build_basic,
    build_general,
    cellular_form,
    cubical_integrand,
    cycle_product,
    f_general,
    f_ratio,
    to_cubical,
    to_simplicial,
)
from cellular.forms.valuation import (
    fewer_negative_terms,
    is_convergent_params,
    linear_form_along,
    ord_along,
    valuation_by_expansion,
)
from cellular.forms.pullback import (
    SubstitutionError,
    constant_unit,
    pullback_check,
    rv3_change_of_variables_check,
    rv3_dictionary,
    substitute,
)

__all__ = [
    "FRAMES",
    "Factor",
    "FactoredRational",
    "FrameError",
    "alphabet",
    "product_of",
    "HomogeneityError",
    "HomogeneitySystem",
    "ParamSet",
    "extend_parameters",
    "homogeneity_system",
    "in_region_C",
    "pi_even_params",
    "pi_odd_params",
    "sample_region_point",
    "solve_homogeneity",
    "DifferentialForm",
    "basic_cubical_integrand",
    "build_basic",
    "build_general",
    "cellular_form",
    "cubical_integrand",
    "cycle_product",
    "f_general",
    "f_ratio",
    "to_cubical",
    "to_simplicial",
    "fewer_negative_terms",
    "is_convergent_params",
    "linear_form_along",
    "ord_along",
    "valuation_by_expansion",
    "SubstitutionError",
    "constant_unit",
    "pullback_check",
    "rv3_change_of_variables_check",
    "rv3_dictionary",
    "substitute",
]
