"""
Integer relations over bases of period constants.
"""
from cellular.relations.lattice import LatticeError, lattice_reduce, squared_norm
from cellular.relations.fit import (
    ConstantBasis,
    PrecisionError,
    Relation,
    fit_linear_form,
    fit_relation,
    height_bound,
    minimum_digits,
    value_at,
)
from cellular.relations.report import VanishingRow, vanishing_report

__all__ = [
    "LatticeError",
    "lattice_reduce",
    "squared_norm",
    "ConstantBasis",
    "PrecisionError",
    "Relation",
    "fit_linear_form",
    "fit_relation",
    "height_bound",
    "minimum_digits",
    "value_at",
    "VanishingRow",
    "vanishing_report",
]
