"""
Tests for integer relations: lattice reduction, fits and vanishing tables.
"""

import unittest
from fractions import Fraction

import pytest
import sympy

from cellular.evaluator import eval_basic, named_constant
from cellular.relations import (
    ConstantBasis,
    LatticeError,
    PrecisionError,
    fit_linear_form,
    fit_relation,
    lattice_reduce,
    minimum_digits,
    squared_norm,
    value_at,
    vanishing_report,
)
from cellular.tables import VANISHING_COLUMNS, VANISHING_PATTERNS, named_config


class TestLatticeReduction(unittest.TestCase):
    """LLL reduction of integer row bases."""

    BASIS = [[1, 1, 1], [-1, 0, 2], [3, 5, 6]]

    def test_reduction_preserves_the_lattice_volume(self):
        reduced = lattice_reduce(self.BASIS)
        self.assertEqual(abs(sympy.Matrix(reduced).det()), abs(sympy.Matrix(self.BASIS).det()))
        self.assertEqual(abs(sympy.Matrix(reduced).det()), 3)

    def test_first_vector_never_grows(self):
        reduced = lattice_reduce(self.BASIS)
        self.assertLessEqual(squared_norm(reduced[0]), squared_norm(self.BASIS[0]))

    def test_reduced_basis_is_unchanged_by_a_second_pass(self):
        reduced = lattice_reduce(self.BASIS)
        self.assertEqual(lattice_reduce(reduced), reduced)

    def test_bad_bases_are_refused(self):
        with self.assertRaises(LatticeError):
            lattice_reduce([])
        with self.assertRaises(LatticeError):
            lattice_reduce([[1, 2], [2, 4]])
        with self.assertRaises(LatticeError):
            lattice_reduce([[1], [2]])
        with self.assertRaises(LatticeError):
            lattice_reduce([[1, 2], [3]])


# ============================================================================
# FITS
# ============================================================================


@pytest.mark.parametrize("method", ["lll", "pslq"])
def test_fit_recovers_a_known_combination(method):
    v = named_constant("zeta5", 70) * 2 - 2
    basis = ConstantBasis.named("1,zeta5", 60)
    relation = fit_relation(v, basis, 60, method)
    assert relation is not None
    assert relation.rationals() == [Fraction(-2), Fraction(2)]
    assert relation.to_dict()["coeffs"] == ["-2/1", "2/1"]


def test_minimum_digits_grow_with_the_basis():
    assert minimum_digits(2) == 40
    assert minimum_digits(3) == 50


def test_fit_refuses_low_precision():
    basis = ConstantBasis.named("1,zeta5", 60)
    v = named_constant("zeta5", 70)
    with pytest.raises(PrecisionError):
        fit_relation(v, basis, 30)
    with pytest.raises(PrecisionError):
        fit_relation(value_at(v, 20), basis, 60)
    with pytest.raises(PrecisionError):
        fit_relation(v, ConstantBasis.named("1,zeta5", 40), 60)


def test_fit_refuses_unknown_methods():
    with pytest.raises(ValueError):
        fit_relation(named_constant("zeta5", 70), ConstantBasis.named("1,zeta5", 60), 60, "guess")


def test_unrelated_constants_give_no_relation():
    assert fit_relation(named_constant("pi", 70), ConstantBasis.named("1,zeta3", 60), 60) is None


def test_zero_has_the_trivial_relation():
    relation = fit_relation(value_at(0, 60), ConstantBasis.named("1,zeta2", 60), 60)
    assert relation.coefficients == [1, 0, 0]
    assert relation.rationals() == [0, 0]


def test_fit_of_a_quadrature_value():
    """|I(1)| = 5 - 3 zeta(2) for the n=5 class."""
    value = eval_basic(named_config("5pi"), 1, 40).value
    coeffs = fit_linear_form(value, ConstantBasis.named("1,zeta2", 40), 40)
    assert coeffs == [Fraction(5), Fraction(-3)]


# ============================================================================
# VANISHING TABLES
# ============================================================================


def test_vanishing_report_with_supplied_values():
    zeta2 = named_constant("zeta2", 70)
    values = {0: zeta2, 1: 5 - 3 * zeta2}
    rows = vanishing_report(named_config("5pi"), [0, 1], ConstantBasis.named("1,zeta2", 50), 50, values=values)
    assert [row.zeros for row in rows] == [[True, False], [False, False]]
    assert rows[1].line() == "N=1: [* *]  1: 5/1, zeta2: -3/1"
    assert rows[0].line() == "N=0: [0 *]  1: 0/1, zeta2: 1/1"
    assert rows[1].to_dict()["coeffs"] == ["5/1", "-3/1"]


def test_vanishing_report_flags_rows_without_a_relation():
    values = {2: named_constant("pi", 70)}
    rows = vanishing_report(named_config("5pi"), [2], ConstantBasis.named("1,zeta3", 50), 50, values=values)
    assert not rows[0].accepted
    assert rows[0].line() == "N=2: no relation found"


@pytest.mark.slow
def test_n6_vanishing_pattern():
    """The zeta(2) column vanishes for every N."""
    basis = ConstantBasis.named(",".join(VANISHING_COLUMNS[6]), 60)
    rows = vanishing_report(named_config("6pi"), [1, 2], basis, 60)
    pattern = VANISHING_PATTERNS["6pi"]
    for row in rows:
        assert row.accepted
        assert row.zeros == [not occurs for occurs in pattern]
