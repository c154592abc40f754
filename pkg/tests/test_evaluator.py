"""
Tests for numerical evaluation.

Covers:
- Explicit-precision floats and named constants
- Quadrature of basic and generalised integrals
- Monte Carlo estimates
- Maxima of f on the cell
"""

import itertools
import math
import unittest
from fractions import Fraction

import mpmath
import pytest

from cellular.config import update_config
from cellular.configurations import Perm, enumerate_convergent
from cellular.evaluator import (
    REFERENCE_50,
    BigFloat,
    ConvergenceError,
    EvalResult,
    EvaluationError,
    bits_for_digits,
    const_pi,
    const_zeta,
    eval_basic,
    eval_general,
    eval_montecarlo,
    max_on_cell,
    named_constant,
    named_value,
)
from cellular.forms import ParamSet, homogeneity_system
from cellular.tables import N8_FAMILY_SIGMA, N8_FAMILY_VALUES, combination_value, i0_value, named_config


def _mp(digits):
    ctx = mpmath.MPContext()
    ctx.dps = digits
    return ctx


class TestBigFloat(unittest.TestCase):
    """Explicit-precision binary floats."""

    def test_precision_of_results_is_the_smaller_one(self):
        a = BigFloat.from_digits("1.5", 50)
        b = BigFloat.from_digits(Fraction(1, 3), 20)
        self.assertEqual((a + b).bits, bits_for_digits(20))
        self.assertEqual((a * 2).bits, a.bits)

    def test_comparisons_with_plain_numbers(self):
        x = BigFloat.from_digits(Fraction(1, 4), 30)
        self.assertEqual(x, 0.25)
        self.assertLess(x, 1)
        self.assertGreater(-x, -1)
        self.assertEqual(abs(-x), x)

    def test_digits_follow_bits(self):
        self.assertGreaterEqual(BigFloat.from_digits(1, 40).digits, 40)

    def test_decimal_output(self):
        self.assertEqual(BigFloat.from_digits(Fraction(1, 8), 20).to_decimal(3), "0.125")

    def test_rejects_unknown_types(self):
        with self.assertRaises(TypeError):
            BigFloat.of([1], 10)


class TestConstants(unittest.TestCase):
    """High-precision constants."""

    def test_reference_values(self):
        self.assertEqual(const_zeta(3, 50).to_decimal(50)[:45], REFERENCE_50["zeta3"][:45])
        self.assertEqual(const_zeta(5, 50).to_decimal(50)[:45], REFERENCE_50["zeta5"][:45])
        self.assertEqual(const_pi(50).to_decimal(50)[:45], REFERENCE_50["pi"][:45])

    def test_zeta2_is_pi_squared_over_six(self):
        ctx = _mp(60)
        self.assertLess(abs(named_value(ctx, "zeta2") - ctx.pi ** 2 / 6), ctx.mpf(10) ** -55)

    def test_products_and_powers(self):
        ctx = _mp(40)
        self.assertLess(abs(named_value(ctx, "zeta2^2") - ctx.zeta(2) ** 2), ctx.mpf(10) ** -35)
        self.assertLess(abs(named_value(ctx, "zeta2*zeta3") - ctx.zeta(2) * ctx.zeta(3)), ctx.mpf(10) ** -35)
        self.assertEqual(named_value(ctx, "1"), 1)

    def test_unknown_names_are_refused(self):
        with self.assertRaises(ValueError):
            named_value(_mp(20), "zeta1")
        with self.assertRaises(ValueError):
            named_constant("catalan", 20)

    def test_digit_range_is_checked(self):
        with self.assertRaises(ValueError):
            const_zeta(3, 0)


# ============================================================================
# QUADRATURE
# ============================================================================


def test_n5_integral_at_N0_is_zeta2():
    result = eval_basic(named_config("5pi"), 0, 20)
    ctx = _mp(30)
    assert abs(result.value.to_mpf(ctx) - ctx.zeta(2)) < ctx.mpf(10) ** -18
    assert result.method == "tanh-sinh"
    assert result.error_estimate < 1e-12


def test_n5_integral_at_N1():
    """|I(1)| = 5 - 3 zeta(2)."""
    result = eval_basic(named_config("5pi"), 1, 20)
    ctx = _mp(30)
    assert abs(result.value.to_mpf(ctx) - (5 - 3 * ctx.zeta(2))) < ctx.mpf(10) ** -18


def test_n6_integrals():
    """I(0) = 2 zeta(3) and |I(1)| = 12 - 10 zeta(3)."""
    ctx = _mp(30)
    zero = eval_basic(named_config("6pi"), 0, 18)
    one = eval_basic(named_config("6pi"), 1, 18)
    assert abs(zero.value.to_mpf(ctx) - 2 * ctx.zeta(3)) < ctx.mpf(10) ** -15
    assert abs(one.value.to_mpf(ctx) - (12 - 10 * ctx.zeta(3))) < ctx.mpf(10) ** -15


def test_float_fast_path():
    result = eval_basic(named_config("5pi"), 2, 12)
    assert abs(float(result.value) - (19 * mpmath.zeta(2) - mpmath.mpf(125) / 4)) < 1e-10


def test_generalised_integral_with_basic_parameters_matches_basic():
    sigma = named_config("5pi").rep
    general = eval_general(sigma, ParamSet.basic(sigma, 1), 20)
    basic = eval_basic(sigma, 1, 20)
    ctx = _mp(30)
    assert abs(general.value.to_mpf(ctx) - basic.value.to_mpf(ctx)) < ctx.mpf(10) ** -18


def test_divergent_input_is_refused():
    with pytest.raises(ConvergenceError):
        eval_basic(Perm.identity(6), 0, 12)
    sigma = named_config("5pi").rep
    with pytest.raises(ConvergenceError):
        eval_general(sigma, ParamSet.basic(sigma, -1), 12)
    with pytest.raises(ValueError):
        eval_basic(sigma, -1, 12)


def test_high_dimensions_need_monte_carlo():
    with pytest.raises(EvaluationError):
        eval_basic(named_config("8pi8"), 0, 20)
    with pytest.raises(EvaluationError):
        eval_basic(named_config("7pi3"), 0, 20)


def test_unconverged_quadrature_is_an_error():
    """Running out of levels before the error estimate reaches 10^-digits fails loudly."""
    update_config("QUAD_MAX_LEVEL", 4)
    with pytest.raises(EvaluationError, match="did not reach 30 digits"):
        eval_basic(named_config("6pi"), 1, 30)


def test_unconverged_float_quadrature_is_an_error():
    update_config("QUAD_MAX_LEVEL", 3)
    with pytest.raises(EvaluationError):
        eval_basic(named_config("5pi"), 0, 12)


def test_converged_quadrature_meets_its_target():
    result = eval_basic(named_config("5pi"), 1, 25)
    assert result.error_estimate < BigFloat.from_digits(Fraction(1, 10 ** 25), 30)


def test_result_serializes():
    data = eval_basic(named_config("5pi"), 0, 12).to_dict()
    assert data["method"] == "tanh-sinh"
    assert data["N"] == 0
    assert data["config"] == [1, 3, 5, 2, 4]
    assert data["value"].startswith("1.64493406")


def test_error_estimate_must_be_positive():
    one = BigFloat.from_digits(1, 10)
    with pytest.raises(ValueError):
        EvalResult(one, BigFloat.from_digits(0, 10), "tanh-sinh")


@pytest.mark.slow
def test_n7_integral_in_float_precision():
    result = eval_basic(named_config("7pi3"), 0, 12)
    ctx = _mp(20)
    assert abs(result.value.to_mpf(ctx) - i0_value("7pi3", ctx)) < 1e-9


@pytest.mark.slow
def test_n6_integral_at_acceptance_precision():
    ctx = _mp(70)
    result = eval_basic(named_config("6pi"), 2, 60)
    expected = abs(2 * (73 * ctx.zeta(3) - ctx.mpf(351) / 4))
    assert abs(result.value.to_mpf(ctx) - expected) < ctx.mpf(10) ** -55


# ============================================================================
# MONTE CARLO
# ============================================================================


def test_montecarlo_estimate_of_zeta2():
    result = eval_montecarlo(named_config("5pi"), 0, samples=2**14, seed=11)
    assert result.method == "monte-carlo"
    assert result.samples >= 2**14
    assert abs(float(result.value) - float(mpmath.zeta(2))) < 1e-2


def test_montecarlo_is_deterministic_for_a_seed():
    first = eval_montecarlo(named_config("6pi"), 1, samples=2**12, seed=5)
    second = eval_montecarlo(named_config("6pi"), 1, samples=2**12, seed=5)
    assert first.value == second.value


def test_montecarlo_dimension_cap():
    with pytest.raises(EvaluationError):
        eval_montecarlo(Perm([10, 2, 4, 1, 6, 8, 5, 3, 9, 7]), 0, samples=16)


@pytest.mark.slow
def test_montecarlo_for_n8():
    ctx = _mp(20)
    result = eval_montecarlo(named_config("8pi8"), 0, samples=2**22, seed=3)
    expected = float(i0_value("8pi8", ctx))
    assert abs(float(result.value) - expected) < 3 * float(result.error_estimate)


@pytest.mark.slow
def test_montecarlo_tells_the_n7_classes_apart():
    """Each I(0) lies within 3 sigma of its closed form and the five are > 5 sigma apart."""
    ctx = _mp(20)
    estimates = []
    for name in ("7pi1", "7pi2", "7pi3", "7pi1v", "7pi2v"):
        result = eval_montecarlo(named_config(name), 0, samples=2**22, seed=7)
        value, sigma = float(result.value), float(result.error_estimate)
        assert abs(value - float(i0_value(name, ctx))) < 3 * sigma, name
        estimates.append((value, sigma))
    for (v1, s1), (v2, s2) in itertools.combinations(estimates, 2):
        assert abs(v1 - v2) > 5 * math.hypot(s1, s2)


@pytest.mark.slow
def test_montecarlo_for_the_n8_family():
    system = homogeneity_system(N8_FAMILY_SIGMA, None)
    a, b, closed_form = N8_FAMILY_VALUES[0]
    params = system.solve(system.complete_a(list(a) + [None]), b)
    result = eval_montecarlo(Perm(N8_FAMILY_SIGMA), params, samples=2**22, seed=5)
    expected = float(combination_value(closed_form, _mp(20)))
    assert abs(expected - 0.0738555) < 1e-6
    assert abs(float(result.value) - expected) < 3 * float(result.error_estimate)


# ============================================================================
# MAXIMA
# ============================================================================


def test_maximum_on_the_n5_cell():
    maximum = float(max_on_cell(named_config("5pi")))
    expected = ((5 ** 0.5 - 1) / 2) ** 5
    assert abs(maximum - expected) / expected < 1e-5


def test_maximum_on_the_n6_cell():
    maximum = float(max_on_cell(named_config("6pi")))
    expected = (2 ** 0.5 - 1) ** 4
    assert abs(maximum - expected) / expected < 1e-5


@pytest.mark.parametrize("n", [5, 6, 7, pytest.param(8, marks=pytest.mark.slow)])
def test_maximum_is_below_one_for_every_class(n):
    for c in enumerate_convergent(n):
        maximum = float(max_on_cell(c))
        assert 0 < maximum < 1 - 1e-6, c
