"""
Tests for cellular integrands and their parameters.

Covers:
- Basic integrands in the simplicial and cubical frames
- Homogeneity and the lattice H_sigma for even n
- Convergence of parameters and the region C^n
- Pullback identities for products and the three-dimensional change of variables
"""

import math
import unittest

import numpy as np
import pytest

from cellular.configurations import Perm, StablePartition, enumerate_convergent
from cellular.forms import (
    Factor,
    FactoredRational,
    FrameError,
    HomogeneityError,
    ParamSet,
    basic_cubical_integrand,
    build_basic,
    build_general,
    cellular_form,
    constant_unit,
    cubical_integrand,
    extend_parameters,
    f_ratio,
    in_region_C,
    is_convergent_params,
    linear_form_along,
    ord_along,
    pi_even_params,
    pi_odd_params,
    pullback_check,
    rv3_change_of_variables_check,
    sample_region_point,
    solve_homogeneity,
    to_cubical,
    to_simplicial,
    valuation_by_expansion,
)
from cellular.configurations.models import ConfigurationError, DihedralStructure
from cellular.forms.pullback import sample_plan
from cellular.tables import N8_FAMILY_SIGMA, PRODUCT_EXAMPLE, named_config


class TestBasicIntegrands(unittest.TestCase):
    """The basic integrand f^N omega."""

    def test_n5_cubical_integrand_is_the_zeta2_integrand(self):
        """x^N (1-x)^N y^N (1-y)^N / (1-xy)^(N+1)."""
        N = 3
        expr = basic_cubical_integrand(named_config("5pi"), N)
        self.assertEqual(expr.frame, "cubical")
        self.assertEqual(expr.exponent(Factor("x", 1)), N)
        self.assertEqual(expr.exponent(Factor("x", 2)), N)
        self.assertEqual(expr.exponent(Factor("one_minus_x", 1)), N)
        self.assertEqual(expr.exponent(Factor("one_minus_x", 2)), N)
        self.assertEqual(expr.exponent(Factor("one_minus_xprod", 1, 2)), -(N + 1))

    def test_n5_simplicial_form(self):
        """f = t1 (t2 - t1) (1 - t2) / (t2 (1 - t1)) and omega = dt / (t2 (1 - t1))."""
        f, omega = build_basic(named_config("5pi"))
        self.assertEqual(f.frame, "simplicial")
        self.assertEqual(f.exponent(Factor("t", 1)), 1)
        self.assertEqual(f.exponent(Factor("t_diff", 1, 2)), 1)
        self.assertEqual(f.exponent(Factor("one_minus_t", 2)), 1)
        self.assertEqual(f.exponent(Factor("t", 2)), -1)
        self.assertEqual(f.exponent(Factor("one_minus_t", 1)), -1)
        self.assertEqual(omega.degree, 2)
        self.assertEqual(omega.coefficient.exponent(Factor("t", 2)), -1)

    def test_integrand_is_positive_on_the_cell(self):
        from fractions import Fraction

        f, omega = build_basic(named_config("7pi1"))
        point = [Fraction(1, 7), Fraction(2, 7), Fraction(3, 7), Fraction(5, 7)]
        self.assertGreater(f.value(point), 0)
        self.assertGreater(omega.coefficient.value(point), 0)

    def test_general_integrand_with_equal_parameters_matches_basic(self):
        c = named_config("6pi")
        general = cubical_integrand(c.rep, ParamSet.basic(c.rep, 2))
        self.assertEqual(general, basic_cubical_integrand(c, 2))

    def test_non_convergent_configurations_are_refused(self):
        with self.assertRaises(ConfigurationError):
            build_basic(Perm.identity(6))

    def test_frames_are_checked(self):
        f, _ = build_basic(named_config("5pi"))
        with self.assertRaises(FrameError):
            to_simplicial(f)
        with self.assertRaises(FrameError):
            to_cubical(to_cubical(f))

    def test_factored_rational_round_trips_through_dict(self):
        expr = basic_cubical_integrand(named_config("6pi"), 1)
        self.assertEqual(FactoredRational.from_dict(expr.to_dict()), expr)


class TestHomogeneity(unittest.TestCase):
    """Solving the homogeneity equations."""

    def test_basic_parameters_are_homogeneous(self):
        for name in ("5pi", "6pi", "7pi2", "8pi3"):
            params = ParamSet.basic(named_config(name), 4)
            self.assertTrue(params.is_homogeneous())
            self.assertTrue(params.is_basic())

    def test_odd_n_solution_is_unique(self):
        sigma = named_config("5pi").rep
        params = solve_homogeneity(sigma, [2, 2, 2, 2, 2])
        self.assertEqual(params, ParamSet.basic(sigma, 2))

    def test_odd_n_solution_reproduces_family_parameters(self):
        """The a-parameters alone determine every b for odd n."""
        family = pi_even_params(3, 2, 3)
        self.assertEqual(solve_homogeneity(family.sigma, family.a_list()), family)

    def test_even_n_needs_the_free_parameter(self):
        sigma = named_config("6pi").rep
        with self.assertRaises(HomogeneityError):
            solve_homogeneity(sigma, [1] * 6)

    def test_even_n_outside_the_lattice_is_refused(self):
        sigma = Perm([6, 2, 4, 1, 5, 3])
        with self.assertRaises(HomogeneityError) as ctx:
            solve_homogeneity(sigma, [1, 0, 0, 0, 0, 0], 0)
        self.assertNotEqual(ctx.exception.alternating_sum, 0)

    def test_even_family_completion(self):
        """a_8 is completed from H_sigma and the free b sits on {5, 8}."""
        from cellular.forms import homogeneity_system

        system = homogeneity_system(N8_FAMILY_SIGMA, None)
        self.assertEqual(system.free_edge, (5, 8))
        a = system.complete_a([1, 0, 0, 1, 0, 0, 0, None])
        params = system.solve(a, 0)
        self.assertTrue(params.is_homogeneous())
        self.assertEqual(a[5] + a[6] + a[7], a[1] + a[2] + a[3])

    def test_param_set_round_trips_through_dict(self):
        params = pi_odd_params(4, 2, 3)
        self.assertEqual(ParamSet.from_dict(params.to_dict()), params)


@pytest.mark.parametrize("m", [3, 4, 5])
def test_pi_family_parameters(m):
    for params in (pi_odd_params(m, 2, 3), pi_even_params(m, 2, 3)):
        assert params.is_homogeneous()
        assert not params.is_basic()
    for params in (pi_odd_params(m, 2), pi_even_params(m, 2)):
        ok, witness = is_convergent_params(params.sigma, params)
        assert ok and witness is None


# ============================================================================
# CONVERGENCE REGION
# ============================================================================


def test_basic_parameters_converge_for_non_negative_N():
    sigma = named_config("7pi2").rep
    for N in (0, 1, 5):
        ok, _ = is_convergent_params(sigma, ParamSet.basic(sigma, N))
        assert ok


def test_negative_parameters_diverge_with_a_witness():
    sigma = named_config("5pi").rep
    ok, witness = is_convergent_params(sigma, ParamSet.basic(sigma, -1))
    assert not ok
    assert isinstance(witness, StablePartition)
    assert DihedralStructure.standard(5).is_consecutive(witness.block)


def test_region_membership():
    assert in_region_C([10, 10, 10])
    assert in_region_C([100, 101, 99, 100, 102])
    assert not in_region_C([1, 2])
    assert not in_region_C([])


@pytest.mark.parametrize("name,m", [("5pi", 100), ("7pi1", 400), ("6pi", 300), ("8pi2", 500)])
def test_sampled_region_points_converge(name, m):
    rng = np.random.default_rng(7)
    sigma = named_config(name).rep
    for _ in range(10):
        params = sample_region_point(sigma, m, rng)
        assert params.is_homogeneous()
        coords = params.a_list() if sigma.n % 2 else params.a_list() + [params.b[_free_edge(sigma)]]
        assert in_region_C(coords, len(coords))
        ok, witness = is_convergent_params(sigma, params)
        assert ok, witness


def _free_edge(sigma):
    from cellular.forms import homogeneity_system

    return homogeneity_system(sigma.values, None).free_edge


def test_linear_form_along_collects_edges_inside_blocks():
    sigma = Perm([1, 3, 5, 2, 4])
    positive, negative, omega_order = linear_form_along(sigma, StablePartition.from_block(5, [1, 2]))
    assert sorted(positive) == [(1, 2), (3, 4), (4, 5)]
    assert negative == [(3, 5)]
    assert omega_order.doubled == 0


def test_ord_along_is_the_linear_form_evaluated():
    params = pi_even_params(3, 1, 2)
    D = StablePartition.from_block(7, [2, 3, 4])
    positive, negative, omega_order = linear_form_along(params.sigma, D)
    doubled = sum(params.a[e] for e in positive) - sum(params.b[e] for e in negative)
    assert ord_along(params, D).doubled == doubled + omega_order.doubled


def test_exact_and_numeric_orders_of_f_agree():
    family = pi_even_params(3, 1, 2)
    for block in ([1, 2], [2, 3, 4], [1, 3], [2, 5, 7]):
        D = StablePartition.from_block(7, block)
        exact = ord_along(family, D, include_form=False)
        assert valuation_by_expansion(family, D, include_form=False) == exact


# ============================================================================
# FORM IDENTITIES
# ============================================================================


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_f_carries_one_cellular_form_to_the_other(n):
    """f_{delta/delta'} omega_delta = +-omega_delta' and f_{delta/delta'} f_{delta'/delta} = +-1."""
    delta0 = list(range(1, n + 1))
    classes = enumerate_convergent(n)
    assert classes
    for c in classes:
        word = list(c.rep.values)
        f = f_ratio(delta0, word, n)
        assert (cellular_form(delta0, n) * f).equals_up_to_sign(cellular_form(word, n)), c
        assert (f * f_ratio(word, delta0, n)).is_unit, c
        moved = to_simplicial(cellular_form(delta0, n)) * to_simplicial(f)
        assert moved.equals_up_to_sign(to_simplicial(cellular_form(word, n))), c


# ============================================================================
# PULLBACKS
# ============================================================================


def test_product_pullback_identity_holds():
    pair1 = tuple(DihedralStructure(w) for w in PRODUCT_EXAMPLE["pair1"])
    pair2 = tuple(DihedralStructure(w) for w in PRODUCT_EXAMPLE["pair2"])
    holds, sign = pullback_check(pair1, pair2, PRODUCT_EXAMPLE["t1"], PRODUCT_EXAMPLE["t2"])
    assert holds
    assert sign in (1, -1)


@pytest.mark.parametrize("degree", [1, 12, 40, 400, 10**6])
def test_sample_plan_bounds_a_false_pass(degree):
    count, bits = sample_plan(degree, 64, 60)
    # one point passes a nonzero numerator with probability <= degree / 2**(bits + 1)
    assert count * (bits + 1 - math.log2(degree)) >= 61


def test_sample_plan_widens_coordinates_for_high_degree():
    count, bits = sample_plan(2**70, 64, 60)
    assert bits >= 78
    assert count >= 1


def test_constant_unit_accepts_a_sign_and_rejects_a_cross_ratio():
    z12, z13, z23 = Factor("z", 1, 2), Factor("z", 1, 3), Factor("z", 2, 3)
    minus_one = FactoredRational("z", 4, -1, {})
    assert constant_unit(minus_one, 4) == (True, -1)
    cross = FactoredRational("z", 4, 1, {z12: 1, z13: -1})
    assert constant_unit(cross, 4) == (False, 0)
    balanced = FactoredRational("z", 4, 1, {z12: 1, z13: 1, z23: -2})
    assert constant_unit(balanced, 4, points=3)[0] is False


@pytest.mark.parametrize("hklqrs", [(1, 1, 1, 1, 1, 1), (2, 1, 3, 1, 2, 2), (3, 2, 2, 1, 3, 1)])
def test_three_dimensional_change_of_variables(hklqrs):
    assert rv3_change_of_variables_check(hklqrs)


def test_general_integrand_rejects_inhomogeneous_parameters():
    sigma = named_config("5pi").rep
    params = ParamSet.basic(sigma, 1)
    params.a[(1, 2)] = 5
    with pytest.raises(HomogeneityError):
        build_general(sigma, params)


def _split_off(params):
    from cellular.forms.params import b_edges

    dropped_b = next(e for e in b_edges(params.sigma) if not {1, 2} & set(e))
    known_a = {e: v for e, v in params.a.items() if e != (1, 2)}
    known_b = {e: v for e, v in params.b.items() if e != dropped_b}
    return known_a, known_b, dropped_b


def test_extend_parameters_recovers_dropped_values():
    params = pi_even_params(3, 2, 3)
    known_a, known_b, dropped_b = _split_off(params)
    word = list(range(1, params.n + 1))
    a, b = extend_parameters(word, params.sigma.values, known_a, known_b)
    assert a == params.a
    assert b == params.b
    assert b[dropped_b] == params.b[dropped_b]


def test_extend_parameters_with_nothing_missing_returns_the_input():
    params = ParamSet.basic(named_config("6pi").rep, 2)
    a, b = extend_parameters(list(range(1, 7)), params.sigma.values, params.a, params.b)
    assert (a, b) == (params.a, params.b)


def test_extend_parameters_rejects_inconsistent_data():
    params = pi_even_params(3, 2, 3)
    known_a, known_b, _ = _split_off(params)
    known_a[(2, 3)] += 1
    with pytest.raises(HomogeneityError):
        extend_parameters(list(range(1, params.n + 1)), params.sigma.values, known_a, known_b)
