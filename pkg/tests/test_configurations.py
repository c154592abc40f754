"""
Tests for configuration classes.

Covers:
- Parsing and canonical forms
- Convergence and witness divisors
- Enumeration counts and self-dual counts
- Stable partitions and divisor counts
- Products of pairs
- Text and JSON listings
"""

import itertools
import json
import unittest

import pytest

from cellular.configurations import (
    ConfigClass,
    ConfigurationError,
    DihedralStructure,
    HalfInt,
    Perm,
    ProductError,
    StablePartition,
    all_stable_partitions,
    canonical_config,
    config_of_pair,
    convergence_witness,
    divisor_counts,
    dual,
    dump_configs,
    enumerate_convergent,
    finite_distance_divisors,
    indicator_ID,
    indicator_sum,
    infinite_divisor_count,
    is_convergent,
    is_dinner_valid,
    is_multipliable,
    is_self_dual,
    load_configs,
    orbit,
    ord_f,
    ord_omega,
    pi_even,
    pi_even_perm,
    pi_odd,
    pi_odd_perm,
    product,
)
from cellular.tables import CONVERGENT_COUNTS, PRODUCT_EXAMPLE, SELF_DUAL_COUNTS, named_config


class TestPermParsing(unittest.TestCase):
    """Perm construction and parsing."""

    def test_parse_accepts_common_spellings(self):
        """Comma, bracket and space separated forms give the same permutation."""
        expected = Perm([5, 2, 4, 1, 3])
        for text in ("5,2,4,1,3", "[5, 2, 4, 1, 3]", "5 2 4 1 3", "(5,2,4,1,3)"):
            self.assertEqual(Perm.parse(text), expected)

    def test_rejects_non_permutations(self):
        """Repeated or missing values are refused."""
        with self.assertRaises(ConfigurationError):
            Perm([1, 2, 2, 4])
        with self.assertRaises(ConfigurationError):
            Perm.parse("1,2,x")

    def test_rejects_tiny_sizes(self):
        with self.assertRaises(ConfigurationError):
            Perm([2, 1])

    def test_inverse(self):
        p = Perm([3, 1, 4, 2])
        self.assertEqual(p.inverse(), Perm([2, 4, 1, 3]))
        self.assertEqual(p.inverse().inverse(), p)

    def test_str_is_comma_joined(self):
        self.assertEqual(str(Perm([5, 2, 4, 1, 3])), "5,2,4,1,3")


class TestCanonicalForms(unittest.TestCase):
    """Canonical representatives of dihedral classes."""

    def test_canonical_form_is_idempotent(self):
        c = canonical_config(Perm([8, 2, 4, 1, 5, 7, 3, 6]))
        self.assertEqual(canonical_config(c.rep), c)

    def test_whole_orbit_has_one_representative(self):
        """Every image under rotations, reversals and value symmetries lands on the same class."""
        sigma = Perm([7, 2, 4, 1, 6, 3, 5])
        reps = {canonical_config(Perm(image)) for image in orbit(sigma)}
        self.assertEqual(reps, {canonical_config(sigma)})

    def test_orbit_size_is_bounded_by_group_order(self):
        sigma = Perm([7, 2, 4, 1, 6, 3, 5])
        self.assertLessEqual(len(orbit(sigma)), (2 * 7) ** 2)

    def test_n5_representative_is_lexicographic_minimum(self):
        self.assertEqual(canonical_config(Perm([5, 2, 4, 1, 3])).rep, Perm([1, 3, 5, 2, 4]))

    def test_dual_is_an_involution(self):
        for name in ("7pi1", "7pi2", "8pi4", "8pi9"):
            c = named_config(name)
            self.assertEqual(dual(dual(c)), c)

    def test_named_duals_match(self):
        """A trailing v names the dual class."""
        for name in ("7pi1", "7pi2", "8pi1", "8pi4", "8pi5", "8pi7", "8pi8", "8pi9", "8pi10"):
            self.assertEqual(dual(named_config(name)), named_config(name + "v"))


class TestConvergence(unittest.TestCase):
    """Convergence and witness divisors."""

    def test_witness_is_reported_with_the_block_containing_one(self):
        witness = convergence_witness(Perm([2, 4, 1, 3, 6, 8, 5, 7]))
        self.assertIsNotNone(witness)
        self.assertEqual(witness.block, frozenset({1, 2, 3, 4}))
        self.assertEqual(str(witness), "{1,2,3,4}|{5,6,7,8}")

    def test_identity_is_not_convergent(self):
        witness = convergence_witness(Perm.identity(6))
        self.assertIsNotNone(witness)
        self.assertEqual(witness.min_size, 2)

    def test_named_classes_are_convergent(self):
        for name in ("5pi", "6pi", "7pi1", "7pi3", "8pi1", "8pi6", "8pi10v"):
            self.assertTrue(is_convergent(named_config(name).rep), name)

    def test_convergent_implies_dinner_valid(self):
        for c in enumerate_convergent(8):
            self.assertTrue(is_dinner_valid(c.rep))

    def test_convergence_matches_divisor_disjointness(self):
        """No finite-distance divisor is shared by delta0 and sigma.delta0."""
        for sigma in (Perm([7, 2, 4, 1, 6, 3, 5]), Perm([2, 4, 1, 3, 6, 8, 5, 7]), Perm([1, 3, 2, 5, 4, 6])):
            d0 = finite_distance_divisors(DihedralStructure.standard(sigma.n))
            ds = finite_distance_divisors(DihedralStructure.of_perm(sigma))
            self.assertEqual(is_convergent(sigma), not (d0 & ds))


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8, 9])
def test_convergent_counts(n):
    assert len(enumerate_convergent(n)) == CONVERGENT_COUNTS[n]


@pytest.mark.parametrize("n", [5, 6, 7, 8, 9])
def test_self_dual_counts(n):
    classes = enumerate_convergent(n)
    assert sum(1 for c in classes if is_self_dual(c)) == SELF_DUAL_COUNTS[n]


def test_enumeration_is_sorted_and_canonical():
    classes = enumerate_convergent(7)
    assert classes == sorted(classes)
    assert all(canonical_config(c.rep) == c for c in classes)


def test_parallel_enumeration_matches_serial():
    assert enumerate_convergent(8, workers=2) == enumerate_convergent(8, workers=1)


def test_n8_classes_are_the_named_ones():
    named = {named_config(name) for name in (
        "8pi1", "8pi1v", "8pi2", "8pi3", "8pi4", "8pi4v", "8pi5", "8pi5v", "8pi6",
        "8pi7", "8pi7v", "8pi8", "8pi8v", "8pi9", "8pi9v", "8pi10", "8pi10v",
    )}
    assert named == set(enumerate_convergent(8))


def test_enumeration_rejects_out_of_range_sizes():
    with pytest.raises(ConfigurationError):
        enumerate_convergent(3)
    with pytest.raises(ConfigurationError):
        enumerate_convergent(14)


@pytest.mark.slow
@pytest.mark.parametrize("n", [10, 11])
def test_convergent_counts_large(n):
    assert len(enumerate_convergent(n, workers=4)) == CONVERGENT_COUNTS[n]


# ============================================================================
# FAMILIES
# ============================================================================


def test_pi_families_start_at_the_small_classes():
    assert pi_even_perm(2) == Perm([5, 2, 4, 1, 3])
    assert pi_even(2) == named_config("5pi")
    assert pi_odd(3) == named_config("6pi")
    assert pi_odd(4) == named_config("8pi8")
    assert pi_even(3) == named_config("7pi1v")


@pytest.mark.parametrize("m", [3, 4, 5])
def test_pi_families_are_convergent(m):
    assert is_convergent(pi_odd_perm(m))
    assert is_convergent(pi_even_perm(m))
    assert pi_odd(m).n == 2 * m
    assert pi_even(m).n == 2 * m + 1


# ============================================================================
# STABLE PARTITIONS
# ============================================================================


class TestStablePartitions(unittest.TestCase):
    """Stable partitions, divisor counts and half-integer orders."""

    def test_block_containing_one_is_stored(self):
        D = StablePartition.from_block(6, [3, 4, 5, 6])
        self.assertEqual(D.block, frozenset({1, 2}))
        self.assertEqual(D.complement, frozenset({3, 4, 5, 6}))

    def test_unstable_blocks_are_refused(self):
        with self.assertRaises(ConfigurationError):
            StablePartition.from_block(5, [1])
        with self.assertRaises(ConfigurationError):
            StablePartition.from_block(5, [1, 2, 3, 4])

    def test_counts(self):
        for n in range(4, 9):
            finite, infinite, total = divisor_counts(n)
            self.assertEqual(total, 2 ** (n - 1) - n - 1)
            self.assertEqual(finite, n * (n - 3) // 2)
            self.assertEqual(finite + infinite, total)
            self.assertEqual(len(all_stable_partitions(n)), total)

    def test_orders_are_integral_and_bounded(self):
        sigma = named_config("7pi1")
        delta, deltap = sigma.delta(), sigma.delta_prime()
        for D in all_stable_partitions(7):
            self.assertTrue(ord_f(delta, deltap, D).is_integral)
            self.assertLessEqual(indicator_sum(D, delta), HalfInt(7 - 2))
            self.assertIsInstance(ord_omega(deltap, D), HalfInt)

    def test_indicator_of_a_pair(self):
        D = StablePartition.from_block(4, [1, 2])
        self.assertEqual(indicator_ID(D, 1, 2), HalfInt(1))
        self.assertEqual(indicator_ID(D, 1, 3), HalfInt(0))
        with self.assertRaises(ValueError):
            indicator_ID(D, 2, 2)

    def test_form_has_simple_poles_on_finite_divisors(self):
        for n in (5, 6, 7):
            d0 = DihedralStructure.standard(n)
            for D in finite_distance_divisors(d0):
                self.assertEqual(ord_omega(d0, D), HalfInt.of(-1))
                self.assertEqual(ord_f(d0, d0, D), HalfInt.of(0))

    def test_infinite_divisor_counts(self):
        self.assertEqual([infinite_divisor_count(n) for n in (4, 5, 6)], [1, 5, 16])

    def test_half_integers(self):
        half = HalfInt(1)
        self.assertFalse(half.is_integral)
        self.assertEqual(half + half, HalfInt.of(1))
        self.assertEqual(float(HalfInt(-3)), -1.5)


def _count_blocks_off_the_cycle(n):
    """Blocks containing 1 of a stable partition that are not cyclic runs of 1..n."""
    count = 0
    for size in range(2, n - 1):
        for block in itertools.combinations(range(1, n + 1), size):
            if block[0] != 1:
                continue
            members = set(block)
            exits = sum(1 for i in members if i % n + 1 not in members)
            count += exits != 1
    return count


@pytest.mark.parametrize("n", range(4, 13))
def test_infinite_divisor_count_against_brute_force(n):
    expected = 2 ** (n - 1) - n * (n - 1) // 2 - 1
    assert infinite_divisor_count(n) == expected
    assert _count_blocks_off_the_cycle(n) == expected


# ============================================================================
# PRODUCTS
# ============================================================================


def _example_pairs():
    pair1 = tuple(DihedralStructure(w) for w in PRODUCT_EXAMPLE["pair1"])
    pair2 = tuple(DihedralStructure(w) for w in PRODUCT_EXAMPLE["pair2"])
    return pair1, pair2, PRODUCT_EXAMPLE["t1"], PRODUCT_EXAMPLE["t2"]


def test_product_of_n5_and_n6_is_8pi1():
    pair1, pair2, t1, t2 = _example_pairs()
    result = product(pair1, pair2, t1, t2)
    assert result.n == 8
    assert result.config() == named_config(PRODUCT_EXAMPLE["result"])
    assert is_convergent(result.sigma)


def test_product_pair_is_relabelled_to_delta0():
    pair1, pair2, t1, t2 = _example_pairs()
    alpha, alpha_prime = product(pair1, pair2, t1, t2).pair()
    assert alpha == DihedralStructure.standard(8)
    assert config_of_pair(alpha, alpha_prime) == named_config("8pi1")


def test_multipliability_is_symmetric_in_the_triple():
    pair1, _, t1, _ = _example_pairs()
    assert is_multipliable(pair1, t1)
    assert is_multipliable(pair1, tuple(reversed(t1)))
    assert not is_multipliable(pair1, ("p1", "p3", "p5"))


def test_product_refuses_non_consecutive_triples():
    pair1, pair2, _, t2 = _example_pairs()
    with pytest.raises(ProductError):
        product(pair1, pair2, ("p1", "p3", "p5"), t2)


# ============================================================================
# LISTINGS
# ============================================================================


def test_text_listing_round_trips():
    classes = enumerate_convergent(7)
    text = dump_configs(classes, "text")
    assert text.splitlines()[0].startswith("7;")
    assert load_configs(text) == classes


def test_json_listing_carries_duals():
    classes = enumerate_convergent(7)
    records = json.loads(dump_configs(classes, "json"))
    assert len(records) == 5
    assert sum(1 for r in records if r["self_dual"]) == 1
    assert load_configs(json.dumps(records)) == classes


def test_listing_rejects_inconsistent_sizes():
    with pytest.raises(ConfigurationError):
        load_configs("6;5,2,4,1,3\n")


def test_config_class_to_dict():
    c = named_config("5pi")
    assert isinstance(c, ConfigClass)
    assert c.to_dict() == {"n": 5, "rep": [1, 3, 5, 2, 4]}
