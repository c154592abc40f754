"""
Tests for the global configuration module.
"""

import unittest

from cellular.config import get_config, load_config, reset_config, update_config


class TestConfig(unittest.TestCase):
    """load_config, update_config, get_config and reset_config."""

    def test_defaults(self):
        config = load_config()
        self.assertEqual(config["QUAD_START_LEVEL"], 3)
        self.assertEqual(config["FAST_PATH_MAX_DIGITS"], 15)
        self.assertEqual(config["RELATION_ACCEPT_EXPONENT"], 0.6)
        self.assertEqual(config["MC_MAX_DIMENSION"], 6)

    def test_load_returns_a_copy(self):
        config = load_config()
        config["QUAD_MAX_LEVEL"] = 99
        self.assertEqual(get_config("QUAD_MAX_LEVEL"), 8)

    def test_update_and_reset(self):
        update_config("MC_SCRAMBLES", 4)
        self.assertEqual(get_config("MC_SCRAMBLES"), 4)
        reset_config()
        self.assertEqual(get_config("MC_SCRAMBLES"), 16)

    def test_unknown_keys(self):
        with self.assertRaises(KeyError):
            update_config("NO_SUCH_KEY", 1)
        self.assertEqual(get_config("NO_SUCH_KEY", "fallback"), "fallback")


def test_minimum_digits_follow_configuration():
    from cellular.relations import minimum_digits

    update_config("RELATION_MIN_DIGITS_PER_CONSTANT", 5)
    assert minimum_digits(2) == 30


def test_raised_minimum_refuses_fits():
    import pytest

    from cellular.evaluator import named_constant
    from cellular.relations import ConstantBasis, PrecisionError, fit_relation

    update_config("RELATION_MIN_DIGITS_BASE", 80)
    with pytest.raises(PrecisionError):
        fit_relation(named_constant("zeta5", 70), ConstantBasis.named("1,zeta5", 60), 60)
