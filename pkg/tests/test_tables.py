"""
Tests for the reference tables of named classes.
"""

import mpmath
import pytest

from cellular.configurations import ConfigurationError, dual, enumerate_convergent, is_convergent, is_self_dual
from cellular.configurations import Perm
from cellular.forms import homogeneity_system, is_convergent_params
from cellular.tables import (
    CONVERGENT_COUNTS,
    I0_TABLE,
    N8_FAMILY_SIGMA,
    N8_FAMILY_VALUES,
    N9_IRREDUCIBLE,
    N9_SELF_DUAL,
    NAMED_CONFIGS,
    SELF_DUAL_NAMES,
    VANISHING_COLUMNS,
    VANISHING_PATTERNS,
    combination_value,
    format_combination,
    i0_value,
    name_of,
    named_config,
    reference_row,
    resolve_config,
)


def test_every_named_class_is_convergent():
    for name in NAMED_CONFIGS:
        assert is_convergent(named_config(name).rep), name


def test_self_dual_names():
    for name in NAMED_CONFIGS:
        assert is_self_dual(named_config(name)) == (name in SELF_DUAL_NAMES), name


def test_named_duals_point_at_each_other():
    for name in NAMED_CONFIGS:
        if name.endswith("v"):
            assert dual(named_config(name[:-1])) == named_config(name)


def test_unknown_names_are_refused():
    with pytest.raises(ConfigurationError):
        named_config("9pi1")


def test_resolve_accepts_names_and_permutations():
    assert resolve_config("5pi") == resolve_config("5,2,4,1,3")
    assert name_of(resolve_config("6,2,4,1,5,3")) == "6pi"
    assert name_of(resolve_config("1,3,2,5,4,7,6")) is None


def test_n9_tables_hold_convergent_classes():
    classes = set(enumerate_convergent(9))
    for values in N9_IRREDUCIBLE + N9_SELF_DUAL:
        c = resolve_config(",".join(map(str, values)))
        assert c in classes
    for values in N9_SELF_DUAL:
        assert is_self_dual(resolve_config(",".join(map(str, values))))
    assert len(classes) == CONVERGENT_COUNTS[9]


def test_vanishing_patterns_match_their_columns():
    for name, pattern in VANISHING_PATTERNS.items():
        assert len(pattern) == len(VANISHING_COLUMNS[int(name[0])]), name


def test_i0_values():
    ctx = mpmath.MPContext()
    ctx.dps = 40
    assert abs(i0_value("5pi", ctx) - ctx.zeta(2)) < ctx.mpf(10) ** -35
    assert abs(i0_value("6pi", ctx) - 2 * ctx.zeta(3)) < ctx.mpf(10) ** -35
    for name in I0_TABLE:
        assert i0_value(name, ctx) > 0, name


def test_n8_family_parameters_converge():
    system = homogeneity_system(N8_FAMILY_SIGMA, None)
    sigma = Perm(N8_FAMILY_SIGMA)
    for a, b, closed_form in N8_FAMILY_VALUES:
        params = system.solve(system.complete_a(list(a) + [None]), b)
        assert params.is_homogeneous()
        ok, witness = is_convergent_params(sigma, params)
        assert ok, witness
        assert combination_value(closed_form) > 0


def test_combinations_print_with_signs():
    assert format_combination(I0_TABLE["7pi1"]) == "17/10 zeta2^2"
    assert format_combination(I0_TABLE["8pi4"]) == "9 zeta5 - 2 zeta2*zeta3"
    assert format_combination(I0_TABLE["8pi7v"]) == "-zeta5 + zeta2*zeta3"
    assert format_combination(N8_FAMILY_VALUES[0][2]) == "2 zeta5 - 2"
    assert format_combination({}) == "0"


def test_reference_row_of_a_named_class():
    row = reference_row(named_config("8pi8"))
    assert row["name"] == "8pi8"
    assert row["I0"] == "2 zeta5"
    assert list(row["pattern"]) == list(VANISHING_COLUMNS[8])
    assert row["pattern"]["zeta5"] is True
    assert row["pattern"]["zeta2*zeta3"] is False
    assert row["tags"] == []


def test_reference_row_of_listed_classes():
    row = reference_row(resolve_config(",".join(map(str, N9_IRREDUCIBLE[0]))))
    assert row["name"] is None
    assert row["pattern"] is None
    assert "irreducible" in row["tags"]
    assert reference_row(resolve_config("10,2,4,1,6,8,5,3,9,7"))["tags"] == ["double vanishing"]
    assert reference_row(resolve_config("1,3,5,2,4"))["tags"] == []
