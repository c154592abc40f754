"""
Reference data for convergent configurations in low dimension.

Class counts, named representatives with their duals, the observed
vanishing patterns of I(N) and the closed forms of I(0). Representatives
are matched by canonical class, never by their printed permutation, since
the printed ones are not always lexicographic minima.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Mapping, Optional, Tuple

import mpmath

from cellular.configurations.dihedral import canonical_config
from cellular.configurations.models import ConfigClass, ConfigurationError, Perm
from cellular.evaluator.constants import named_value

# ============================================================================
# COUNTS
# ============================================================================

CONVERGENT_COUNTS: Dict[int, int] = {4: 0, 5: 1, 6: 1, 7: 5, 8: 17, 9: 105, 10: 771, 11: 7028}
SELF_DUAL_COUNTS: Dict[int, int] = {5: 1, 6: 1, 7: 1, 8: 3, 9: 4}

# ============================================================================
# NAMED REPRESENTATIVES
# ============================================================================

# A trailing "v" names the dual class.
NAMED_CONFIGS: Dict[str, Tuple[int, ...]] = {
    "5pi": (5, 2, 4, 1, 3),
    "6pi": (6, 2, 4, 1, 5, 3),
    "7pi1": (7, 2, 4, 1, 6, 3, 5),
    "7pi1v": (7, 2, 5, 1, 4, 6, 3),
    "7pi2": (7, 2, 4, 6, 1, 3, 5),
    "7pi2v": (7, 3, 6, 2, 5, 1, 4),
    "7pi3": (7, 2, 5, 1, 3, 6, 4),
    "8pi1": (8, 2, 4, 1, 5, 7, 3, 6),
    "8pi1v": (8, 2, 5, 1, 7, 4, 6, 3),
    "8pi2": (8, 2, 4, 1, 6, 3, 7, 5),
    "8pi3": (8, 2, 5, 1, 7, 3, 6, 4),
    "8pi4": (8, 2, 4, 7, 1, 6, 3, 5),
    "8pi4v": (8, 2, 4, 7, 3, 6, 1, 5),
    "8pi5": (8, 2, 5, 3, 7, 1, 6, 4),
    "8pi5v": (8, 2, 6, 1, 5, 3, 7, 4),
    "8pi6": (8, 3, 6, 1, 4, 7, 2, 5),
    "8pi7": (8, 2, 4, 6, 1, 3, 7, 5),
    "8pi7v": (8, 2, 5, 1, 6, 3, 7, 4),
    "8pi8": (8, 2, 5, 1, 6, 4, 7, 3),
    "8pi8v": (8, 2, 4, 1, 7, 5, 3, 6),
    "8pi9": (8, 2, 5, 7, 3, 1, 6, 4),
    "8pi9v": (8, 3, 6, 1, 5, 2, 7, 4),
    "8pi10": (8, 2, 5, 7, 3, 6, 1, 4),
    "8pi10v": (8, 2, 5, 7, 4, 1, 6, 3),
}

SELF_DUAL_NAMES = ("5pi", "6pi", "7pi3", "8pi2", "8pi3", "8pi6")

N9_IRREDUCIBLE: List[Tuple[int, ...]] = [
    (9, 2, 4, 1, 8, 6, 3, 5, 7),
    (9, 2, 4, 6, 8, 1, 3, 5, 7),
    (9, 2, 5, 8, 1, 4, 7, 3, 6),
    (9, 2, 6, 1, 5, 7, 4, 8, 3),
    (9, 4, 8, 3, 7, 2, 6, 1, 5),
]
N9_SELF_DUAL: List[Tuple[int, ...]] = [
    (9, 2, 4, 1, 5, 7, 3, 8, 6),
    (9, 2, 4, 1, 5, 8, 6, 3, 7),
    (9, 2, 4, 6, 1, 7, 5, 8, 3),
    (9, 2, 4, 7, 5, 1, 6, 8, 3),
]
N10_EXAMPLES: Dict[str, Tuple[int, ...]] = {
    "double_vanishing": (10, 2, 4, 1, 6, 8, 5, 3, 9, 7),
    "vanishing_in_middle": (10, 2, 4, 1, 6, 3, 8, 5, 9, 7),
}

# ============================================================================
# LINEAR FORMS
# ============================================================================

# Constants that occur with non-zero coefficient in I(N), per column.
VANISHING_COLUMNS: Dict[int, Tuple[str, ...]] = {
    5: ("1", "zeta2"),
    6: ("1", "zeta2", "zeta3"),
    7: ("1", "zeta2", "zeta3", "zeta4"),
    8: ("1", "zeta2", "zeta3", "zeta4", "zeta5", "zeta2*zeta3"),
}

_N7_PATTERN = (True, True, False, True)
_N8_PATTERN = (True, True, True, False, True, True)

VANISHING_PATTERNS: Dict[str, Tuple[bool, ...]] = {
    "5pi": (True, True),
    "6pi": (True, False, True),
    **{name: _N7_PATTERN for name in ("7pi1", "7pi1v", "7pi2", "7pi2v", "7pi3")},
    **{
        name: _N8_PATTERN
        for name in NAMED_CONFIGS
        if name.startswith("8") and name not in ("8pi1", "8pi1v", "8pi8", "8pi8v")
    },
    "8pi1": (True, True, True, False, False, True),
    "8pi1v": (True, True, True, False, False, True),
    "8pi8": (True, False, True, False, True, False),
    "8pi8v": (True, True, False, False, True, True),
}

_Q = Fraction

# I(0) as a combination of named constants, with the sign that makes it positive.
I0_TABLE: Dict[str, Dict[str, Fraction]] = {
    "5pi": {"zeta2": _Q(1)},
    "6pi": {"zeta3": _Q(2)},
    "7pi1": {"zeta2^2": _Q(17, 10)},
    "7pi2": {"zeta2^2": _Q(27, 10)},
    "7pi3": {"zeta2^2": _Q(1)},
    "7pi1v": {"zeta2^2": _Q(7, 10)},
    "7pi2v": {"zeta2^2": _Q(3, 10)},
    "8pi1": {"zeta2*zeta3": _Q(2)},
    "8pi1v": {"zeta2*zeta3": _Q(2)},
    "8pi2": {"zeta5": _Q(1), "zeta2*zeta3": _Q(1)},
    "8pi3": {"zeta5": _Q(1), "zeta2*zeta3": _Q(1)},
    "8pi4": {"zeta5": _Q(9), "zeta2*zeta3": _Q(-2)},
    "8pi5": {"zeta5": _Q(9), "zeta2*zeta3": _Q(-2)},
    "8pi4v": {"zeta5": _Q(9), "zeta2*zeta3": _Q(-4)},
    "8pi5v": {"zeta5": _Q(9), "zeta2*zeta3": _Q(-4)},
    "8pi6": {"zeta5": _Q(16), "zeta2*zeta3": _Q(-8)},
    "8pi7": {"zeta5": _Q(1), "zeta2*zeta3": _Q(3)},
    "8pi7v": {"zeta5": _Q(-1), "zeta2*zeta3": _Q(1)},
    "8pi8": {"zeta5": _Q(2)},
    "8pi8v": {"zeta5": _Q(2), "zeta2*zeta3": _Q(4)},
    "8pi9": {"zeta5": _Q(-7), "zeta2*zeta3": _Q(6)},
    "8pi9v": {"zeta5": _Q(-7), "zeta2*zeta3": _Q(4)},
    "8pi10": {"zeta5": _Q(-8), "zeta2*zeta3": _Q(5)},
    "8pi10v": {"zeta5": _Q(8), "zeta2*zeta3": _Q(-3)},
}

# Generalised family on (8,2,7,3,6,4,1,5): a_1..a_7 with a_8 completed on
# H_sigma, the free b on {5, 8}, and the closed form of the integral.
N8_FAMILY_SIGMA = (8, 2, 7, 3, 6, 4, 1, 5)
N8_FAMILY_VALUES: List[Tuple[Tuple[int, ...], int, Dict[str, Fraction]]] = [
    ((1, 0, 0, 1, 0, 0, 0), 0, {"zeta5": _Q(2), "1": _Q(-2)}),
    ((2, 0, 0, 2, 0, 0, 0), 0, {"zeta5": _Q(2), "1": _Q(-33, 16)}),
    ((3, 2, 0, 3, 2, 0, 2), 2, {"zeta5": _Q(60), "1": _Q(-161263, 2592)}),
]


# Gluing the n=5 pair along (p3, p4, p5) to the n=6 pair along (q4, q1, q5)
# gives the class 8pi1.
PRODUCT_EXAMPLE = {
    "pair1": (("p1", "p2", "p3", "p4", "p5"), ("p2", "p4", "p1", "p3", "p5")),
    "pair2": (("q1", "q2", "q3", "q4", "q5", "q6"), ("q6", "q2", "q4", "q1", "q5", "q3")),
    "t1": ("p3", "p4", "p5"),
    "t2": ("q4", "q1", "q5"),
    "result": "8pi1",
}


def named_config(name: str) -> ConfigClass:
    """Canonical class of a named representative such as ``"7pi1v"``."""
    try:
        return canonical_config(Perm(NAMED_CONFIGS[name]))
    except KeyError:
        raise ConfigurationError(
            f"Unknown configuration name {name!r}; known names: {', '.join(NAMED_CONFIGS)}"
        ) from None


def resolve_config(text: str) -> ConfigClass:
    """A named representative or a comma-separated permutation."""
    if text in NAMED_CONFIGS:
        return named_config(text)
    return canonical_config(Perm.parse(text))


def name_of(c: ConfigClass) -> Optional[str]:
    for name in NAMED_CONFIGS:
        if named_config(name) == c:
            return name
    return None


def combination_value(terms: Mapping[str, Fraction], ctx: Any = None) -> Any:
    """Numerical value of sum q * constant at the precision of ``ctx``."""
    ctx = ctx or mpmath.mp
    return ctx.fsum(ctx.mpf(q.numerator) / q.denominator * named_value(ctx, name) for name, q in terms.items())


def i0_value(name: str, ctx: Any = None) -> Any:
    return combination_value(I0_TABLE[name], ctx)


def format_combination(terms: Mapping[str, Fraction]) -> str:
    """``{"zeta5": 9, "zeta2*zeta3": -2}`` as ``9 zeta5 - 2 zeta2*zeta3``."""
    parts: List[str] = []
    for name, q in terms.items():
        size = abs(Fraction(q))
        if name == "1":
            text = str(size)
        else:
            text = name if size == 1 else f"{size} {name}"
        if not parts:
            parts.append(f"-{text}" if q < 0 else text)
        else:
            parts.append(f"{'-' if q < 0 else '+'} {text}")
    return " ".join(parts) if parts else "0"


@lru_cache(maxsize=None)
def _listed_tags() -> Dict[ConfigClass, Tuple[str, ...]]:
    tags: Dict[ConfigClass, List[str]] = {}
    for values in N9_IRREDUCIBLE:
        tags.setdefault(canonical_config(Perm(values)), []).append("irreducible")
    for values in N9_SELF_DUAL:
        tags.setdefault(canonical_config(Perm(values)), []).append("reference self-dual")
    for label, values in N10_EXAMPLES.items():
        tags.setdefault(canonical_config(Perm(values)), []).append(label.replace("_", " "))
    return {c: tuple(names) for c, names in tags.items()}


def reference_row(c: ConfigClass) -> Dict[str, Any]:
    """
    What the tables know about a class: its name, which constants occur in
    I(N) (column -> non-zero), the closed form of I(0) and listing tags.
    """
    name = name_of(c)
    row: Dict[str, Any] = {"name": name, "pattern": None, "I0": None, "tags": list(_listed_tags().get(c, ()))}
    if name is not None:
        columns = VANISHING_COLUMNS[c.rep.n]
        row["pattern"] = dict(zip(columns, VANISHING_PATTERNS[name]))
        row["I0"] = format_combination(I0_TABLE[name])
    return row
