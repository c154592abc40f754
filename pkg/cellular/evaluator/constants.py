"""
High-precision period constants and the names used to refer to them.

Names: "1", "pi", "zetaK" (K >= 2), products "a*b" and powers "a^k",
e.g. "zeta2*zeta3" or "zeta2^2".
"""
from __future__ import annotations

import re
from functools import lru_cache
from typing import Any

import mpmath

from cellular.evaluator.precision import BigFloat, bits_for_digits

MAX_CONSTANT_DIGITS = 10000

# 50-digit reference values
REFERENCE_50 = {
    "pi": "3.1415926535897932384626433832795028841971693993751",
    "zeta2": "1.6449340668482264364724151666460251892189499012068",
    "zeta3": "1.2020569031595942853997381615114499907649862923405",
    "zeta5": "1.0369277551433699263313654864570341680570809195019",
}

_ZETA = re.compile(r"^zeta(\d+)$")


def _check_digits(digits: int) -> None:
    if not 1 <= digits <= MAX_CONSTANT_DIGITS:
        raise ValueError(f"Constants are available for 1..{MAX_CONSTANT_DIGITS} digits, got {digits}")


@lru_cache(maxsize=128)
def const_zeta(s: int, digits: int) -> BigFloat:
    """zeta(s) correct to ``digits`` decimal digits."""
    if s < 2:
        raise ValueError(f"zeta(s) needs an integer s >= 2, got {s}")
    _check_digits(digits)
    ctx = mpmath.MPContext()
    ctx.dps = digits + 10
    return BigFloat.of(ctx.zeta(s), bits_for_digits(digits))


@lru_cache(maxsize=16)
def const_pi(digits: int) -> BigFloat:
    _check_digits(digits)
    ctx = mpmath.MPContext()
    ctx.dps = digits + 10
    return BigFloat.of(ctx.pi, bits_for_digits(digits))


def named_value(ctx: Any, name: str) -> Any:
    """Value of a named constant as an mpf of ``ctx``."""
    name = name.strip().replace(" ", "")
    if "*" in name:
        value = ctx.mpf(1)
        for part in name.split("*"):
            value *= named_value(ctx, part)
        return value
    if "^" in name:
        base, power = name.rsplit("^", 1)
        return named_value(ctx, base) ** int(power)
    if name == "1":
        return ctx.mpf(1)
    if name == "pi":
        return +ctx.pi
    match = _ZETA.match(name)
    if match and int(match.group(1)) >= 2:
        return ctx.zeta(int(match.group(1)))
    raise ValueError(f"Unknown constant {name!r}")


def named_constant(name: str, digits: int) -> BigFloat:
    _check_digits(digits)
    ctx = mpmath.MPContext()
    ctx.dps = digits + 10
    return BigFloat.of(named_value(ctx, name), bits_for_digits(digits))
