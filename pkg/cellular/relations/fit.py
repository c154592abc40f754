"""
Recovering rational linear forms from numerical values.

A value v is fitted against constants c_1..c_m by looking for a short integer
relation r_0 v + r_1 c_1 + ... + r_m c_m = 0; then v = sum (-r_i / r_0) c_i.
Answers are accepted only when the residual is below 10^(-0.6 digits) and
the height below 10^(digits / (3 m)); anything else is refused.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Union

import mpmath

from cellular.config import get_config
from cellular.evaluator.constants import named_constant
from cellular.evaluator.precision import BigFloat, bits_for_digits
from cellular.logger import get_logger
from cellular.relations.lattice import lattice_reduce

logger = get_logger(__name__)

Value = Union[BigFloat, str, int, Fraction, Any]


class PrecisionError(ValueError):
    """Raised when a fit is requested at a precision too low to be trusted."""


class ConstantBasis:
    """Named period constants at a working precision."""

    def __init__(self, names: Sequence[str], values: Sequence[BigFloat]):
        if len(names) != len(values):
            raise ValueError("Basis names and values differ in length")
        if not names:
            raise ValueError("A constant basis needs at least one constant")
        self.names = list(names)
        self.values = list(values)

    @classmethod
    def named(cls, spec: Union[str, Sequence[str]], digits: int) -> "ConstantBasis":
        """Parse ``"1,zeta2,zeta3"`` (or a list of names) and evaluate at ``digits`` + 10."""
        names = [s.strip() for s in spec.split(",")] if isinstance(spec, str) else list(spec)
        names = [name for name in names if name]
        return cls(names, [named_constant(name, digits + 10) for name in names])

    def __len__(self) -> int:
        return len(self.names)

    def __repr__(self) -> str:
        return f"ConstantBasis({self.names})"

    def to_dict(self) -> Dict[str, Any]:
        return {"names": self.names, "values": [v.to_decimal(30) for v in self.values]}


class Relation:
    """Integer relation r_0 v + sum r_i c_i = 0 with its residual."""

    def __init__(self, coefficients: Sequence[int], residual: Any, names: Sequence[str]):
        self.coefficients = _canonical(coefficients)
        self.residual = residual
        self.names = list(names)

    @property
    def height(self) -> int:
        return max(abs(c) for c in self.coefficients)

    def rationals(self) -> List[Fraction]:
        """Coefficients q_i with v = sum q_i c_i."""
        lead = self.coefficients[0]
        return [Fraction(-c, lead) for c in self.coefficients[1:]]

    def __repr__(self) -> str:
        return f"Relation({self.coefficients}, residual={mpmath.nstr(self.residual, 3)})"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "basis": self.names,
            "relation": self.coefficients,
            "coeffs": [f"{q.numerator}/{q.denominator}" for q in self.rationals()],
            "residual": mpmath.nstr(self.residual, 5),
            "height": self.height,
        }


def _canonical(coefficients: Sequence[int]) -> List[int]:
    ints = [int(c) for c in coefficients]
    g = math.gcd(*ints) or 1
    ints = [c // g for c in ints]
    first = next((c for c in ints if c), 0)
    return [-c for c in ints] if first < 0 else ints


def minimum_digits(basis_size: int) -> int:
    return get_config("RELATION_MIN_DIGITS_BASE", 20) + get_config("RELATION_MIN_DIGITS_PER_CONSTANT", 10) * basis_size


def height_bound(digits: int, basis_size: int) -> float:
    return 10.0 ** (digits / (3 * max(basis_size, 1)))


def _as_mpf(ctx: Any, value: Value) -> Any:
    if isinstance(value, BigFloat):
        return value.to_mpf(ctx)
    if isinstance(value, Fraction):
        return ctx.mpf(value.numerator) / value.denominator
    return ctx.mpf(value)


def _candidates_lll(ctx: Any, xs: List[Any], digits: int) -> List[List[int]]:
    scale = ctx.mpf(10) ** digits
    rows = []
    for i, x in enumerate(xs):
        row = [0] * len(xs)
        row[i] = 1
        rows.append(row + [int(ctx.nint(x * scale))])
    return [row[:-1] for row in lattice_reduce(rows)]


def _candidates_pslq(ctx: Any, xs: List[Any], digits: int, bound: float) -> List[List[int]]:
    tol = ctx.mpf(10) ** (-int(get_config("RELATION_ACCEPT_EXPONENT", 0.6) * digits))
    found = ctx.pslq(xs, tol=tol, maxcoeff=int(bound) + 1, maxsteps=20000)
    return [list(found)] if found else []


def fit_relation(
    v: Value,
    basis: ConstantBasis,
    digits: int,
    method: str = "lll",
) -> Optional[Relation]:
    """
    The accepted relation between ``v`` and the basis, or None when no
    relation passes the residual and height thresholds.
    """
    if method not in ("lll", "pslq"):
        raise ValueError(f"Unknown relation method {method!r}")
    needed = minimum_digits(len(basis))
    if digits < needed:
        raise PrecisionError(f"A basis of {len(basis)} constants needs at least {needed} digits, got {digits}")
    if isinstance(v, BigFloat) and v.digits < digits:
        raise PrecisionError(f"Value carries {v.digits} digits, fewer than the requested {digits}")
    lower = [c for c in basis.values if c.digits < digits]
    if lower:
        raise PrecisionError(f"Basis constants carry fewer than {digits} digits")

    ctx = mpmath.MPContext()
    ctx.dps = digits
    xs = [_as_mpf(ctx, v)] + [c.to_mpf(ctx) for c in basis.values]
    threshold = ctx.mpf(10) ** (-get_config("RELATION_ACCEPT_EXPONENT", 0.6) * digits)
    bound = height_bound(digits, len(basis))
    if abs(xs[0]) < threshold:
        return Relation([1] + [0] * len(basis), abs(xs[0]), basis.names)
    if method == "pslq":
        candidates = _candidates_pslq(ctx, xs, digits, bound)
    else:
        candidates = _candidates_lll(ctx, xs, digits)

    for coefficients in candidates:
        if coefficients[0] == 0 or max(abs(c) for c in coefficients) > bound:
            continue
        residual = abs(ctx.fsum(c * x for c, x in zip(coefficients, xs))) / abs(coefficients[0])
        if residual < threshold:
            relation = Relation(coefficients, residual, basis.names)
            logger.debug("Accepted relation %s", relation)
            return relation
    logger.warning("No relation of height <= %.3g with residual < 1e-%d", float(bound), int(0.6 * digits))
    return None


def fit_linear_form(
    v: Value,
    basis: ConstantBasis,
    digits: Optional[int] = None,
    method: str = "lll",
) -> Optional[List[Fraction]]:
    """Rationals q_i with |v - sum q_i c_i| < 10^(-0.6 digits), or None."""
    digits = digits or get_config("DEFAULT_DIGITS", 30)
    relation = fit_relation(v, basis, digits, method)
    return relation.rationals() if relation else None


def value_at(v: Value, digits: int) -> BigFloat:
    """Convenience: a value as a BigFloat carrying ``digits`` digits."""
    return BigFloat.of(v, bits_for_digits(digits))
