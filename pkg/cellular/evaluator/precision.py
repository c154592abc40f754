"""
Explicit-precision binary floats on top of mpmath's raw mpf tuples.

Every BigFloat carries its own mantissa size; arithmetic rounds to nearest
at the smaller precision of the two operands.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Union

from mpmath.libmp import (
    from_float,
    from_int,
    from_rational,
    from_str,
    mpf_abs,
    mpf_add,
    mpf_cmp,
    mpf_div,
    mpf_mul,
    mpf_neg,
    mpf_sub,
    round_nearest,
    to_float,
    to_str,
)

Number = Union["BigFloat", int, float, Fraction, str]


def bits_for_digits(digits: int) -> int:
    return int(math.ceil(digits * math.log2(10))) + 4


def digits_for_bits(bits: int) -> int:
    return max(1, int(bits / math.log2(10)))


class BigFloat:
    """An mpf value with a stated precision in bits."""

    __slots__ = ("_mpf", "bits")

    def __init__(self, raw: Any, bits: int):
        if bits < 2:
            raise ValueError(f"Precision must be at least 2 bits, got {bits}")
        self._mpf = raw
        self.bits = int(bits)

    @classmethod
    def of(cls, value: Any, bits: int) -> "BigFloat":
        """Round an int, float, Fraction, decimal string or mpmath number to ``bits``."""
        if isinstance(value, BigFloat):
            return cls(mpf_add(value._mpf, from_int(0), bits, round_nearest), bits)
        if hasattr(value, "_mpf_"):
            return cls(mpf_add(value._mpf_, from_int(0), bits, round_nearest), bits)
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return cls(from_int(value, bits, round_nearest), bits)
        if isinstance(value, float):
            return cls(mpf_add(from_float(value), from_int(0), bits, round_nearest), bits)
        if isinstance(value, Fraction):
            return cls(from_rational(value.numerator, value.denominator, bits, round_nearest), bits)
        if isinstance(value, str):
            return cls(from_str(value, bits, round_nearest), bits)
        raise TypeError(f"Cannot build a BigFloat from {type(value).__name__}")

    @classmethod
    def from_digits(cls, value: Any, digits: int) -> "BigFloat":
        return cls.of(value, bits_for_digits(digits))

    @property
    def digits(self) -> int:
        return digits_for_bits(self.bits)

    def _coerce(self, other: Number) -> "BigFloat":
        return other if isinstance(other, BigFloat) else BigFloat.of(other, self.bits)

    def _binary(self, other: Number, op: Any) -> "BigFloat":
        other = self._coerce(other)
        bits = min(self.bits, other.bits)
        return BigFloat(op(self._mpf, other._mpf, bits, round_nearest), bits)

    def __add__(self, other: Number) -> "BigFloat":
        return self._binary(other, mpf_add)

    __radd__ = __add__

    def __sub__(self, other: Number) -> "BigFloat":
        return self._binary(other, mpf_sub)

    def __rsub__(self, other: Number) -> "BigFloat":
        return self._coerce(other)._binary(self, mpf_sub)

    def __mul__(self, other: Number) -> "BigFloat":
        return self._binary(other, mpf_mul)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "BigFloat":
        return self._binary(other, mpf_div)

    def __rtruediv__(self, other: Number) -> "BigFloat":
        return self._coerce(other)._binary(self, mpf_div)

    def __neg__(self) -> "BigFloat":
        return BigFloat(mpf_neg(self._mpf), self.bits)

    def __abs__(self) -> "BigFloat":
        return BigFloat(mpf_abs(self._mpf), self.bits)

    def _cmp(self, other: Number) -> int:
        return mpf_cmp(self._mpf, self._coerce(other)._mpf)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (BigFloat, int, float, Fraction, str)):
            return NotImplemented
        return self._cmp(other) == 0

    def __lt__(self, other: Number) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: Number) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: Number) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: Number) -> bool:
        return self._cmp(other) >= 0

    def __hash__(self) -> int:
        return hash((self._mpf, self.bits))

    def __float__(self) -> float:
        return to_float(self._mpf)

    def to_mpf(self, ctx: Any) -> Any:
        """The value as an mpf of ``ctx`` (rounded to the context's precision)."""
        return ctx.make_mpf(self._mpf)

    def to_decimal(self, digits: Union[int, None] = None) -> str:
        return to_str(self._mpf, digits or self.digits)

    def __str__(self) -> str:
        return self.to_decimal()

    def __repr__(self) -> str:
        return f"BigFloat({self.to_decimal()}, bits={self.bits})"
