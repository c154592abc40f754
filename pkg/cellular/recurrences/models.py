"""
Data models for polynomial-coefficient recurrences and exact sequences.

A recurrence of order k is stored as k + 1 dense coefficient lists
(constant term first) and read as

    p_0(n) u_n + p_1(n) u_{n+1} + ... + p_k(n) u_{n+k} = 0,   n >= n0.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import sympy

Rational = Union[int, Fraction]


class RecurrenceError(ValueError):
    """Raised for malformed recurrences or a vanishing leading coefficient."""


def _fraction(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    return Fraction(value)


def _trim(coeffs: Iterable[Any]) -> Tuple[Fraction, ...]:
    values = [_fraction(c) for c in coeffs]
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: Union[str, int]) -> Fraction:
    return Fraction(str(text))


def poly_eval(coeffs: Sequence[Fraction], n: Rational) -> Fraction:
    """Horner evaluation of a dense coefficient list at n."""
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * n + c
    return acc


class PolyRecurrence:
    """Linear recurrence with rational polynomial coefficients."""

    __slots__ = ("coeffs", "n0")

    def __init__(self, coeffs: Sequence[Sequence[Rational]], n0: int = 0):
        if len(coeffs) < 2:
            raise RecurrenceError("A recurrence needs at least two coefficient polynomials")
        self.coeffs: Tuple[Tuple[Fraction, ...], ...] = tuple(_trim(p) for p in coeffs)
        if not self.coeffs[-1]:
            raise RecurrenceError("Leading coefficient polynomial is identically zero")
        self.n0 = int(n0)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        return max(len(p) for p in self.coeffs) - 1

    def evaluate(self, i: int, n: Rational) -> Fraction:
        """p_i(n)."""
        return poly_eval(self.coeffs[i], n)

    def to_sympy(self, t: Optional[sympy.Symbol] = None) -> List[sympy.Poly]:
        t = t or sympy.Symbol("n")
        return [
            sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p)] or [0], t, domain="QQ")
            for p in self.coeffs
        ]

    @classmethod
    def from_sympy(cls, polys: Sequence[sympy.Poly], n0: int = 0) -> "PolyRecurrence":
        return cls([[_fraction(c) for c in reversed(p.all_coeffs())] for p in polys], n0)

    def scaled(self, factor: Rational) -> "PolyRecurrence":
        factor = _fraction(factor)
        if factor == 0:
            raise RecurrenceError("Cannot scale a recurrence by zero")
        return PolyRecurrence([[c * factor for c in p] for p in self.coeffs], self.n0)

    def normalized(self) -> "PolyRecurrence":
        """Leading coefficient of p_k made positive."""
        return self.scaled(-1) if self.coeffs[-1][-1] < 0 else self

    def ratio_to(self, other: "PolyRecurrence") -> Optional[Fraction]:
        """lambda with self = lambda * other coefficientwise, or None."""
        if self.order != other.order:
            return None
        ratio: Optional[Fraction] = None
        for p, q in zip(self.coeffs, other.coeffs):
            if len(p) != len(q):
                return None
            for a, b in zip(p, q):
                if (a == 0) != (b == 0):
                    return None
                if a == 0:
                    continue
                r = a / b
                if ratio is None:
                    ratio = r
                elif ratio != r:
                    return None
        return ratio

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PolyRecurrence) and (self.coeffs, self.n0) == (other.coeffs, other.n0)

    def __hash__(self) -> int:
        return hash((self.coeffs, self.n0))

    def __repr__(self) -> str:
        return f"PolyRecurrence(order={self.order}, degree={self.degree}, n0={self.n0})"

    def __str__(self) -> str:
        n = sympy.Symbol("n")
        terms = []
        for i, p in enumerate(self.to_sympy(n)):
            shift = f"u(n+{i})" if i else "u(n)"
            terms.append(f"({sympy.factor(p.as_expr())})*{shift}")
        return " + ".join(terms) + " = 0"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "order": self.order,
            "n0": self.n0,
            "coeffs": [[format_rational(c) for c in p] for p in self.coeffs],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "PolyRecurrence":
        coeffs = [[parse_rational(c) for c in p] for p in data["coeffs"]]
        recurrence = cls(coeffs, int(data.get("n0", 0)))
        if "order" in data and int(data["order"]) != recurrence.order:
            raise RecurrenceError(f"Stated order {data['order']} does not match {recurrence.order} coefficient lists")
        return recurrence


class RationalSequence:
    """Exact terms u_{n0}, u_{n0+1}, ... of a sequence."""

    __slots__ = ("values", "n0")

    def __init__(self, values: Iterable[Rational], n0: int = 0):
        self.values: Tuple[Fraction, ...] = tuple(_fraction(v) for v in values)
        self.n0 = int(n0)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.values)

    def __getitem__(self, n: int) -> Fraction:
        """The term u_n (absolute index)."""
        i = n - self.n0
        if not 0 <= i < len(self.values):
            raise IndexError(f"u_{n} is outside the stored range")
        return self.values[i]

    @property
    def last_index(self) -> int:
        return self.n0 + len(self.values) - 1

    def scaled(self, factor: Rational) -> "RationalSequence":
        return RationalSequence((v * factor for v in self.values), self.n0)

    def __add__(self, other: "RationalSequence") -> "RationalSequence":
        if self.n0 != other.n0 or len(self) != len(other):
            raise ValueError("Sequences must share their index range")
        return RationalSequence((u + v for u, v in zip(self.values, other.values)), self.n0)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalSequence) and (self.values, self.n0) == (other.values, other.n0)

    def __repr__(self) -> str:
        head = ", ".join(str(v) for v in self.values[:5])
        return f"RationalSequence(n0={self.n0}, [{head}{', ...' if len(self) > 5 else ''}])"

    def to_dict(self) -> Dict[str, Any]:
        return {"n0": self.n0, "values": [format_rational(v) for v in self.values]}

    @classmethod
    def from_dict(cls, data: Union[Dict[str, Any], List[Any]]) -> "RationalSequence":
        if isinstance(data, list):
            return cls((parse_rational(v) for v in data), 0)
        return cls((parse_rational(v) for v in data["values"]), int(data.get("n0", 0)))


class LinearFormSpec:
    """
    I_N = scale * sum_i c_i(N) * constant_i.

    ``weight`` w is the exponent in the denominator bound d_N^w; ``epsilon``
    is the closed-form limit of |I_{N+1} / I_N| as an mpmath expression in a
    context (callable), when known.
    """

    def __init__(
        self,
        name: str,
        constants: Sequence[str],
        sequences: Sequence[RationalSequence],
        scale: Rational = 1,
        weight: int = 1,
        epsilon: Optional[Any] = None,
    ):
        if len(constants) != len(sequences):
            raise ValueError(f"{len(constants)} constants but {len(sequences)} coefficient sequences")
        lengths = {(s.n0, len(s)) for s in sequences}
        if len(lengths) > 1:
            raise ValueError(f"Coefficient sequences cover different ranges: {sorted(lengths)}")
        self.name = name
        self.constants = list(constants)
        self.sequences = list(sequences)
        self.scale = _fraction(scale)
        self.weight = weight
        self.epsilon = epsilon

    @property
    def n0(self) -> int:
        return self.sequences[0].n0

    @property
    def last_index(self) -> int:
        return self.sequences[0].last_index

    def coefficients(self, N: int) -> List[Fraction]:
        return [self.scale * s[N] for s in self.sequences]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "constants": self.constants,
            "scale": format_rational(self.scale),
            "weight": self.weight,
            "sequences": [s.to_dict() for s in self.sequences],
        }
