"""
Factored rational functions over a fixed alphabet of linear and product factors.

Three coordinate frames are used:
  - "z": points z_1..z_n on the projective line, factors z_i - z_j;
  - "simplicial": t_1..t_l with factors t_i, 1 - t_i and t_j - t_i;
  - "cubical": x_1..x_l with factors x_i, 1 - x_i, 1 - x_i...x_j and the
    nested factor 1 - (1 - x_i x_j) x_k.

Nothing is ever expanded; products and quotients only add exponents.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import sympy

FRAMES = ("z", "simplicial", "cubical")

KIND_FRAME = {
    "z": "z",
    "t": "simplicial",
    "one_minus_t": "simplicial",
    "t_diff": "simplicial",
    "x": "cubical",
    "one_minus_x": "cubical",
    "one_minus_xprod": "cubical",
    "nested": "cubical",
}
KIND_ORDER = {kind: i for i, kind in enumerate(KIND_FRAME)}
KIND_ARITY = {
    "z": 2,
    "t": 1,
    "one_minus_t": 1,
    "t_diff": 2,
    "x": 1,
    "one_minus_x": 1,
    "one_minus_xprod": 2,
    "nested": 3,
}


class FrameError(ValueError):
    """Raised when factors or operands belong to the wrong coordinate frame."""


class Factor:
    """
    One letter of the alphabet.

    kinds and values:
        z(i, j)               z_i - z_j, i < j
        t(i)                  t_i
        one_minus_t(i)        1 - t_i
        t_diff(i, j)          t_j - t_i, i < j
        x(i)                  x_i
        one_minus_x(i)        1 - x_i
        one_minus_xprod(i, j) 1 - x_i x_{i+1} ... x_j, i < j
        nested(i, j, k)       1 - (1 - x_i x_j) x_k
    """

    __slots__ = ("kind", "idx")

    def __init__(self, kind: str, *idx: int):
        if kind not in KIND_FRAME:
            raise FrameError(f"Unknown factor kind {kind!r}")
        if len(idx) != KIND_ARITY[kind]:
            raise FrameError(f"Factor {kind} takes {KIND_ARITY[kind]} indices, got {idx}")
        if kind in ("z", "t_diff", "one_minus_xprod") and not idx[0] < idx[1]:
            raise FrameError(f"Factor {kind}{idx} needs increasing indices")
        if kind == "nested" and (idx[0] >= idx[1] or idx[2] in idx[:2]):
            raise FrameError(f"Nested factor needs i < j and k outside {{i, j}}, got {idx}")
        self.kind = kind
        self.idx = tuple(int(i) for i in idx)

    @property
    def frame(self) -> str:
        return KIND_FRAME[self.kind]

    def variables(self) -> Tuple[int, ...]:
        """Coordinate indices the factor depends on."""
        if self.kind == "one_minus_xprod":
            return tuple(range(self.idx[0], self.idx[1] + 1))
        return self.idx

    def value(self, coords: Sequence[Any]) -> Any:
        """Evaluate at ``coords`` (coordinate i at position i - 1); exact for Fractions."""
        k, idx = self.kind, self.idx

        def c(i: int) -> Any:
            return coords[i - 1]

        if k == "z":
            return c(idx[0]) - c(idx[1])
        if k in ("t", "x"):
            return c(idx[0])
        if k in ("one_minus_t", "one_minus_x"):
            return 1 - c(idx[0])
        if k == "t_diff":
            return c(idx[1]) - c(idx[0])
        if k == "one_minus_xprod":
            return 1 - reduce(lambda acc, i: acc * c(i), range(idx[0] + 1, idx[1] + 1), c(idx[0]))
        return 1 - (1 - c(idx[0]) * c(idx[1])) * c(idx[2])

    def to_sympy(self, symbols: Sequence[sympy.Symbol]) -> sympy.Expr:
        return self.value(symbols)

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return KIND_ORDER[self.kind], self.idx

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Factor) and (self.kind, self.idx) == (other.kind, other.idx)

    def __hash__(self) -> int:
        return hash((self.kind, self.idx))

    def __lt__(self, other: "Factor") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"Factor({self.kind!r}, {', '.join(str(i) for i in self.idx)})"

    def __str__(self) -> str:
        k, idx = self.kind, self.idx
        if k == "z":
            return f"(z{idx[0]}-z{idx[1]})"
        if k in ("t", "x"):
            return f"{k}{idx[0]}"
        if k == "one_minus_t":
            return f"(1-t{idx[0]})"
        if k == "one_minus_x":
            return f"(1-x{idx[0]})"
        if k == "t_diff":
            return f"(t{idx[1]}-t{idx[0]})"
        if k == "one_minus_xprod":
            return "(1-" + "".join(f"x{i}" for i in self.variables()) + ")"
        return f"(1-(1-x{idx[0]}x{idx[1]})x{idx[2]})"

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "idx": list(self.idx)}


def one_minus_xprod(i: int, j: int) -> Factor:
    """1 - x_i...x_j, collapsing to 1 - x_i when i == j."""
    if i == j:
        return Factor("one_minus_x", i)
    return Factor("one_minus_xprod", i, j)


def z_diff(i: int, j: int) -> Tuple[int, Factor]:
    """z_i - z_j as (sign, factor)."""
    if i == j:
        raise FrameError("z_i - z_i vanishes identically")
    return (1, Factor("z", i, j)) if i < j else (-1, Factor("z", j, i))


def alphabet(frame: str, size: int) -> List[Factor]:
    """Every letter of ``frame`` on ``size`` coordinates (or points, for the z frame)."""
    r = range(1, size + 1)
    if frame == "z":
        return [Factor("z", i, j) for i in r for j in r if i < j]
    if frame == "simplicial":
        letters = [Factor("t", i) for i in r] + [Factor("one_minus_t", i) for i in r]
        return letters + [Factor("t_diff", i, j) for i in r for j in r if i < j]
    if frame == "cubical":
        letters = [Factor("x", i) for i in r] + [Factor("one_minus_x", i) for i in r]
        letters += [Factor("one_minus_xprod", i, j) for i in r for j in r if i < j]
        letters += [Factor("nested", i, j, k) for i in r for j in r for k in r if i < j and k not in (i, j)]
        return letters
    raise FrameError(f"Unknown frame {frame!r}")


class FactoredRational:
    """
    sign * prod(factor ** exponent) over one frame's alphabet.

    ``n`` is the number of marked points the expression lives on; the
    simplicial and cubical frames then have n - 3 coordinates.
    """

    __slots__ = ("frame", "n", "sign", "_exponents")

    def __init__(self, frame: str, n: int, sign: int = 1, exponents: Optional[Mapping[Factor, int]] = None):
        if frame not in FRAMES:
            raise FrameError(f"Unknown frame {frame!r}")
        if sign not in (1, -1):
            raise ValueError(f"Sign must be +1 or -1, got {sign}")
        cleaned: Dict[Factor, int] = {}
        for factor, exp in (exponents or {}).items():
            if factor.frame != frame:
                raise FrameError(f"Factor {factor} does not belong to the {frame} frame")
            if exp:
                cleaned[factor] = int(exp)
        self.frame = frame
        self.n = n
        self.sign = sign
        self._exponents = cleaned

    @classmethod
    def one(cls, frame: str, n: int) -> "FactoredRational":
        return cls(frame, n)

    @classmethod
    def of(cls, factor: Factor, n: int, exp: int = 1) -> "FactoredRational":
        return cls(factor.frame, n, 1, {factor: exp})

    @property
    def exponents(self) -> Dict[Factor, int]:
        return dict(self._exponents)

    @property
    def dimension(self) -> int:
        return self.n - 3

    def items(self) -> List[Tuple[Factor, int]]:
        return sorted(self._exponents.items(), key=lambda item: item[0].sort_key())

    def __iter__(self) -> Iterator[Factor]:
        return iter(sorted(self._exponents, key=Factor.sort_key))

    def exponent(self, factor: Factor) -> int:
        return self._exponents.get(factor, 0)

    def _check(self, other: "FactoredRational") -> None:
        if other.frame != self.frame or other.n != self.n:
            raise FrameError(
                f"Cannot combine {self.frame}/n={self.n} with {other.frame}/n={other.n}"
            )

    def __mul__(self, other: "FactoredRational") -> "FactoredRational":
        if isinstance(other, int) and other in (1, -1):
            return FactoredRational(self.frame, self.n, self.sign * other, self._exponents)
        self._check(other)
        merged = dict(self._exponents)
        for factor, exp in other._exponents.items():
            merged[factor] = merged.get(factor, 0) + exp
        return FactoredRational(self.frame, self.n, self.sign * other.sign, merged)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "FactoredRational":
        k = int(k)
        sign = self.sign if k % 2 else 1
        return FactoredRational(self.frame, self.n, sign, {f: e * k for f, e in self._exponents.items()})

    def inverse(self) -> "FactoredRational":
        return self ** -1

    def __truediv__(self, other: "FactoredRational") -> "FactoredRational":
        return self * other.inverse()

    def __neg__(self) -> "FactoredRational":
        return FactoredRational(self.frame, self.n, -self.sign, self._exponents)

    def abs(self) -> "FactoredRational":
        return FactoredRational(self.frame, self.n, 1, self._exponents)

    @property
    def is_unit(self) -> bool:
        """True for the constants +1 and -1."""
        return not self._exponents

    def equals_up_to_sign(self, other: "FactoredRational") -> bool:
        return (self.frame, self.n, self._exponents) == (other.frame, other.n, other._exponents)

    def degree_bound(self) -> int:
        """Sum of absolute exponents; bounds the degree of numerator and denominator."""
        return sum(abs(e) for e in self._exponents.values())

    def label_degrees(self) -> Dict[int, int]:
        """Degree in each z_i (z frame only); all zero exactly when PGL2-invariant."""
        if self.frame != "z":
            raise FrameError("Label degrees are defined in the z frame")
        degrees = {label: 0 for label in range(1, self.n + 1)}
        for factor, exp in self._exponents.items():
            for label in factor.idx:
                degrees[label] = degrees.get(label, 0) + exp
        return degrees

    def total_degree(self) -> int:
        return sum(self._exponents.values())

    def value(self, coords: Sequence[Any]) -> Any:
        """Exact value for Fraction coordinates; raises ZeroDivisionError on poles."""
        result: Any = Fraction(self.sign)
        for factor, exp in self._exponents.items():
            result *= Fraction(factor.value(coords)) ** exp
        return result

    def to_sympy(self, symbols: Sequence[sympy.Symbol]) -> sympy.Expr:
        expr = sympy.Integer(self.sign)
        for factor, exp in self.items():
            expr *= factor.to_sympy(symbols) ** exp
        return expr

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FactoredRational):
            return NotImplemented
        return self.equals_up_to_sign(other) and self.sign == other.sign

    def __hash__(self) -> int:
        return hash((self.frame, self.n, self.sign, frozenset(self._exponents.items())))

    def __repr__(self) -> str:
        return f"FactoredRational({self.frame}, n={self.n}, {self})"

    def __str__(self) -> str:
        head = "+1" if self.sign > 0 else "-1"
        if not self._exponents:
            return head
        return head + " * " + " * ".join(f"{factor}^{exp}" for factor, exp in self.items())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "frame": self.frame,
            "n": self.n,
            "sign": self.sign,
            "factors": [dict(factor.to_dict(), exp=exp) for factor, exp in self.items()],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FactoredRational":
        exponents = {Factor(item["kind"], *item["idx"]): int(item["exp"]) for item in data.get("factors", [])}
        return cls(data["frame"], int(data["n"]), int(data.get("sign", 1)), exponents)


def product_of(terms: Iterable[FactoredRational], frame: str, n: int) -> FactoredRational:
    return reduce(lambda acc, term: acc * term, terms, FactoredRational.one(frame, n))
