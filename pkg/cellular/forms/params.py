"""
Exponent parameters (a, b) of generalised cellular integrands and the
homogeneity equations that make them PGL2-invariant.

For sigma a permutation of 1..n the a-parameters sit on the edges {i, i+1}
of delta0 and the b-parameters on the edges {sigma_i, sigma_i+1}. At every
label v the two a-edges and the two b-edges through v must have equal sums.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import sympy

from cellular.configurations.dihedral import pi_even_perm, pi_odd_perm
from cellular.configurations.models import ConfigClass, ConfigurationError, Perm
from cellular.logger import get_logger

logger = get_logger(__name__)

Edge = Tuple[int, int]


class HomogeneityError(ValueError):
    """Raised when parameters violate the homogeneity equations."""

    def __init__(self, message: str, alternating_sum: Optional[int] = None):
        super().__init__(message)
        self.alternating_sum = alternating_sum


def edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def a_edges(n: int) -> List[Edge]:
    """Edges of delta0 in order: a_i sits on {i, i+1}, a_n on {1, n}."""
    return [edge(i, i % n + 1) for i in range(1, n + 1)]


def b_edges(sigma: Perm) -> List[Edge]:
    """Edges of sigma.delta0 in cycle order."""
    vals, n = sigma.values, sigma.n
    return [edge(vals[j], vals[(j + 1) % n]) for j in range(n)]


def _as_perm(c: Union[ConfigClass, Perm]) -> Perm:
    return c.rep if isinstance(c, ConfigClass) else c


def default_free_edge(sigma: Perm) -> Edge:
    """The sigma-edge at n whose other endpoint is larger."""
    n = sigma.n
    j = sigma.values.index(n)
    neighbours = (sigma.values[j - 1], sigma.values[(j + 1) % n])
    return edge(max(neighbours), n)


# ============================================================================
# PARAMETER SETS
# ============================================================================


class ParamSet:
    """Integer exponents a over delta0-edges and b over sigma-edges."""

    def __init__(self, sigma: Perm, a: Mapping[Edge, int], b: Mapping[Edge, int]):
        self.sigma = sigma
        self.a = {edge(*e): int(v) for e, v in a.items()}
        self.b = {edge(*e): int(v) for e, v in b.items()}
        if set(self.a) != set(a_edges(sigma.n)):
            raise HomogeneityError(f"a-parameters must cover the edges of delta0, got {sorted(self.a)}")
        if set(self.b) != set(b_edges(sigma)):
            raise HomogeneityError(f"b-parameters must cover the edges of sigma, got {sorted(self.b)}")

    @classmethod
    def basic(cls, sigma: Union[ConfigClass, Perm], N: int) -> "ParamSet":
        sigma = _as_perm(sigma)
        return cls(sigma, {e: N for e in a_edges(sigma.n)}, {e: N for e in b_edges(sigma)})

    @property
    def n(self) -> int:
        return self.sigma.n

    def a_list(self) -> List[int]:
        return [self.a[e] for e in a_edges(self.n)]

    def b_list(self) -> List[int]:
        return [self.b[e] for e in b_edges(self.sigma)]

    def homogeneity_residuals(self) -> Dict[int, int]:
        """a-sum minus b-sum at every label."""
        residuals = {}
        for v in range(1, self.n + 1):
            a_sum = sum(val for e, val in self.a.items() if v in e)
            b_sum = sum(val for e, val in self.b.items() if v in e)
            residuals[v] = a_sum - b_sum
        return residuals

    def is_homogeneous(self) -> bool:
        return not any(self.homogeneity_residuals().values())

    def is_basic(self) -> bool:
        values = set(self.a.values()) | set(self.b.values())
        return len(values) == 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ParamSet) and (self.sigma, self.a, self.b) == (other.sigma, other.a, other.b)

    def __repr__(self) -> str:
        return f"ParamSet(sigma={self.sigma}, a={self.a_list()}, b={self.b})"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "sigma": list(self.sigma.values),
            "a": self.a_list(),
            "b": {f"{u},{v}": val for (u, v), val in sorted(self.b.items())},
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ParamSet":
        sigma = Perm(data["sigma"])
        a = dict(zip(a_edges(sigma.n), data["a"]))
        b = {edge(*(int(x) for x in key.split(","))): val for key, val in data["b"].items()}
        return cls(sigma, a, b)


# ============================================================================
# HOMOGENEITY SYSTEM
# ============================================================================


class HomogeneitySystem:
    """
    The n homogeneity equations for a fixed sigma, solved once symbolically.

    Knowns are a_1..a_n and, for even n, the free b on ``free_edge``; every
    other b is an integer linear form in the knowns. For even n the rows
    that lose their b-pivot are the lattice conditions defining H_sigma.
    """

    def __init__(self, sigma: Perm, free_edge: Optional[Edge] = None):
        n = sigma.n
        self.sigma = sigma
        self.n = n
        self.a_symbols = sympy.symbols(f"a1:{n + 1}", integer=True)
        self.b_symbol = sympy.Symbol("b", integer=True)
        self.b_edges = b_edges(sigma)
        self.free_edge: Optional[Edge] = None
        if n % 2 == 0:
            self.free_edge = edge(*free_edge) if free_edge else default_free_edge(sigma)
            if self.free_edge not in self.b_edges:
                raise HomogeneityError(f"{self.free_edge} is not an edge of sigma={sigma}")

        unknowns = [e for e in self.b_edges if e != self.free_edge]
        knowns: List[sympy.Symbol] = list(self.a_symbols) + ([self.b_symbol] if self.free_edge else [])
        rows = []
        for v in range(1, n + 1):
            row = [1 if v in e else 0 for e in unknowns]
            rhs = [1 if v in e else 0 for e in a_edges(n)]
            if self.free_edge:
                rhs.append(1 if v in self.free_edge else 0)
            rows.append(row + [-c for c in rhs])
        reduced, pivots = sympy.Matrix(rows).rref()

        width = len(unknowns)
        self.expressions: Dict[Edge, sympy.Expr] = {}
        self.conditions: List[sympy.Expr] = []
        for r in range(reduced.rows):
            known_part = sum(reduced[r, width + q] * knowns[q] for q in range(len(knowns)))
            pivot = next((p for p in pivots if p < width and reduced[r, p] == 1 and
                          all(reduced[r, q] == 0 for q in range(width) if q != p)), None)
            if pivot is not None:
                self.expressions[unknowns[pivot]] = sympy.expand(-known_part)
            elif known_part != 0:
                self.conditions.append(sympy.expand(known_part))
        if len(self.expressions) != width:
            raise HomogeneityError(f"The homogeneity system for sigma={sigma} is not uniquely solvable")
        if self.free_edge:
            self.expressions[self.free_edge] = self.b_symbol

    def b_expression(self, u: int, v: int) -> sympy.Expr:
        return self.expressions[edge(u, v)]

    def alternating_sum(self, a: Sequence[int]) -> int:
        """sum_i (-1)^i (a_{sigma_i - 1, sigma_i} + a_{sigma_i, sigma_i + 1})."""
        n = self.n
        total = 0
        for i, v in enumerate(self.sigma.values, start=1):
            left = a[(v - 2) % n]
            right = a[v - 1]
            total += (-1) ** i * (left + right)
        return total

    def _subs(self, a: Sequence[int], b: Optional[int]) -> Dict[sympy.Symbol, int]:
        values = {sym: int(val) for sym, val in zip(self.a_symbols, a)}
        if self.free_edge:
            values[self.b_symbol] = int(b)
        return values

    def check_lattice(self, a: Sequence[int]) -> None:
        if not self.conditions:
            return
        values = self._subs(a, 0)
        for condition in self.conditions:
            if condition.subs(values) != 0:
                total = self.alternating_sum(a)
                raise HomogeneityError(
                    f"a={list(a)} is not in H_sigma for sigma={self.sigma}: alternating sum is {total}",
                    alternating_sum=total,
                )

    def solve(self, a: Sequence[int], b: Optional[int] = None) -> ParamSet:
        if len(a) != self.n:
            raise HomogeneityError(f"Expected {self.n} a-parameters, got {len(a)}")
        if self.free_edge and b is None:
            raise HomogeneityError(f"Even n={self.n} needs the free parameter b on {self.free_edge}")
        self.check_lattice(a)
        values = self._subs(a, b)
        b_map = {}
        for e, expr in self.expressions.items():
            value = Fraction(str(expr.subs(values)))
            if value.denominator != 1:
                raise HomogeneityError(f"b on {e} is not an integer ({value})")
            b_map[e] = int(value)
        return ParamSet(self.sigma, dict(zip(a_edges(self.n), a)), b_map)

    def complete_a(self, a: Sequence[Optional[int]]) -> List[int]:
        """Fill the single missing a_i (None) from the lattice condition."""
        missing = [i for i, val in enumerate(a) if val is None]
        if len(missing) != 1 or len(self.conditions) != 1:
            raise HomogeneityError("Exactly one missing a-parameter and one lattice condition are needed")
        i = missing[0]
        symbol = self.a_symbols[i]
        condition = self.conditions[0]
        if condition.coeff(symbol) == 0:
            raise HomogeneityError(f"a_{i + 1} does not enter the lattice condition {condition} = 0")
        known = {sym: int(val) for sym, val in zip(self.a_symbols, a) if val is not None}
        value = Fraction(str(sympy.solve(condition.subs(known), symbol)[0]))
        if value.denominator != 1:
            raise HomogeneityError(f"a_{i + 1} = {value} is not an integer")
        filled = list(a)
        filled[i] = int(value)
        return filled


@lru_cache(maxsize=256)
def homogeneity_system(sigma_values: Tuple[int, ...], free_edge: Optional[Edge] = None) -> HomogeneitySystem:
    return HomogeneitySystem(Perm(sigma_values), free_edge)


def solve_homogeneity(
    c: Union[ConfigClass, Perm],
    a: Union[Sequence[int], Mapping[Edge, int]],
    b: Optional[int] = None,
    free_edge: Optional[Edge] = None,
) -> ParamSet:
    """
    Complete a-parameters (and b for even n) to a full homogeneous ParamSet.

    Raises HomogeneityError when a lies outside H_sigma, naming the failing
    alternating sum.
    """
    sigma = _as_perm(c)
    if isinstance(a, Mapping):
        a = [a[e] for e in a_edges(sigma.n)]
    system = homogeneity_system(sigma.values, edge(*free_edge) if free_edge else None)
    return system.solve(list(a), b)


def extend_parameters(
    word: Sequence[int],
    word_prime: Sequence[int],
    known_a: Mapping[Edge, int],
    known_b: Mapping[Edge, int],
) -> Tuple[Dict[Edge, int], Dict[Edge, int]]:
    """
    Fill in the missing a (edges of ``word``) and b (edges of ``word_prime``)
    so that every label satisfies homogeneity; the extension must be unique.
    """
    n = len(word)
    e_a = [edge(word[i], word[(i + 1) % n]) for i in range(n)]
    e_b = [edge(word_prime[i], word_prime[(i + 1) % n]) for i in range(n)]
    unknown_a = [e for e in e_a if e not in known_a]
    unknown_b = [e for e in e_b if e not in known_b]
    syms_a = {e: sympy.Symbol(f"a_{e[0]}_{e[1]}") for e in unknown_a}
    syms_b = {e: sympy.Symbol(f"b_{e[0]}_{e[1]}") for e in unknown_b}

    def value_a(e: Edge) -> Any:
        return syms_a[e] if e in syms_a else known_a[e]

    def value_b(e: Edge) -> Any:
        return syms_b[e] if e in syms_b else known_b[e]

    equations = []
    for v in word:
        lhs = sum(value_a(e) for e in e_a if v in e)
        rhs = sum(value_b(e) for e in e_b if v in e)
        equations.append(sympy.Eq(lhs, rhs))
    unknowns = list(syms_a.values()) + list(syms_b.values())
    full_a = {e: int(known_a[e]) for e in e_a if e in known_a}
    full_b = {e: int(known_b[e]) for e in e_b if e in known_b}
    if not unknowns:
        return full_a, full_b

    solutions = sympy.linsolve(equations, unknowns)
    if not solutions:
        raise HomogeneityError("The known parameters admit no homogeneous extension")
    (solution,) = solutions
    for symbol, value in zip(unknowns, solution):
        if value.free_symbols:
            raise HomogeneityError(f"The extension is not unique: {symbol} = {value}")
        value = Fraction(str(value))
        if value.denominator != 1:
            raise HomogeneityError(f"The extension of {symbol} is not an integer ({value})")
    for e, symbol in syms_a.items():
        full_a[e] = int(solution[unknowns.index(symbol)])
    for e, symbol in syms_b.items():
        full_b[e] = int(solution[unknowns.index(symbol)])
    return full_a, full_b


# ============================================================================
# ODD AND EVEN FAMILIES
# ============================================================================


def pi_odd_params(m: int, N: int, r: int = 1) -> ParamSet:
    """a_{m,m+1} = a_{2m,1} = b_{m+1,2m} = b_{m,1} = rN and every other parameter N."""
    sigma = pi_odd_perm(m)
    special_a = {edge(m, m + 1), edge(2 * m, 1)}
    special_b = {edge(m + 1, 2 * m), edge(m, 1)}
    return _family_params(sigma, N, r, special_a, special_b)


def pi_even_params(m: int, N: int, r: int = 1) -> ParamSet:
    """a_{1,2m+1} = a_{m+1,m+2} = b_{m+1,2m+1} = b_{1,m+2} = rN and every other parameter N."""
    sigma = pi_even_perm(m)
    special_a = {edge(1, 2 * m + 1), edge(m + 1, m + 2)}
    special_b = {edge(m + 1, 2 * m + 1), edge(1, m + 2)}
    return _family_params(sigma, N, r, special_a, special_b)


def _family_params(sigma: Perm, N: int, r: int, special_a: set, special_b: set) -> ParamSet:
    if not special_b <= set(b_edges(sigma)):
        raise ConfigurationError(f"{sorted(special_b)} are not all edges of {sigma}")
    a = {e: (r * N if e in special_a else N) for e in a_edges(sigma.n)}
    b = {e: (r * N if e in special_b else N) for e in b_edges(sigma)}
    params = ParamSet(sigma, a, b)
    if not params.is_homogeneous():
        raise HomogeneityError(f"Family parameters for {sigma} are not homogeneous")
    return params


# ============================================================================
# THE REGION C^n
# ============================================================================


def in_region_C(x: Sequence[int], n: Optional[int] = None) -> bool:
    """True iff some integer m >= 1 has |x_i - m| < m / n^2 for every i (n defaults to len(x))."""
    n = n or len(x)
    if not x:
        return False
    sq = n * n
    lower = max(Fraction(int(v) * sq, sq + 1) for v in x)
    m = max(int(lower) + 1, 1)
    if sq == 1:
        return True
    upper = min(Fraction(int(v) * sq, sq - 1) for v in x)
    return m < upper


def sample_region_point(
    c: Union[ConfigClass, Perm],
    m: int,
    rng: Optional[np.random.Generator] = None,
    max_tries: int = 1000,
) -> ParamSet:
    """
    Random homogeneous parameters in C^n (odd n, coordinates a) or in
    C^{n+1} intersected with H_sigma x Z (even n, coordinates (a, b)).
    """
    sigma = _as_perm(c)
    n = sigma.n
    rng = rng or np.random.default_rng()
    dim = n if n % 2 else n + 1
    radius = Fraction(m, dim * dim)
    low, high = math.floor(m - radius) + 1, math.ceil(m + radius) - 1
    if low > high:
        raise ValueError(f"m={m} is too small for integer points of C^{dim}")
    system = homogeneity_system(sigma.values, None)

    for _ in range(max_tries):
        coords = [int(v) for v in rng.integers(low, high + 1, size=dim)]
        if n % 2:
            return system.solve(coords)
        a, b = coords[:n], coords[n]
        if system.conditions:
            condition = system.conditions[0]
            slot = next(i for i, s in enumerate(system.a_symbols) if condition.coeff(s) != 0)
            a[slot] = None
            try:
                a = system.complete_a(a)
            except HomogeneityError:
                continue
        if in_region_C(a + [b], dim):
            return system.solve(a, b)
    raise ValueError(f"No point of C^{dim} on H_sigma found after {max_tries} tries (m={m})")
