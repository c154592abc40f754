"""
Exact LLL reduction of integer lattices.

Gram-Schmidt data (mu and the squared norms B) are kept as Fractions and
updated incrementally on each size reduction and swap, so the result is
deterministic and independent of floating point.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Optional, Sequence, Union

from cellular.config import get_config


class LatticeError(ValueError):
    """Raised for empty or rank-deficient lattice bases."""


def _dot(u: Sequence[Union[int, Fraction]], v: Sequence[Union[int, Fraction]]) -> Union[int, Fraction]:
    return sum(a * b for a, b in zip(u, v))


def _gram_schmidt(b: List[List[int]]):
    n = len(b)
    mu = [[Fraction(0)] * n for _ in range(n)]
    B: List[Fraction] = []
    star: List[List[Fraction]] = []
    for i in range(n):
        v = [Fraction(x) for x in b[i]]
        for j in range(i):
            mu[i][j] = Fraction(_dot(b[i], star[j])) / B[j]
            v = [x - mu[i][j] * y for x, y in zip(v, star[j])]
        norm = Fraction(_dot(v, v))
        if norm == 0:
            raise LatticeError(f"Basis is rank-deficient (row {i} is dependent on the previous rows)")
        star.append(v)
        B.append(norm)
    return mu, B


def _round_half_up(q: Fraction) -> int:
    return math.floor(q + Fraction(1, 2))


def lattice_reduce(basis: Sequence[Sequence[int]], delta: Optional[Fraction] = None) -> List[List[int]]:
    """LLL-reduced basis with the Lovasz parameter ``delta`` (default 3/4)."""
    b = [[int(x) for x in row] for row in basis]
    if not b or not b[0]:
        raise LatticeError("Cannot reduce an empty basis")
    if len({len(row) for row in b}) != 1:
        raise LatticeError("Basis rows have different lengths")
    if len(b) > len(b[0]):
        raise LatticeError(f"{len(b)} vectors in dimension {len(b[0])} cannot be independent")
    delta = Fraction(delta if delta is not None else Fraction(get_config("LLL_DELTA", "3/4")))
    n = len(b)
    mu, B = _gram_schmidt(b)

    def size_reduce(k: int, l: int) -> None:
        if abs(mu[k][l]) <= Fraction(1, 2):
            return
        q = _round_half_up(mu[k][l])
        b[k] = [x - q * y for x, y in zip(b[k], b[l])]
        mu[k][l] -= q
        for i in range(l):
            mu[k][i] -= q * mu[l][i]

    k = 1
    while k < n:
        size_reduce(k, k - 1)
        if B[k] < (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            m = mu[k][k - 1]
            big = B[k] + m * m * B[k - 1]
            mu[k][k - 1] = m * B[k - 1] / big
            B[k] = B[k - 1] * B[k] / big
            B[k - 1] = big
            b[k], b[k - 1] = b[k - 1], b[k]
            for j in range(k - 1):
                mu[k][j], mu[k - 1][j] = mu[k - 1][j], mu[k][j]
            for i in range(k + 1, n):
                t = mu[i][k]
                mu[i][k] = mu[i][k - 1] - m * t
                mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]
            k = max(k - 1, 1)
        else:
            for l in range(k - 2, -1, -1):
                size_reduce(k, l)
            k += 1
    return b


def squared_norm(v: Sequence[int]) -> int:
    return sum(x * x for x in v)
