"""
Stable partitions and the half-integer indicator calculus for orders of
vanishing along boundary divisors.
"""
from __future__ import annotations

from typing import List, Set, Tuple

from cellular.configurations.models import ConfigurationError, DihedralStructure, HalfInt, StablePartition


def all_stable_partitions(n: int) -> List[StablePartition]:
    """All stable partitions of {1..n}, sorted by (smaller block size, mask)."""
    if n < 4:
        raise ConfigurationError(f"No stable partitions exist for n={n}")
    partitions = []
    for rest in range(1 << (n - 1)):
        mask = (rest << 1) | 1
        size = bin(mask).count("1")
        if 2 <= size <= n - 2:
            partitions.append(StablePartition(n, mask))
    return sorted(partitions)


def finite_distance_divisors(d: DihedralStructure) -> Set[StablePartition]:
    """Partitions whose blocks are consecutive runs for ``d``; n(n-3)/2 of them."""
    n = d.n
    if n < 4:
        raise ConfigurationError(f"No stable partitions exist for n={n}")
    if d.labels != frozenset(range(1, n + 1)):
        raise ConfigurationError("Divisors are indexed by structures on the labels 1..n")
    word = d.word
    divisors = set()
    for length in range(2, n - 1):
        for start in range(n):
            block = [word[(start + k) % n] for k in range(length)]
            divisors.add(StablePartition.from_block(n, block))
    return divisors


def indicator_ID(D: StablePartition, i: int, j: int) -> HalfInt:
    """1/2 when i and j lie in the same block of D, else 0."""
    if i == j:
        raise ValueError("The indicator needs two distinct labels")
    return HalfInt(1 if D.same_block(i, j) else 0)


def _inside_count(D: StablePartition, d: DihedralStructure) -> int:
    return sum(1 for edge in d.edges() if D.same_block(*tuple(edge)))


def indicator_sum(D: StablePartition, d: DihedralStructure) -> HalfInt:
    """Sum of the indicator over the n cyclic edges of ``d``; at most n/2 - 1."""
    return HalfInt(_inside_count(D, d))


def ord_f(delta: DihedralStructure, deltap: DihedralStructure, D: StablePartition) -> HalfInt:
    """Order of vanishing of f_{delta/delta'} along D; always integral."""
    value = HalfInt(_inside_count(D, delta) - _inside_count(D, deltap))
    assert value.is_integral, f"non-integral order {value} along {D}"
    return value


def ord_omega(sigma: DihedralStructure, D: StablePartition) -> HalfInt:
    """Order of the cellular form omega_sigma along D: (l - 1)/2 - I_D(sigma)."""
    n = sigma.n
    return HalfInt((n - 4) - _inside_count(D, sigma))


def infinite_divisor_count(n: int) -> int:
    """Stable partitions not at finite distance for delta0, counted directly."""
    finite = finite_distance_divisors(DihedralStructure.standard(n))
    return sum(1 for D in all_stable_partitions(n) if D not in finite)


def divisor_counts(n: int) -> Tuple[int, int, int]:
    """(finite, infinite, total) counts for delta0."""
    total = len(all_stable_partitions(n))
    infinite = infinite_divisor_count(n)
    return total - infinite, infinite, total
