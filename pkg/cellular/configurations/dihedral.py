"""
Canonical forms, convergence and enumeration of configuration classes.

A configuration is the class of a permutation sigma under position rotations,
position reversal, value shifts mod n and the value reflection n + 1 - v.
It is convergent when no block of 2..n-2 labels is consecutive both for
delta0 = (1..n) and for sigma.delta0.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Set, Tuple, Union

from cellular.config import get_config
from cellular.configurations.models import ConfigClass, ConfigurationError, Perm, StablePartition
from cellular.logger import get_logger, log_duration

logger = get_logger(__name__)

PermLike = Union[Perm, ConfigClass, Sequence[int]]


def _as_perm(p: PermLike) -> Perm:
    if isinstance(p, Perm):
        return p
    if isinstance(p, ConfigClass):
        return p.rep
    return Perm(p)


# ============================================================================
# CANONICAL FORMS
# ============================================================================


def canonical_values(values: Sequence[int]) -> Tuple[int, ...]:
    """
    Least image of ``values`` under the double dihedral action.

    The least image starts with 1, so each of the 2n position transforms and
    each value orientation fixes the value shift: 4n candidates cover the
    (2n)^2 orbit.
    """
    values = tuple(values)
    n = len(values)
    best: Optional[Tuple[int, ...]] = None
    for word in (values, values[::-1]):
        for shift in range(n):
            w = word[shift:] + word[:shift]
            first = w[0]
            straight = tuple((v - first) % n + 1 for v in w)
            reflected = tuple((first - v) % n + 1 for v in w)
            candidate = straight if straight < reflected else reflected
            if best is None or candidate < best:
                best = candidate
    return best


def canonical_config(p: PermLike) -> ConfigClass:
    """Canonical class representative of a permutation (idempotent)."""
    perm = _as_perm(p)
    if perm.n < 3:
        raise ConfigurationError("Configurations need n >= 3")
    return ConfigClass(Perm(canonical_values(perm.values)))


def orbit(p: PermLike) -> Set[Tuple[int, ...]]:
    """All (2n)^2 images of a permutation; used for class-invariance checks."""
    values = _as_perm(p).values
    n = len(values)
    images = set()
    for word in (values, values[::-1]):
        for shift in range(n):
            w = word[shift:] + word[:shift]
            for c in range(n):
                images.add(tuple((v - 1 + c) % n + 1 for v in w))
                images.add(tuple((n - v + c) % n + 1 for v in w))
    return images


def dual(c: Union[ConfigClass, Perm]) -> ConfigClass:
    """The dual class [sigma^-1]."""
    return canonical_config(_as_perm(c).inverse())


def is_self_dual(c: Union[ConfigClass, Perm]) -> bool:
    return dual(c) == canonical_config(c)


# ============================================================================
# CONVERGENCE
# ============================================================================


@lru_cache(maxsize=None)
def _run_table(n: int) -> bytearray:
    """run[m] == 1 iff the value mask m is a cyclic run of length 2..n-2."""
    table = bytearray(1 << n)
    full = (1 << n) - 1
    for length in range(2, n - 1):
        block = (1 << length) - 1
        for start in range(n):
            m = ((block << start) | (block >> (n - start))) & full
            table[m] = 1
    return table


def _position_runs(values: Sequence[int], max_length: int) -> Iterable[Tuple[int, int, int]]:
    """Yield (length, start, value mask) for cyclic position runs, shortest first."""
    n = len(values)
    for length in range(2, max_length + 1):
        for start in range(n):
            m = 0
            for k in range(length):
                m |= 1 << (values[(start + k) % n] - 1)
            yield length, start, m


def convergence_witness(p: PermLike) -> Optional[StablePartition]:
    """
    First stable partition at finite distance for both delta0 and sigma.delta0,
    smallest block first and then earliest start; None when convergent.
    """
    perm = _as_perm(p)
    n = perm.n
    if n < 4:
        raise ConfigurationError("Convergence is defined for n >= 4")
    runs = _run_table(n)
    for _, _, m in _position_runs(perm.values, n // 2):
        if runs[m]:
            return StablePartition(n, m)
    return None


def is_convergent(p: PermLike) -> bool:
    """True iff finite_distance_divisors(delta0) and those of sigma.delta0 are disjoint."""
    return convergence_witness(p) is None


def is_dinner_valid(p: PermLike) -> bool:
    """Classical dinner-table condition: no neighbours of delta0 stay neighbours."""
    perm = _as_perm(p)
    n = perm.n
    runs = _run_table(n)
    for _, _, m in _position_runs(perm.values, 2):
        if runs[m]:
            return False
    return True


# ============================================================================
# ENUMERATION
# ============================================================================


def _scan_shard(task: Tuple[int, int]) -> Set[Tuple[int, ...]]:
    """
    Canonical reps of convergent permutations with sigma(1) = n and
    sigma(2) = ``second``. Every class has such a member (value shifts).
    """
    n, second = task
    runs = _run_table(n)
    half = n // 2
    found: Set[Tuple[int, ...]] = set()
    seq = [0] * n
    seq[0], seq[1] = n, second
    start_mask = (1 << (n - 1)) | (1 << (second - 1))
    if runs[start_mask]:
        return found

    def wraps_ok() -> bool:
        for s in range(n - half + 1, n):
            m = 0
            for j in range(s, n):
                m |= 1 << (seq[j] - 1)
            for j in range(half - (n - s)):
                m |= 1 << (seq[j] - 1)
                if runs[m]:
                    return False
        return True

    def extend(k: int, used: int) -> None:
        if k == n:
            if wraps_ok():
                found.add(canonical_values(seq))
            return
        lowest = max(0, k - half + 1)
        for v in range(1, n):
            bit = 1 << (v - 1)
            if used & bit:
                continue
            m = bit
            ok = True
            for j in range(k - 1, lowest - 1, -1):
                m |= 1 << (seq[j] - 1)
                if runs[m]:
                    ok = False
                    break
            if ok:
                seq[k] = v
                extend(k + 1, used | bit)

    extend(2, start_mask)
    return found


def enumerate_convergent(n: int, workers: Optional[int] = None) -> List[ConfigClass]:
    """
    Every convergent configuration class of size n, each once, sorted by rep.

    Shards over sigma(2) after fixing sigma(1) = n; with workers > 1 the shards
    run in a process pool and their class sets are merged at the end.
    """
    hard_cap = get_config("ENUMERATION_HARD_CAP", 13)
    soft_cap = get_config("ENUMERATION_SOFT_CAP", 12)
    if n < 4:
        raise ConfigurationError(f"Enumeration needs n >= 4, got {n}")
    if n > hard_cap:
        raise ConfigurationError(f"Enumeration beyond n={hard_cap} is not supported")
    if n > soft_cap:
        logger.warning("Enumerating n=%d exceeds the soft cap %d; expect a long run", n, soft_cap)

    workers = workers or get_config("DEFAULT_THREADS", 1)
    tasks = [(n, second) for second in range(1, n)]
    classes: Set[Tuple[int, ...]] = set()

    with log_duration(logger, "Enumeration of n=%d with %d workers", n, workers, level=logging.INFO):
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for shard in pool.map(_scan_shard, tasks):
                    classes |= shard
        else:
            for task in tasks:
                shard = _scan_shard(task)
                logger.debug("Shard n=%d sigma(2)=%d gave %d classes", n, task[1], len(shard))
                classes |= shard
    logger.info("n=%d: %d convergent classes", n, len(classes))
    return [ConfigClass(Perm(rep)) for rep in sorted(classes)]


# ============================================================================
# ODD AND EVEN FAMILIES
# ============================================================================


def pi_odd_perm(m: int) -> Perm:
    """(2m, 2, 2m-1, 3, ..., m+2, m, 1, m+1)."""
    if m < 3:
        raise ConfigurationError("pi_odd needs m >= 3")
    highs = list(range(2 * m, m + 1, -1))
    lows = list(range(2, m + 1))
    values: List[int] = []
    for high, low in zip(highs, lows):
        values += [high, low]
    return Perm(values + [1, m + 1])


def pi_even_perm(m: int) -> Perm:
    """(2m+1, 2, 2m, 3, ..., m, m+2, 1, m+1)."""
    if m < 2:
        raise ConfigurationError("pi_even needs m >= 2")
    highs = list(range(2 * m + 1, m + 1, -1))
    lows = list(range(2, m + 1))
    values: List[int] = []
    for i, high in enumerate(highs):
        values.append(high)
        if i < len(lows):
            values.append(lows[i])
    return Perm(values + [1, m + 1])


def pi_odd(m: int) -> ConfigClass:
    return canonical_config(pi_odd_perm(m))


def pi_even(m: int) -> ConfigClass:
    return canonical_config(pi_even_perm(m))
