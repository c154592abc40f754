"""
Guessing a polynomial-coefficient recurrence from exact terms.

Candidates are tried by increasing order, then degree. Each (order, degree)
system is first screened by its rank over a large prime field; only systems
with a nontrivial kernel there are solved exactly over the rationals.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Optional

from sympy import GF, QQ
from sympy.polys.matrices import DomainMatrix

from cellular.config import get_config
from cellular.logger import get_logger
from cellular.recurrences.models import PolyRecurrence, RationalSequence, poly_eval
from cellular.relations.lattice import lattice_reduce

logger = get_logger(__name__)


def _integer_rows(s: RationalSequence, k: int, d: int, count: int) -> List[List[int]]:
    """Rows [n^j u_{n+i}] (column index i*(d+1) + j), denominators cleared per row."""
    rows = []
    for n in range(s.n0, s.n0 + count):
        row = [Fraction(n) ** j * s[n + i] for i in range(k + 1) for j in range(d + 1)]
        denom = math.lcm(*(q.denominator for q in row))
        rows.append([int(q * denom) for q in row])
    return rows


def _modular_rank(rows: List[List[int]], modulus: int) -> int:
    field = GF(modulus)
    matrix = DomainMatrix([[field(v % modulus) for v in row] for row in rows], (len(rows), len(rows[0])), field)
    return matrix.rank()


def _kernel_candidates(rows: List[List[int]]) -> List[List[int]]:
    """
    Integer kernel vectors of ``rows``, shortest first. A kernel of dimension
    above one is LLL-reduced so that small combinations are tried, not only
    the echelon basis sympy returns.
    """
    matrix = DomainMatrix([[QQ(v) for v in row] for row in rows], (len(rows), len(rows[0])), QQ)
    kernel = matrix.nullspace().to_Matrix()
    basis = []
    for r in range(kernel.rows):
        vector = [Fraction(int(c.p), int(c.q)) for c in kernel.row(r)]
        denom = math.lcm(*(q.denominator for q in vector))
        basis.append([int(q * denom) for q in vector])
    if len(basis) > 1:
        basis = lattice_reduce(basis)
    candidates = []
    for ints in basis:
        g = math.gcd(*ints) or 1
        candidates.append([v // g for v in ints])
    return sorted(candidates, key=lambda v: (max(map(abs, v)), v))


def _satisfies(r: PolyRecurrence, s: RationalSequence) -> bool:
    for n in range(s.n0, s.last_index - r.order + 1):
        total = sum(poly_eval(r.coeffs[i], n) * s[n + i] for i in range(r.order + 1))
        if total != 0:
            return False
    return True


def required_terms(k: int, d: int) -> int:
    """Terms needed for an (order k, degree d) search."""
    return (k + 1) * (d + 1) + k + get_config("DISCOVER_SAFETY_MARGIN", 5)


def discover(s: RationalSequence, k: int, d: int) -> Optional[PolyRecurrence]:
    """
    Minimal recurrence of order <= k and degree <= d annihilating ``s``.

    Returns None when no candidate exists or when ``s`` is too short to
    decide a candidate reliably.
    """
    modulus = get_config("DISCOVER_MODULUS", 2**61 - 1)
    for order in range(1, k + 1):
        for degree in range(0, d + 1):
            unknowns = (order + 1) * (degree + 1)
            if len(s) < required_terms(order, degree):
                logger.debug("Skipping order %d degree %d: %d terms are not enough", order, degree, len(s))
                continue
            count = unknowns + get_config("DISCOVER_SAFETY_MARGIN", 5)
            rows = _integer_rows(s, order, degree, count)
            if _modular_rank(rows, modulus) == unknowns:
                continue
            for vector in _kernel_candidates(rows):
                coeffs = [vector[i * (degree + 1):(i + 1) * (degree + 1)] for i in range(order + 1)]
                if not any(coeffs[-1]) or not any(coeffs[0]):
                    continue
                candidate = PolyRecurrence(coeffs, s.n0)
                if _satisfies(candidate, s):
                    logger.info("Found recurrence of order %d and degree %d", order, degree)
                    return candidate.normalized()
                logger.debug("Order %d degree %d candidate fails on later terms", order, degree)
    return None


def annihilates(r: PolyRecurrence, s: RationalSequence) -> bool:
    """True when every window of ``s`` satisfies ``r``."""
    return _satisfies(r, s)


def recurrences_agree(r: PolyRecurrence, other: PolyRecurrence) -> bool:
    """Equal up to a nonzero rational scalar."""
    return r.ratio_to(other) is not None
