"""
Generating terms of recurrences, the duality transform and the named
Apery-type families.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence

import sympy

from cellular.logger import get_logger
from cellular.recurrences.models import (
    LinearFormSpec,
    PolyRecurrence,
    Rational,
    RationalSequence,
    RecurrenceError,
)

logger = get_logger(__name__)


def extend(r: PolyRecurrence, init: Sequence[Rational], M: int) -> RationalSequence:
    """u_{n0}, ..., u_{n0+M} from the k initial values u_{n0}, ..., u_{n0+k-1}."""
    k = r.order
    if len(init) != k:
        raise RecurrenceError(f"Order {k} recurrence needs {k} initial values, got {len(init)}")
    values: List[Fraction] = [Fraction(v) for v in init]
    n = r.n0
    while len(values) < M + 1:
        lead = r.evaluate(k, n)
        if lead == 0:
            raise RecurrenceError(f"Leading coefficient vanishes at n={n} (computing u_{n + k})")
        window = values[n - r.n0:]
        acc = sum((r.evaluate(i, n) * window[i] for i in range(k)), Fraction(0))
        values.append(-acc / lead)
        n += 1
    return RationalSequence(values[: M + 1], r.n0)


def _reflect(coeffs: Sequence[Fraction], shift: int) -> List[Fraction]:
    """Coefficients of t -> p(shift - t)."""
    t = sympy.Symbol("t")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)] or [0], t, domain="QQ")
    reflected = poly.compose(sympy.Poly(shift - t, t, domain="QQ"))
    return [Fraction(int(c.p), int(c.q)) for c in reversed(reflected.all_coeffs())]


def _raw_dual(r: PolyRecurrence, twist: bool) -> PolyRecurrence:
    k = r.order
    coeffs = []
    for i in range(k + 1):
        reflected = _reflect(r.coeffs[k - i], -k - 1)
        if twist and i % 2:
            reflected = [-c for c in reflected]
        coeffs.append(reflected)
    return PolyRecurrence(coeffs, r.n0)


def dual(r: PolyRecurrence, twist: bool = False) -> PolyRecurrence:
    """
    p_i'(t) = p_{k-i}(-k-1-t), times (-1)^i when ``twist``; the result is
    normalized so that the leading coefficient of p_k' is positive.
    """
    return _raw_dual(r, twist).normalized()


def is_self_dual(r: PolyRecurrence) -> Optional[Fraction]:
    """lambda with p_i(t) = lambda * p_{k-i}(-k-1-t), untwisted or twisted; None if neither."""
    for twist in (False, True):
        ratio = r.ratio_to(_raw_dual(r, twist))
        if ratio is not None:
            logger.debug("Recurrence is self-dual (twist=%s, lambda=%s)", twist, ratio)
            return ratio
    return None


def hadamard(s: RationalSequence, t: RationalSequence) -> RationalSequence:
    """Termwise product over the common index range."""
    start = max(s.n0, t.n0)
    stop = min(s.last_index, t.last_index)
    return RationalSequence((s[n] * t[n] for n in range(start, stop + 1)), start)


# ============================================================================
# NAMED FAMILIES
# ============================================================================


class AperyFamily:
    """
    A recurrence with the initial values of its two solutions a and b, such
    that I_N = scale * (a_N * constant - b_N) is the integral for N.
    """

    def __init__(
        self,
        name: str,
        recurrence: PolyRecurrence,
        a_init: Sequence[int],
        b_init: Sequence[Rational],
        constant: str,
        weight: int,
        scale: int,
        epsilon: Callable[[Any], Any],
    ):
        self.name = name
        self.recurrence = recurrence
        self.a_init = tuple(a_init)
        self.b_init = tuple(Fraction(v) for v in b_init)
        self.constant = constant
        self.weight = weight
        self.scale = scale
        self.epsilon = epsilon

    def a(self, M: int) -> RationalSequence:
        return extend(self.recurrence, self.a_init, M)

    def b(self, M: int) -> RationalSequence:
        return extend(self.recurrence, self.b_init, M)

    def linear_form(self, M: int) -> LinearFormSpec:
        return LinearFormSpec(
            self.name,
            [self.constant, "1"],
            [self.a(M), self.b(M).scaled(-1)],
            scale=self.scale,
            weight=self.weight,
            epsilon=self.epsilon,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "recurrence": self.recurrence.to_dict(),
            "a_init": list(self.a_init),
            "b_init": [f"{v.numerator}/{v.denominator}" for v in self.b_init],
            "constant": self.constant,
            "weight": self.weight,
            "scale": self.scale,
        }


def apery_zeta2() -> AperyFamily:
    """n^2 u_n = (11n^2 - 11n + 3) u_{n-1} + (n-1)^2 u_{n-2}, shifted to start at u_0."""
    recurrence = PolyRecurrence(
        [
            [-1, -2, -1],       # -(n+1)^2
            [-25, -33, -11],    # -(11n^2 + 33n + 25)
            [4, 4, 1],          # (n+2)^2
        ]
    )
    return AperyFamily(
        "zeta2", recurrence, (1, 3), (0, 5), "zeta2", weight=2, scale=1,
        epsilon=lambda ctx: ((ctx.sqrt(5) - 1) / 2) ** 5,
    )


def apery_zeta3() -> AperyFamily:
    """n^3 u_n = (2n-1)(17n^2 - 17n + 5) u_{n-1} - (n-1)^3 u_{n-2}, shifted to start at u_0."""
    recurrence = PolyRecurrence(
        [
            [1, 3, 3, 1],               # (n+1)^3
            [-117, -231, -153, -34],    # -(2n+3)(17n^2 + 51n + 39)
            [8, 12, 6, 1],              # (n+2)^3
        ]
    )
    return AperyFamily(
        "zeta3", recurrence, (1, 5), (0, 6), "zeta3", weight=3, scale=2,
        epsilon=lambda ctx: (ctx.sqrt(2) - 1) ** 4,
    )


NAMED_FAMILIES: Dict[str, Callable[[], AperyFamily]] = {
    "zeta2": apery_zeta2,
    "zeta3": apery_zeta3,
}
