"""
Irrationality diagnostics for a sequence of linear forms in period constants.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Any, Dict, List, Optional

import mpmath

from cellular.config import get_config
from cellular.evaluator.constants import named_value
from cellular.logger import get_logger
from cellular.recurrences.models import LinearFormSpec

logger = get_logger(__name__)


@lru_cache(maxsize=64)
def lcm_upto(n: int) -> int:
    """d_n = lcm(1, ..., n), with d_0 = 1."""
    if n < 0:
        raise ValueError(f"lcm_upto needs n >= 0, got {n}")
    return math.lcm(*range(1, n + 1)) if n else 1


class DiagnosticsReport:
    """Integrality flags and growth rates of a linear form sequence."""

    def __init__(self, name: str, N: int):
        self.name = name
        self.N = N
        self.leading_integral = True
        self.denominators_bounded = True
        self.first_failure: Optional[int] = None
        self.abs_value: Any = None
        self.ratio: Any = None
        self.ratio_extrapolated: Any = None
        self.dn_root: Any = None
        self.epsilon: Any = None
        self.weighted_epsilon: Any = None
        self.ratio_error: Any = None

    @property
    def passes(self) -> bool:
        """Both integrality flags hold and e^w * epsilon < 1."""
        small = self.weighted_epsilon is not None and self.weighted_epsilon < 1
        return self.leading_integral and self.denominators_bounded and small

    def to_dict(self) -> Dict[str, Any]:
        def num(x: Any) -> Optional[str]:
            return None if x is None else mpmath.nstr(x, 15)

        return {
            "name": self.name,
            "N": self.N,
            "leading_integral": self.leading_integral,
            "denominators_bounded": self.denominators_bounded,
            "first_failure": self.first_failure,
            "abs_I_N": num(self.abs_value),
            "ratio": num(self.ratio),
            "ratio_extrapolated": num(self.ratio_extrapolated),
            "d_N_root": num(self.dn_root),
            "epsilon": num(self.epsilon),
            "weighted_epsilon": num(self.weighted_epsilon),
            "ratio_relative_error": num(self.ratio_error),
            "passes": self.passes,
        }

    def lines(self) -> List[str]:
        return [f"{key}: {value}" for key, value in self.to_dict().items()]


def diagnostics(spec: LinearFormSpec, prec: Optional[int] = None) -> DiagnosticsReport:
    """
    Check a_N in Z for the first sequence and d_N^w * c_N in Z for the others
    over the whole range, then measure |I_N|, |I_N / I_{N-1}| and d_N^(1/N)
    at the last index, working at ``prec`` decimal digits.
    """
    prec = prec or get_config("DIAGNOSTICS_DIGITS", 400)
    ctx = mpmath.MPContext()
    ctx.dps = prec
    N = spec.last_index
    report = DiagnosticsReport(spec.name, N)

    leading, others = spec.sequences[0], spec.sequences[1:]
    for n in range(spec.n0, N + 1):
        dn = lcm_upto(n) ** spec.weight
        if leading[n].denominator != 1:
            report.leading_integral = False
        if any((dn * s[n]).denominator != 1 for s in others):
            report.denominators_bounded = False
        if report.first_failure is None and not (report.leading_integral and report.denominators_bounded):
            report.first_failure = n
    if report.first_failure is not None:
        logger.warning("%s: integrality fails first at N=%d", spec.name, report.first_failure)

    constants = [named_value(ctx, name) for name in spec.constants]

    def value(n: int) -> Any:
        total = ctx.mpf(0)
        for c, q in zip(constants, spec.coefficients(n)):
            total += c * ctx.mpf(q.numerator) / q.denominator
        return abs(total)

    values = {n: value(n) for n in range(max(spec.n0, N - 2), N + 1)}
    report.abs_value = values[N]
    if N - 1 in values and values[N - 1]:
        report.ratio = values[N] / values[N - 1]
    if N - 2 in values and values[N - 2] and report.ratio is not None:
        # first-order Richardson step removes the 1/N correction of the ratio
        report.ratio_extrapolated = N * report.ratio - (N - 1) * values[N - 1] / values[N - 2]
    if N > 0:
        report.dn_root = ctx.root(ctx.mpf(lcm_upto(N)), N)
    if spec.epsilon is not None:
        report.epsilon = spec.epsilon(ctx)
        report.weighted_epsilon = ctx.e ** spec.weight * report.epsilon
        best = report.ratio_extrapolated if report.ratio_extrapolated is not None else report.ratio
        if best is not None:
            report.ratio_error = abs(best / report.epsilon - 1)
    logger.info("%s diagnostics at N=%d: ratio %s", spec.name, N, mpmath.nstr(report.ratio, 10) if report.ratio else None)
    return report
