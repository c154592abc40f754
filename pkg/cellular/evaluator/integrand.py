"""
Compiled cubical integrands evaluated in log-space.

Coordinates are passed as log x_i and log(1 - x_i) so that products near
the corners of the cube keep full relative accuracy. Variables that occur
only in x_k, 1 - x_k and one factor 1 - c x_k can be integrated exactly:

    int_0^1 x^alpha (1-x)^beta (1 - c x)^e dx
        = B(alpha+1, beta+1) 2F1(-e, alpha+1; alpha+beta+2; c)
"""
from __future__ import annotations

from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from scipy import special

from cellular.forms.factors import Factor, FactoredRational, FrameError
from cellular.logger import get_logger

logger = get_logger(__name__)


class Reduction:
    """One exactly integrated variable."""

    __slots__ = ("variable", "alpha", "beta", "compound", "exponent")

    def __init__(self, variable: int, alpha: int, beta: int, compound: Optional[Factor], exponent: int):
        self.variable = variable
        self.alpha = alpha
        self.beta = beta
        self.compound = compound
        self.exponent = exponent

    def partners(self) -> Tuple[int, ...]:
        """Other variables the argument c depends on."""
        if self.compound is None:
            return ()
        return tuple(v for v in self.compound.variables() if v != self.variable)

    def __repr__(self) -> str:
        return f"Reduction(x{self.variable}, alpha={self.alpha}, beta={self.beta}, {self.compound}^{self.exponent})"


def _compound_for(factor: Factor, k: int) -> bool:
    """True when ``factor`` is affine 1 - c x_k with c in [0, 1] built from the other variables."""
    if factor.kind == "one_minus_xprod":
        return k in factor.variables()
    if factor.kind == "nested":
        return factor.idx[2] == k
    return False


def _find_reductions(expr: FactoredRational) -> List[Reduction]:
    ell = expr.dimension
    chosen: List[Reduction] = []
    for k in range(1, ell + 1):
        alpha = beta = 0
        compound: Optional[Factor] = None
        exponent = 0
        eligible = True
        for factor, exp in expr.items():
            if k not in factor.variables():
                continue
            if factor == Factor("x", k):
                alpha = exp
            elif factor == Factor("one_minus_x", k):
                beta = exp
            elif compound is None and _compound_for(factor, k):
                compound, exponent = factor, exp
            else:
                eligible = False
                break
        if not eligible or alpha < 0 or beta < 0:
            continue
        reduction = Reduction(k, alpha, beta, compound, exponent)
        taken = {r.variable for r in chosen}
        if set(reduction.partners()) & taken:
            continue
        if any(k in r.partners() for r in chosen):
            continue
        chosen.append(reduction)
    return chosen


class CompiledIntegrand:
    """
    A positive cubical integrand split into exactly integrated variables and
    the ``free`` variables left for numerical integration.
    """

    def __init__(self, expr: FactoredRational, reduce: bool = True):
        if expr.frame != "cubical":
            raise FrameError(f"Integrands are compiled in the cubical frame, got {expr.frame}")
        self.expr = expr.abs()
        self.dimension = expr.dimension
        self.reductions = _find_reductions(self.expr) if reduce else []
        absorbed = set()
        for r in self.reductions:
            absorbed.update({Factor("x", r.variable), Factor("one_minus_x", r.variable)})
            if r.compound is not None:
                absorbed.add(r.compound)
        self.terms: List[Tuple[Factor, int]] = [(f, e) for f, e in self.expr.items() if f not in absorbed]
        reduced = {r.variable for r in self.reductions}
        self.free: List[int] = [k for k in range(1, self.dimension + 1) if k not in reduced]
        if self.reductions:
            logger.debug("Integrating %s exactly; %d variables left", self.reductions, len(self.free))

    # ------------------------------------------------------------------
    # arbitrary precision
    # ------------------------------------------------------------------

    def _log_factor_mp(self, ctx: Any, factor: Factor, lx: Dict[int, Any], ly: Dict[int, Any]) -> Any:
        kind, idx = factor.kind, factor.idx
        if kind == "x":
            return lx[idx[0]]
        if kind == "one_minus_x":
            return ly[idx[0]]
        if kind == "one_minus_xprod":
            return ctx.log(-ctx.expm1(ctx.fsum(lx[m] for m in factor.variables())))
        i, j, k = idx
        return ctx.log(ctx.exp(ly[k]) + ctx.exp(lx[i] + lx[j] + lx[k]))

    def _argument_mp(self, ctx: Any, r: Reduction, lx: Dict[int, Any]) -> Any:
        if r.compound.kind == "one_minus_xprod":
            return ctx.exp(ctx.fsum(lx[m] for m in r.partners()))
        i, j, _ = r.compound.idx
        return -ctx.expm1(lx[i] + lx[j])

    def _log_reduction_mp(self, ctx: Any, r: Reduction, lx: Dict[int, Any]) -> Any:
        head = ctx.log(ctx.beta(r.alpha + 1, r.beta + 1))
        if r.compound is None:
            return head
        c = self._argument_mp(ctx, r, lx)
        return head + ctx.log(ctx.hyp2f1(-r.exponent, r.alpha + 1, r.alpha + r.beta + 2, c))

    def log_value_mp(self, ctx: Any, lx: Dict[int, Any], ly: Dict[int, Any]) -> Any:
        """log of the (partially integrated) integrand at the free coordinates."""
        total = ctx.mpf(0)
        for factor, exp in self.terms:
            total += exp * self._log_factor_mp(ctx, factor, lx, ly)
        for r in self.reductions:
            total += self._log_reduction_mp(ctx, r, lx)
        return total

    # ------------------------------------------------------------------
    # float64, vectorised
    # ------------------------------------------------------------------

    def _log_factor_np(self, factor: Factor, lx: Dict[int, np.ndarray], ly: Dict[int, np.ndarray]) -> np.ndarray:
        kind, idx = factor.kind, factor.idx
        if kind == "x":
            return lx[idx[0]]
        if kind == "one_minus_x":
            return ly[idx[0]]
        if kind == "one_minus_xprod":
            return np.log(-np.expm1(sum(lx[m] for m in factor.variables())))
        i, j, k = idx
        return np.logaddexp(ly[k], lx[i] + lx[j] + lx[k])

    def _log_reduction_np(self, r: Reduction, lx: Dict[int, np.ndarray]) -> Any:
        head = float(np.log(special.beta(r.alpha + 1, r.beta + 1)))
        if r.compound is None:
            return head
        if r.compound.kind == "one_minus_xprod":
            c = np.exp(sum(lx[m] for m in r.partners()))
        else:
            i, j, _ = r.compound.idx
            c = -np.expm1(lx[i] + lx[j])
        return head + np.log(special.hyp2f1(-r.exponent, r.alpha + 1, r.alpha + r.beta + 2, c))

    def log_value_np(self, lx: Dict[int, np.ndarray], ly: Dict[int, np.ndarray]) -> np.ndarray:
        """Vectorised log value; ``lx``/``ly`` map each free variable to an array."""
        shape = np.broadcast_shapes(*(np.shape(v) for v in lx.values())) if lx else ()
        total = np.zeros(shape)
        for factor, exp in self.terms:
            total = total + exp * self._log_factor_np(factor, lx, ly)
        for r in self.reductions:
            total = total + self._log_reduction_np(r, lx)
        return total


def compile_integrand(expr: FactoredRational, reduce: bool = True) -> CompiledIntegrand:
    return CompiledIntegrand(expr, reduce)


def coordinates_np(points: np.ndarray) -> Tuple[Dict[int, np.ndarray], Dict[int, np.ndarray]]:
    """log x and log(1 - x) dictionaries for points of shape (..., dimension)."""
    dim = points.shape[-1]
    return (
        {k: np.log(points[..., k - 1]) for k in range(1, dim + 1)},
        {k: np.log1p(-points[..., k - 1]) for k in range(1, dim + 1)},
    )
