"""
Numerical evaluation of cellular integrals over the cubical hypercube.
"""
from __future__ import annotations

import itertools
from typing import Any, Dict, Optional, Union

import numpy as np
from scipy import optimize

from cellular.config import get_config
from cellular.configurations.dihedral import canonical_config, is_convergent
from cellular.configurations.models import ConfigClass, Perm
from cellular.evaluator.integrand import CompiledIntegrand
from cellular.evaluator.montecarlo import montecarlo_integrate
from cellular.evaluator.precision import BigFloat, bits_for_digits
from cellular.evaluator.quadrature import integrate_mp, integrate_np
from cellular.forms.builder import basic_cubical_integrand, build_basic, cubical_integrand, to_cubical
from cellular.forms.factors import FactoredRational
from cellular.forms.params import ParamSet
from cellular.forms.valuation import is_convergent_params
from cellular.logger import get_logger, log_duration

logger = get_logger(__name__)

FLOAT_BITS = 53


class ConvergenceError(ValueError):
    """Raised when an integral diverges (non-convergent configuration or parameters)."""


class EvaluationError(ValueError):
    """Raised when an integral is outside what an evaluation method supports."""


class EvalResult:
    """Value of an integral with its error estimate and how it was obtained."""

    def __init__(
        self,
        value: BigFloat,
        error_estimate: BigFloat,
        method: str,
        levels: Optional[int] = None,
        samples: Optional[int] = None,
        config: Optional[Perm] = None,
        N: Optional[int] = None,
        params: Optional[ParamSet] = None,
    ):
        if not error_estimate > 0:
            raise ValueError("Error estimates must be positive")
        self.value = value
        self.error_estimate = error_estimate
        self.method = method
        self.levels = levels
        self.samples = samples
        self.config = config
        self.N = N
        self.params = params

    def __repr__(self) -> str:
        return f"EvalResult({self.value.to_decimal(20)} +- {self.error_estimate.to_decimal(3)}, {self.method})"

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "value": self.value.to_decimal(),
            "err": self.error_estimate.to_decimal(5),
            "method": self.method,
            "config": list(self.config.values) if self.config else None,
        }
        if self.N is not None:
            data["N"] = self.N
        if self.params is not None:
            data["params"] = self.params.to_dict()
        if self.levels is not None:
            data["levels"] = self.levels
        if self.samples is not None:
            data["samples"] = self.samples
        return data


def _perm(c: Union[ConfigClass, Perm]) -> Perm:
    return c.rep if isinstance(c, ConfigClass) else c


def _require_target(err: Any, epsilon: Any, sigma: Perm, digits: int, levels: int) -> None:
    if err > epsilon:
        raise EvaluationError(
            f"Quadrature of {sigma} did not reach {digits} digits after {levels} levels "
            f"(error estimate {float(err):.3g}); raise QUAD_MAX_LEVEL or lower the precision"
        )


def _quadrature(integrand_expr: FactoredRational, digits: int, sigma: Perm, **labels: Any) -> EvalResult:
    ell = integrand_expr.dimension
    fast = digits <= get_config("FAST_PATH_MAX_DIGITS", 15)
    if ell > get_config("QUAD_MAX_DIMENSION", 3):
        if ell > get_config("QUAD_FAST_MAX_DIMENSION", 4) or not fast:
            raise EvaluationError(
                f"Quadrature supports dimension <= 3 (4 with digits <= 15); got dimension {ell} at {digits} digits"
            )
        logger.warning("Four-dimensional quadrature for %s runs in float64 and may be slow", sigma)

    integrand = CompiledIntegrand(integrand_expr, reduce=get_config("QUAD_ANALYTIC_REDUCTION", True))
    if fast:
        with log_duration(logger, "Float quadrature of %s (dimension %d)", sigma, ell):
            value, err, levels = integrate_np(integrand, digits)
        _require_target(err, 10.0 ** (-digits), sigma, digits, levels)
        return EvalResult(
            BigFloat.of(abs(value), FLOAT_BITS), BigFloat.of(err, FLOAT_BITS), "tanh-sinh",
            levels=levels, config=sigma, **labels,
        )
    with log_duration(logger, "Quadrature of %s at %d digits (dimension %d)", sigma, digits, ell):
        value, err, levels, ctx = integrate_mp(integrand, digits)
    _require_target(err, ctx.mpf(10) ** (-digits), sigma, digits, levels)
    bits = bits_for_digits(digits + 5)
    return EvalResult(
        BigFloat.of(abs(value), bits), BigFloat.of(err, bits), "tanh-sinh", levels=levels, config=sigma, **labels
    )


def eval_basic(c: Union[ConfigClass, Perm], N: int, digits: Optional[int] = None) -> EvalResult:
    """|I(N)| for the basic cellular integral of ``c``."""
    sigma = _perm(c)
    if N < 0:
        raise ValueError(f"N must be non-negative, got {N}")
    if not is_convergent(sigma):
        raise ConvergenceError(f"{sigma} is not convergent")
    digits = digits or get_config("DEFAULT_DIGITS", 30)
    return _quadrature(basic_cubical_integrand(sigma, N), digits, sigma, N=N)


def eval_general(c: Union[ConfigClass, Perm], params: ParamSet, digits: Optional[int] = None) -> EvalResult:
    """|I_sigma(a, b)| for homogeneous parameters inside the convergence region."""
    sigma = _perm(c)
    ok, witness = is_convergent_params(sigma, params)
    if not ok:
        raise ConvergenceError(f"Parameters {params.a_list()} diverge along {witness}")
    digits = digits or get_config("DEFAULT_DIGITS", 30)
    return _quadrature(cubical_integrand(sigma, params), digits, sigma, params=params)


def eval_montecarlo(
    c: Union[ConfigClass, Perm],
    N_or_params: Union[int, ParamSet],
    samples: Optional[int] = None,
    seed: Optional[int] = None,
) -> EvalResult:
    """Randomised QMC estimate; the error estimate is one standard error."""
    sigma = _perm(c)
    if sigma.n - 3 > get_config("MC_MAX_DIMENSION", 6):
        raise EvaluationError(f"Monte Carlo supports dimension <= 6, got {sigma.n - 3}")
    samples = samples or get_config("MC_DEFAULT_SAMPLES", 2**16)
    seed = get_config("DEFAULT_SEED", 0) if seed is None else seed
    if isinstance(N_or_params, ParamSet):
        params = N_or_params
        ok, witness = is_convergent_params(sigma, params)
        if not ok:
            raise ConvergenceError(f"Parameters {params.a_list()} diverge along {witness}")
        expr = cubical_integrand(sigma, params)
        labels: Dict[str, Any] = {"params": params}
    else:
        if not is_convergent(sigma):
            raise ConvergenceError(f"{sigma} is not convergent")
        expr = basic_cubical_integrand(sigma, N_or_params)
        labels = {"N": N_or_params}
    integrand = CompiledIntegrand(expr, reduce=False)
    with log_duration(logger, "Monte Carlo for %s with %d samples", sigma, samples):
        mean, stderr, used = montecarlo_integrate(integrand, samples, seed)
    return EvalResult(
        BigFloat.of(mean, FLOAT_BITS), BigFloat.of(stderr, FLOAT_BITS), "monte-carlo",
        samples=used, config=sigma, **labels,
    )


def max_on_cell(c: Union[ConfigClass, Perm]) -> BigFloat:
    """
    Supremum of |f| over the closed cell: a coarse interior grid in cubical
    coordinates followed by bounded L-BFGS-B refinement from the best points.
    """
    sigma = canonical_config(_perm(c)).rep
    if not is_convergent(sigma):
        raise ConvergenceError(f"{sigma} is not convergent")
    f, _ = build_basic(sigma)
    integrand = CompiledIntegrand(to_cubical(f), reduce=False)
    ell = integrand.dimension

    def log_f(points: np.ndarray) -> np.ndarray:
        pts = np.clip(points, 1e-12, 1 - 1e-12)
        lx = {k: np.log(pts[..., k - 1]) for k in range(1, ell + 1)}
        ly = {k: np.log1p(-pts[..., k - 1]) for k in range(1, ell + 1)}
        return integrand.log_value_np(lx, ly)

    count = get_config("MAX_GRID_POINTS", 12)
    axis = (np.arange(count) + 0.5) / count
    grid = np.array(list(itertools.product(axis, repeat=ell)))
    values = log_f(grid)
    starts = grid[np.argsort(values)[::-1][: get_config("MAX_REFINE_STARTS", 4)]]
    best = float(np.max(values))
    for start in starts:
        outcome = optimize.minimize(
            lambda x: -float(log_f(np.asarray(x))),
            start,
            method="L-BFGS-B",
            bounds=[(1e-12, 1 - 1e-12)] * ell,
        )
        best = max(best, -float(outcome.fun))
    maximum = float(np.exp(best))
    logger.debug("max |f| on the cell of %s: %.12g", sigma, maximum)
    return BigFloat.of(maximum, FLOAT_BITS)
