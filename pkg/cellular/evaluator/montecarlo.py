"""
Randomised quasi-Monte Carlo on the cubical hypercube.

Each of MC_SCRAMBLES independent scrambles of a Sobol sequence gives one
estimate; their spread gives the standard error.
"""
from __future__ import annotations

import math
from typing import Dict, Optional, Tuple

import numpy as np
from scipy.stats import qmc

from cellular.config import get_config
from cellular.evaluator.integrand import CompiledIntegrand
from cellular.logger import get_logger

logger = get_logger(__name__)

_LOG6 = math.log(6.0)


def _log_coordinates(u: np.ndarray, smoothing: bool) -> Tuple[Dict[int, np.ndarray], Dict[int, np.ndarray], np.ndarray]:
    """log x, log(1 - x) per variable and the log Jacobian of u -> x."""
    u = np.clip(u, 2.0 ** -60, 1.0 - 2.0 ** -53)
    dim = u.shape[1]
    lx: Dict[int, np.ndarray] = {}
    ly: Dict[int, np.ndarray] = {}
    log_jac = np.zeros(u.shape[0])
    for k in range(1, dim + 1):
        col = u[:, k - 1]
        if smoothing:
            # x = u^2 (3 - 2u), 1 - x = (1 - u)^2 (1 + 2u), dx/du = 6 u (1 - u)
            lx[k] = 2 * np.log(col) + np.log(3 - 2 * col)
            ly[k] = 2 * np.log1p(-col) + np.log1p(2 * col)
            log_jac += _LOG6 + np.log(col) + np.log1p(-col)
        else:
            lx[k] = np.log(col)
            ly[k] = np.log1p(-col)
    return lx, ly, log_jac


def sample_count(samples: int, scrambles: int) -> int:
    """Points per scramble: the power of two at or above samples / scrambles."""
    per = max(1, -(-samples // scrambles))
    return 1 << max(0, (per - 1).bit_length())


def montecarlo_integrate(
    integrand: CompiledIntegrand,
    samples: int,
    seed: int,
    scrambles: Optional[int] = None,
    smoothing: Optional[bool] = None,
) -> Tuple[float, float, int]:
    """(mean, standard error, points used) over [0, 1]^dimension."""
    if integrand.reductions:
        raise ValueError("Monte Carlo integrands must be compiled without exact reductions")
    scrambles = scrambles or get_config("MC_SCRAMBLES", 16)
    smoothing = get_config("MC_SMOOTHING", True) if smoothing is None else smoothing
    batch = get_config("MC_BATCH", 2**16)
    per = sample_count(samples, scrambles)
    dim = integrand.dimension

    means = []
    for child in np.random.SeedSequence(seed).spawn(scrambles):
        engine = qmc.Sobol(d=dim, scramble=True, seed=np.random.default_rng(child))
        total = 0.0
        remaining = per
        while remaining:
            size = min(batch, remaining)
            lx, ly, log_jac = _log_coordinates(engine.random(size), smoothing)
            total += float(np.sum(np.exp(integrand.log_value_np(lx, ly) + log_jac)))
            remaining -= size
        means.append(total / per)

    estimates = np.array(means)
    mean = float(np.mean(estimates))
    stderr = float(np.std(estimates, ddof=1) / math.sqrt(scrambles)) if scrambles > 1 else float("inf")
    logger.debug("Monte Carlo: %d x %d points, mean %.10g +- %.3g", scrambles, per, mean, stderr)
    return mean, max(stderr, 1e-300), per * scrambles
