"""
Tensorised tanh-sinh quadrature on [0, 1]^m.

The node for t = k h is x = 1 / (1 + exp(-2u)) with u = (pi/2) sinh t, and
nodes are handed to integrands as (log x, log(1 - x), log w). Levels halve h;
the error estimate compares the last three level sums the way mpmath does.
"""
from __future__ import annotations

import itertools
import math
from typing import Any, Dict, List, Tuple

import mpmath
import numpy as np

from cellular.config import get_config
from cellular.evaluator.integrand import CompiledIntegrand
from cellular.logger import get_logger

logger = get_logger(__name__)

Node = Tuple[Any, Any, Any]

_MP_NODES: Dict[Tuple[int, int], List[Node]] = {}
_NP_NODES: Dict[int, Tuple[np.ndarray, np.ndarray, np.ndarray]] = {}

FLOAT_WEIGHT_CUTOFF = 1e-20
FLOAT_MAX_GRID = 2**24  # points per chunk in the float tensor sum


def working_digits(digits: int, dimension: int) -> int:
    return digits + get_config("QUAD_GUARD_DIGITS", 10) + get_config("QUAD_GUARD_PER_DIM", 5) * dimension


def nodes_mp(ctx: Any, level: int) -> List[Node]:
    """(log x, log(1-x), log w) for step 2^-level at the context's precision."""
    key = (level, ctx.prec)
    if key in _MP_NODES:
        return _MP_NODES[key]
    h = ctx.ldexp(1, -level)
    log_w_cut = -(ctx.dps + 10) * ctx.ln10
    log_y_cut = -(ctx.dps - 5) * ctx.ln10
    half_pi = ctx.pi / 2
    nodes: List[Node] = []
    k = 0
    while True:
        t = k * h
        u = half_pi * ctx.sinh(t)
        e = ctx.exp(-2 * u)
        lx = -ctx.log1p(e)
        ly = -2 * u + lx
        # w = h (pi/2) cosh t / (2 cosh^2 u) and sech^2 u = 4 e / (1 + e)^2
        lw = ctx.log(h * half_pi * ctx.cosh(t) * 2) + ctx.log(e) + 2 * lx
        if lw < log_w_cut or ly < log_y_cut:
            break
        nodes.append((lx, ly, lw))
        if k:
            nodes.append((ly, lx, lw))
        k += 1
    _MP_NODES[key] = nodes
    return nodes


def nodes_np(level: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    if level in _NP_NODES:
        return _NP_NODES[level]
    h = 2.0 ** -level
    t_max = math.asinh(2 / math.pi * 0.5 * math.log(4 / FLOAT_WEIGHT_CUTOFF))
    k = np.arange(0, int(t_max / h) + 2)
    t = k * h
    u = np.pi / 2 * np.sinh(t)
    lx = -np.log1p(np.exp(-2 * u))
    ly = -2 * u + lx
    lw = np.log(h * np.pi * np.cosh(t)) - 2 * u + 2 * lx
    keep = lw > math.log(FLOAT_WEIGHT_CUTOFF)
    lx, ly, lw = lx[keep], ly[keep], lw[keep]
    mirror = slice(1, None)
    nodes = (
        np.concatenate([lx, ly[mirror]]),
        np.concatenate([ly, lx[mirror]]),
        np.concatenate([lw, lw[mirror]]),
    )
    _NP_NODES[level] = nodes
    return nodes


def estimate_error(ctx: Any, results: List[Any], epsilon: Any) -> Any:
    if len(results) == 2:
        return abs(results[0] - results[1])
    if results[-1] == results[-2] == results[-3]:
        return ctx.zero
    try:
        d1 = ctx.log(abs(results[-1] - results[-2]), 10)
        d2 = ctx.log(abs(results[-1] - results[-3]), 10)
    except ValueError:
        return epsilon
    return ctx.mpf(10) ** int(min(0, max(d1 ** 2 / d2, 2 * d1, -ctx.dps)))


def _tensor_sum_mp(ctx: Any, integrand: CompiledIntegrand, nodes: List[Node]) -> Any:
    free = integrand.free
    if not free:
        return ctx.exp(integrand.log_value_mp(ctx, {}, {}))
    terms = []
    for combo in itertools.product(nodes, repeat=len(free)):
        lx = {v: node[0] for v, node in zip(free, combo)}
        ly = {v: node[1] for v, node in zip(free, combo)}
        lw = ctx.fsum(node[2] for node in combo)
        terms.append(ctx.exp(integrand.log_value_mp(ctx, lx, ly) + lw))
    return ctx.fsum(terms)


def integrate_mp(integrand: CompiledIntegrand, digits: int) -> Tuple[Any, Any, int, Any]:
    """(value, error estimate, levels used, context) at ``digits`` decimal digits."""
    ctx = mpmath.MPContext()
    ctx.dps = working_digits(digits, integrand.dimension)
    epsilon = ctx.mpf(10) ** (-digits)
    start, stop = get_config("QUAD_START_LEVEL", 3), get_config("QUAD_MAX_LEVEL", 8)
    results: List[Any] = []
    err = ctx.inf
    for level in range(start, stop + 1):
        results.append(_tensor_sum_mp(ctx, integrand, nodes_mp(ctx, level)))
        if len(results) >= 2:
            err = estimate_error(ctx, results, epsilon)
            logger.debug("tanh-sinh level %d: %s (error %s)", level, ctx.nstr(results[-1], 20), ctx.nstr(err, 3))
            if len(results) >= 3 and err <= epsilon:
                break
    if not integrand.free:
        err = ctx.zero
    if err > epsilon:
        logger.warning("tanh-sinh stopped at level %d with error estimate %s", stop, ctx.nstr(err, 3))
    err = max(err, ctx.mpf(10) ** (-ctx.dps))
    return results[-1], err, len(results), ctx


def _tensor_sum_np(integrand: CompiledIntegrand, nodes: Tuple[np.ndarray, np.ndarray, np.ndarray]) -> float:
    free = integrand.free
    m = len(free)
    if not m:
        return float(np.exp(integrand.log_value_np({}, {})))
    lx, ly, lw = nodes
    size = lx.size
    rest = size ** (m - 1)
    chunk = max(1, FLOAT_MAX_GRID // max(rest, 1))
    total = 0.0
    for lo in range(0, size, chunk):
        sl = slice(lo, min(size, lo + chunk))
        axes_x: Dict[int, np.ndarray] = {}
        axes_y: Dict[int, np.ndarray] = {}
        weight = 0.0
        for axis, v in enumerate(free):
            shape = [1] * m
            part = sl if axis == 0 else slice(None)
            count = lx[part].size
            shape[axis] = count
            axes_x[v] = lx[part].reshape(shape)
            axes_y[v] = ly[part].reshape(shape)
            weight = weight + lw[part].reshape(shape)
        total += float(np.sum(np.exp(integrand.log_value_np(axes_x, axes_y) + weight)))
    return total


def integrate_np(integrand: CompiledIntegrand, digits: int) -> Tuple[float, float, int]:
    """Float64 version of :func:`integrate_mp` for ``digits`` <= 15."""
    epsilon = 10.0 ** (-digits)
    start, stop = get_config("QUAD_START_LEVEL", 3), get_config("QUAD_MAX_LEVEL", 8)
    if len(integrand.free) >= 4:
        stop = min(stop, 5)
    ctx = mpmath.MPContext()
    ctx.dps = 16
    results: List[Any] = []
    err = ctx.inf
    for level in range(start, stop + 1):
        results.append(ctx.mpf(_tensor_sum_np(integrand, nodes_np(level))))
        if len(results) >= 2:
            err = estimate_error(ctx, results, ctx.mpf(epsilon))
            logger.debug("float tanh-sinh level %d: %.16g (error %.2g)", level, float(results[-1]), float(err))
            if len(results) >= 3 and err <= epsilon:
                break
    if not integrand.free:
        err = ctx.zero
    if err > epsilon:
        logger.warning("float tanh-sinh stopped with error estimate %.3g", float(err))
    return float(results[-1]), max(float(err), 1e-16 * abs(float(results[-1])), 1e-300), len(results)
