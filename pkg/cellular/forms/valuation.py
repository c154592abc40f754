"""
Orders of vanishing of generalised cellular forms along boundary divisors.

The exact route uses the half-integer indicator calculus: an edge whose two
ends fall in the same block of D contributes 1/2 of its exponent. The
numeric route collapses one block onto a point and measures the slope of
log|f omega| against log(epsilon).
"""
from __future__ import annotations

import random
from typing import List, Optional, Tuple, Union

import mpmath

from cellular.config import get_config
from cellular.configurations.divisors import finite_distance_divisors
from cellular.configurations.models import ConfigClass, DihedralStructure, HalfInt, Perm, StablePartition
from cellular.forms.builder import cycle_product, f_general
from cellular.forms.params import Edge, ParamSet, a_edges, b_edges
from cellular.logger import get_logger

logger = get_logger(__name__)


def linear_form_along(sigma: Perm, D: StablePartition) -> Tuple[List[Edge], List[Edge], HalfInt]:
    """
    The valuation along D as a linear form: 1/2 times the sum of a over the
    returned delta0-edges, minus 1/2 times the sum of b over the returned
    sigma-edges, plus the order of omega_sigma.
    """
    positive = [e for e in a_edges(sigma.n) if D.same_block(*e)]
    negative = [e for e in b_edges(sigma) if D.same_block(*e)]
    omega_order = HalfInt((sigma.n - 4) - len(negative))
    return positive, negative, omega_order


def ord_along(params: ParamSet, D: StablePartition, include_form: bool = True) -> HalfInt:
    """Order of f_sigma(a, b) (times omega_sigma when ``include_form``) along D."""
    positive, negative, omega_order = linear_form_along(params.sigma, D)
    doubled = sum(params.a[e] for e in positive) - sum(params.b[e] for e in negative)
    value = HalfInt(doubled)
    return value + omega_order if include_form else value


def is_convergent_params(
    c: Union[ConfigClass, Perm], params: ParamSet
) -> Tuple[bool, Optional[StablePartition]]:
    """
    True when f omega has no pole along any divisor at finite distance for
    delta0; otherwise False and the first failing divisor (smallest block first).
    """
    sigma = c.rep if isinstance(c, ConfigClass) else c
    if params.sigma != sigma:
        raise ValueError(f"Parameters belong to {params.sigma}, not {sigma}")
    for D in sorted(finite_distance_divisors(DihedralStructure.standard(sigma.n))):
        order = ord_along(params, D)
        if not order.is_integral:
            raise AssertionError(f"Half-integral order {order} along {D}")
        if order < 0:
            logger.debug("Parameters %s diverge along %s (order %s)", params.a_list(), D, order)
            return False, D
    return True, None


def fewer_negative_terms(sigma: Perm) -> bool:
    """Along every divisor at finite distance for delta0, more a-terms than b-terms."""
    for D in finite_distance_divisors(DihedralStructure.standard(sigma.n)):
        positive, negative, _ = linear_form_along(sigma, D)
        if len(negative) >= len(positive):
            return False
    return True


def valuation_by_expansion(
    params: ParamSet,
    D: StablePartition,
    include_form: bool = True,
    digits: Optional[int] = None,
    seed: int = 0,
) -> HalfInt:
    """
    Numeric order along D: cluster the smaller block as z_i = p + eps * u_i
    at two values of eps and round twice the measured slope.
    """
    digits = digits or get_config("VALUATION_ORACLE_DIGITS", 60)
    ctx = mpmath.MPContext()
    ctx.dps = digits
    n = params.n
    rng = random.Random(seed)

    expr = f_general(params.sigma, params)
    if include_form:
        expr = expr * cycle_product(params.sigma.values, n).inverse()

    block = D.block if len(D.block) <= len(D.complement) else D.complement
    base = {label: ctx.mpf(rng.uniform(-10, 10)) for label in range(1, n + 1)}
    centre = ctx.mpf(rng.uniform(-10, 10))
    offsets = {label: ctx.mpf(rng.uniform(-1, 1)) for label in block}

    def log_abs(eps) -> mpmath.mpf:
        coords = [centre + eps * offsets[label] if label in block else base[label] for label in range(1, n + 1)]
        total = ctx.mpf(0)
        for factor, exp in expr.items():
            total += exp * ctx.log(abs(factor.value(coords)))
        return total

    eps1, eps2 = ctx.mpf("1e-15"), ctx.mpf("1e-30")
    slope = (log_abs(eps2) - log_abs(eps1)) / (ctx.log(eps2) - ctx.log(eps1))
    order = slope + (len(block) - 2 if include_form else 0)
    doubled = int(ctx.nint(2 * order))
    if abs(2 * order - doubled) > ctx.mpf("1e-6"):
        logger.warning("Expansion slope %s along %s is far from a half-integer", ctx.nstr(order, 10), D)
    return HalfInt(doubled)
