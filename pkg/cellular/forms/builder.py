"""
Construction of cellular integrands f_{delta/delta'}, omega_delta and the
generalised f_sigma(a, b), and the passage z -> simplicial -> cubical.

The simplicial frame puts z_1 = 0, z_{n-1} = 1, z_n = infinity and
z_k = t_{k-1} for 2 <= k <= n-2; factors containing z_n are dropped. The
cubical frame sets t_k = x_k x_{k+1} ... x_l, with Jacobian prod x_k^(k-1).
"""
from __future__ import annotations

from typing import Any, Dict, Mapping, Sequence, Tuple, Union

from cellular.configurations.dihedral import is_convergent
from cellular.configurations.models import ConfigClass, ConfigurationError, Perm
from cellular.forms.factors import Factor, FactoredRational, FrameError, one_minus_xprod, z_diff
from cellular.forms.params import Edge, HomogeneityError, ParamSet, edge
from cellular.logger import get_logger

logger = get_logger(__name__)


class DifferentialForm:
    """A top-degree form coefficient * d(coordinates) in one frame."""

    __slots__ = ("coefficient",)

    def __init__(self, coefficient: FactoredRational):
        self.coefficient = coefficient

    @property
    def frame(self) -> str:
        return self.coefficient.frame

    @property
    def degree(self) -> int:
        return self.coefficient.n - 3

    def __mul__(self, function: FactoredRational) -> "DifferentialForm":
        return DifferentialForm(self.coefficient * function)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DifferentialForm) and self.coefficient == other.coefficient

    def equals_up_to_sign(self, other: "DifferentialForm") -> bool:
        return self.coefficient.equals_up_to_sign(other.coefficient)

    def __repr__(self) -> str:
        return f"DifferentialForm({self.coefficient})"

    def to_dict(self) -> Dict[str, Any]:
        return {"degree": self.degree, "coefficient": self.coefficient.to_dict()}


# ============================================================================
# Z FRAME
# ============================================================================


def cycle_product(word: Sequence[int], n: int, exponents: Union[int, Mapping[Edge, int]] = 1) -> FactoredRational:
    """prod_k (z_{w_k} - z_{w_k+1})^{e_k} around the cyclic word."""
    sign = 1
    factors: Dict[Factor, int] = {}
    size = len(word)
    for k in range(size):
        u, v = word[k], word[(k + 1) % size]
        e = exponents if isinstance(exponents, int) else exponents[edge(u, v)]
        s, factor = z_diff(u, v)
        if s < 0 and e % 2:
            sign = -sign
        factors[factor] = factors.get(factor, 0) + e
    return FactoredRational("z", n, sign, factors)


def f_ratio(word: Sequence[int], word_prime: Sequence[int], n: int) -> FactoredRational:
    """f_{delta/delta'}: the delta-cycle product over the delta'-cycle product."""
    return cycle_product(word, n) / cycle_product(word_prime, n)


def cellular_form(word: Sequence[int], n: int) -> DifferentialForm:
    """omega_delta = dz / prod over the edges of delta."""
    return DifferentialForm(cycle_product(word, n).inverse())


def f_general(sigma: Perm, params: ParamSet) -> FactoredRational:
    """f_sigma(a, b) in the z frame."""
    if params.sigma != sigma:
        raise HomogeneityError(f"Parameters belong to {params.sigma}, not {sigma}")
    n = sigma.n
    return cycle_product(range(1, n + 1), n, params.a) / cycle_product(sigma.values, n, params.b)


# ============================================================================
# SIMPLICIAL AND CUBICAL FRAMES
# ============================================================================


def _simplicial_image(factor: Factor, n: int) -> Tuple[int, Factor]:
    """(sign, image) of z_i - z_j; image None for constants and dropped factors."""
    i, j = factor.idx
    if j == n:
        return 1, None
    if i == 1 and j == n - 1:
        return -1, None
    if i == 1:
        return -1, Factor("t", j - 1)
    if j == n - 1:
        return -1, Factor("one_minus_t", i - 1)
    return -1, Factor("t_diff", i - 1, j - 1)


def to_simplicial(expr: Union[FactoredRational, DifferentialForm]) -> Union[FactoredRational, DifferentialForm]:
    """Exact z -> simplicial substitution, sign included."""
    if isinstance(expr, DifferentialForm):
        return DifferentialForm(to_simplicial(expr.coefficient))
    if expr.frame != "z":
        raise FrameError(f"to_simplicial expects the z frame, got {expr.frame}")
    n = expr.n
    sign = expr.sign
    factors: Dict[Factor, int] = {}
    for factor, exp in expr.items():
        s, image = _simplicial_image(factor, n)
        if s < 0 and exp % 2:
            sign = -sign
        if image is not None:
            factors[image] = factors.get(image, 0) + exp
    return FactoredRational("simplicial", n, sign, factors)


def _cubical_image(factor: Factor, ell: int) -> Dict[Factor, int]:
    k = factor.kind
    if k == "t":
        return {Factor("x", m): 1 for m in range(factor.idx[0], ell + 1)}
    if k == "one_minus_t":
        return {one_minus_xprod(factor.idx[0], ell): 1}
    i, j = factor.idx
    image = {Factor("x", m): 1 for m in range(j, ell + 1)}
    image[one_minus_xprod(i, j - 1)] = 1
    return image


def cubical_jacobian(n: int) -> FactoredRational:
    """dt_1...dt_l = prod_k x_k^(k-1) dx_1...dx_l."""
    return FactoredRational("cubical", n, 1, {Factor("x", k): k - 1 for k in range(2, n - 2)})


def to_cubical(expr: Union[FactoredRational, DifferentialForm]) -> Union[FactoredRational, DifferentialForm]:
    """Exact simplicial -> cubical substitution; forms pick up the Jacobian."""
    if isinstance(expr, DifferentialForm):
        return DifferentialForm(to_cubical(expr.coefficient) * cubical_jacobian(expr.coefficient.n))
    if expr.frame != "simplicial":
        raise FrameError(f"to_cubical expects the simplicial frame, got {expr.frame}")
    ell = expr.n - 3
    factors: Dict[Factor, int] = {}
    for factor, exp in expr.items():
        for image, mult in _cubical_image(factor, ell).items():
            factors[image] = factors.get(image, 0) + mult * exp
    return FactoredRational("cubical", expr.n, expr.sign, factors)


# ============================================================================
# INTEGRANDS
# ============================================================================


def _perm_of(c: Union[ConfigClass, Perm]) -> Perm:
    return c.rep if isinstance(c, ConfigClass) else c


def build_basic(c: Union[ConfigClass, Perm]) -> Tuple[FactoredRational, DifferentialForm]:
    """
    (f, omega) of the basic cellular integral in the simplicial frame, with
    f and omega positive on 0 < t_1 < ... < t_l < 1.
    """
    sigma = _perm_of(c)
    if sigma.n < 5:
        raise ConfigurationError(f"Cellular integrands need n >= 5, got {sigma.n}")
    if not is_convergent(sigma):
        raise ConfigurationError(f"{sigma} is not a convergent configuration")
    n = sigma.n
    f = to_simplicial(f_ratio(range(1, n + 1), sigma.values, n))
    omega = to_simplicial(cellular_form(sigma.values, n))
    logger.debug("Basic integrand for %s: raw signs f=%d omega=%d", sigma, f.sign, omega.coefficient.sign)
    return f.abs(), DifferentialForm(omega.coefficient.abs())


def build_general(sigma: Union[ConfigClass, Perm], params: ParamSet) -> Tuple[FactoredRational, DifferentialForm]:
    """(f_sigma(a, b), omega_sigma) in the simplicial frame, positive on the cell."""
    sigma = _perm_of(sigma)
    if sigma.n < 5:
        raise ConfigurationError(f"Cellular integrands need n >= 5, got {sigma.n}")
    if not params.is_homogeneous():
        raise HomogeneityError(f"Parameters are not homogeneous: {params.homogeneity_residuals()}")
    f = to_simplicial(f_general(sigma, params))
    omega = to_simplicial(cellular_form(sigma.values, sigma.n))
    return f.abs(), DifferentialForm(omega.coefficient.abs())


def cubical_integrand(sigma: Union[ConfigClass, Perm], params: ParamSet) -> FactoredRational:
    """Coefficient of f_sigma(a, b) omega_sigma on [0, 1]^l, Jacobian included."""
    f, omega = build_general(sigma, params)
    return (to_cubical(omega) * to_cubical(f)).coefficient


def basic_cubical_integrand(c: Union[ConfigClass, Perm], N: int) -> FactoredRational:
    f, omega = build_basic(c)
    return (to_cubical(omega) * (to_cubical(f) ** N)).coefficient
