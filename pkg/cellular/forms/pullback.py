"""
Identities between factored integrands: the product pullback identity and
changes of cubical coordinates given by factor dictionaries.
"""
from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Dict, Mapping, Optional, Sequence, Tuple

import sympy

from cellular.config import get_config
from cellular.configurations.models import Perm
from cellular.configurations.products import Pair, Triple, product
from cellular.forms.builder import cubical_integrand, cycle_product, f_general
from cellular.forms.factors import Factor, FactoredRational, FrameError, alphabet
from cellular.forms.params import ParamSet, extend_parameters, solve_homogeneity
from cellular.logger import get_logger

logger = get_logger(__name__)

FactorDictionary = Mapping[Factor, FactoredRational]


class SubstitutionError(ValueError):
    """Raised when a factor has no image in a substitution dictionary."""


# ============================================================================
# PRODUCT PULLBACK
# ============================================================================


def sample_plan(degree: int, bits: int, failure_bits: int) -> Tuple[int, int]:
    """
    Number of points and coordinate bits for deciding whether a rational
    function of degree at most ``degree`` is constant. A nonzero polynomial
    of that degree vanishes at a uniform point of [-2**bits, 2**bits]^m with
    probability at most degree / 2**(bits + 1) (Schwartz-Zippel); the count
    keeps a false pass for either sign below 2**-failure_bits.
    """
    degree = max(degree, 1)
    bits = max(bits, degree.bit_length() + 8)
    slack = bits + 1 - math.log2(degree)
    return math.ceil((failure_bits + 1) / slack), bits


def constant_unit(ratio: FactoredRational, size: int, points: Optional[int] = None, seed: int = 0) -> Tuple[bool, int]:
    """
    Test ratio == +-1 at random integer points off its poles. Returns
    (holds, sign); the point count follows ``sample_plan`` unless given.
    """
    count, bits = sample_plan(
        ratio.degree_bound(),
        get_config("IDENTITY_SAMPLE_BITS", 64),
        get_config("IDENTITY_FAILURE_BITS", 60),
    )
    count = points or count
    bound = 1 << bits
    rng = random.Random(seed)
    values = set()
    sampled = 0
    while sampled < count:
        point = [Fraction(rng.randint(-bound, bound)) for _ in range(size)]
        try:
            values.add(ratio.value(point))
        except ZeroDivisionError:
            continue
        sampled += 1
    holds = len(values) == 1 and abs(next(iter(values))) == 1
    logger.debug("Constant test on %d points of %d bits (degree %d): %s", count, bits, ratio.degree_bound(), holds)
    return holds, int(values.pop()) if holds else 0


def pullback_check(
    pair1: Pair,
    pair2: Pair,
    t1: Triple,
    t2: Triple,
    params: Optional[ParamSet] = None,
    points: Optional[int] = None,
    seed: int = 0,
) -> Tuple[bool, int]:
    """
    Check m*(f_1 (x) f_2) = +-f_alpha for the product of two pairs.

    ``params`` live on the product (alpha = delta0, default all ones); their
    restrictions to S_1 and S_2, minus the edges inside the triple, are
    extended uniquely and the ratio of both sides is evaluated at random
    integer points chosen by ``sample_plan``. Returns (identity holds, matched sign).
    """
    glued = product(pair1, pair2, t1, t2)
    m = glued.n
    params = params or ParamSet.basic(glued.sigma, 1)
    if params.sigma != glued.sigma:
        raise ValueError(f"Parameters belong to {params.sigma}, not to the product {glued.sigma}")
    triple = {glued.emb1[x] for x in t1}

    ratio = f_general(glued.sigma, params).inverse()
    for emb in (glued.emb1, glued.emb2):
        labels = set(emb.values())
        word = glued.alpha.restrict(labels).word
        word_prime = glued.alpha_prime.restrict(labels).word
        known_a = {e: v for e, v in params.a.items() if set(e) <= labels and not set(e) <= triple}
        known_b = {e: v for e, v in params.b.items() if set(e) <= labels and not set(e) <= triple}
        full_a, full_b = extend_parameters(word, word_prime, known_a, known_b)
        ratio = ratio * cycle_product(word, m, full_a) / cycle_product(word_prime, m, full_b)

    holds, sign = constant_unit(ratio, m, points, seed)
    logger.debug("Pullback identity for %s: %s (structural unit: %s)", glued.sigma, holds, ratio.is_unit)
    return holds, sign


# ============================================================================
# FACTOR DICTIONARIES
# ============================================================================


def cubical_symbols(ell: int) -> Tuple[sympy.Symbol, ...]:
    return sympy.symbols(f"x1:{ell + 1}")


def factor_into_alphabet(expr: sympy.Expr, n: int, frame: str = "cubical") -> FactoredRational:
    """
    Factor a rational expression over the alphabet of ``frame``; every
    irreducible factor must be a letter up to sign and the content must be +-1.
    """
    symbols = cubical_symbols(n - 3) if frame == "cubical" else None
    if symbols is None:
        raise FrameError("Factoring into the alphabet is supported in the cubical frame")
    lookup: Dict[sympy.Expr, Tuple[int, Factor]] = {}
    for letter in alphabet(frame, n - 3):
        expanded = sympy.expand(letter.to_sympy(symbols))
        lookup.setdefault(expanded, (1, letter))
        lookup.setdefault(sympy.expand(-expanded), (-1, letter))

    sign = 1
    exponents: Dict[Factor, int] = {}
    numerator, denominator = sympy.fraction(sympy.cancel(sympy.together(expr)))
    content = sympy.Integer(1)
    for part, direction in ((numerator, 1), (denominator, -1)):
        coeff, factors = sympy.factor_list(sympy.expand(part), *symbols)
        content = content * coeff ** direction
        for base, mult in factors:
            key = sympy.expand(base)
            if key not in lookup:
                raise SubstitutionError(f"Factor {base} is not in the {frame} alphabet")
            s, letter = lookup[key]
            if s < 0 and mult % 2:
                sign = -sign
            exponents[letter] = exponents.get(letter, 0) + direction * mult
    if abs(content) != 1:
        raise SubstitutionError(f"Constant {content} is not a unit")
    if content < 0:
        sign = -sign
    return FactoredRational(frame, n, sign, exponents)


def dictionary_from_map(images: Sequence[sympy.Expr], letters: Sequence[Factor], n: int) -> Dict[Factor, FactoredRational]:
    """Image of each letter under x_i -> images[i - 1], factored over the alphabet."""
    return {letter: factor_into_alphabet(letter.to_sympy(images), n) for letter in letters}


def jacobian_of_map(images: Sequence[sympy.Expr], n: int) -> FactoredRational:
    """|det d(images)/dx| as a factored rational."""
    symbols = cubical_symbols(n - 3)
    matrix = sympy.Matrix([[sympy.diff(image, s) for s in symbols] for image in images])
    return factor_into_alphabet(sympy.together(matrix.det()), n).abs()


def identity_dictionary(letters: Sequence[Factor], n: int) -> Dict[Factor, FactoredRational]:
    return {letter: FactoredRational.of(letter, n) for letter in letters}


def substitute(expr: FactoredRational, dictionary: FactorDictionary) -> FactoredRational:
    """Replace every factor of ``expr`` by its dictionary image."""
    result = FactoredRational(expr.frame, expr.n, expr.sign)
    for factor, exp in expr.items():
        if factor not in dictionary:
            raise SubstitutionError(f"No image for factor {factor}")
        result = result * dictionary[factor] ** exp
    return result


# ============================================================================
# THE THREE-DIMENSIONAL CHANGE OF VARIABLES
# ============================================================================

RV_SIGMA = (1, 4, 2, 6, 3, 5)


def rv3_map() -> Tuple[sympy.Expr, sympy.Expr, sympy.Expr]:
    """(x, y, z) -> ((1 - x)/(1 - xy), 1 - xy, z)."""
    x, y, z = cubical_symbols(3)
    return (1 - x) / (1 - x * y), 1 - x * y, z


def rv3_letters() -> Sequence[Factor]:
    return [
        Factor("x", 1), Factor("one_minus_x", 1),
        Factor("x", 2), Factor("one_minus_x", 2),
        Factor("x", 3), Factor("one_minus_x", 3),
        Factor("one_minus_xprod", 1, 2), Factor("one_minus_xprod", 2, 3),
    ]


def rv3_dictionary() -> Dict[Factor, FactoredRational]:
    return dictionary_from_map(rv3_map(), rv3_letters(), 6)


def rv3_params(h: int, k: int, l: int, q: int, r: int, s: int) -> ParamSet:
    """(a_1, a_2, a_3, a_4, a_6, b) = (l, s, k, q, r, r - q - h + s + k); a_5 from H_sigma."""
    a = [l, s, k, q, l + s - q, r]
    return solve_homogeneity(Perm(RV_SIGMA), a, r - q - h + s + k)


def rhin_viola_integrand(h: int, k: int, l: int, q: int, r: int, s: int) -> FactoredRational:
    """x^h (1-x)^l y^k (1-y)^s z^j (1-z)^q / (1 - (1 - xy) z)^(q + h - r + 1), j = l + s - q."""
    exponents = {
        Factor("x", 1): h, Factor("one_minus_x", 1): l,
        Factor("x", 2): k, Factor("one_minus_x", 2): s,
        Factor("x", 3): l + s - q, Factor("one_minus_x", 3): q,
        Factor("nested", 1, 2, 3): -(q + h - r + 1),
    }
    return FactoredRational("cubical", 6, 1, exponents)


def rv3_change_of_variables_check(
    hklqrs: Tuple[int, int, int, int, int, int] = (1, 1, 1, 1, 1, 1),
    dictionary: Optional[FactorDictionary] = None,
    jacobian: Optional[FactoredRational] = None,
) -> bool:
    """
    The n=6 generalised integrand for sigma = (1,4,2,6,3,5) in cubical
    coordinates, pushed through the dictionary and multiplied by the Jacobian,
    equals the three-parameter-family integrand up to sign.
    """
    h, k, l, q, r, s = hklqrs
    integrand = cubical_integrand(Perm(RV_SIGMA), rv3_params(h, k, l, q, r, s))
    dictionary = dictionary if dictionary is not None else rv3_dictionary()
    jacobian = jacobian if jacobian is not None else jacobian_of_map(rv3_map(), 6)
    image = substitute(integrand, dictionary) * jacobian
    target = rhin_viola_integrand(h, k, l, q, r, s)
    matches = image.equals_up_to_sign(target)
    if not matches:
        logger.warning("Change of variables gives %s, expected %s", image, target)
    return matches
