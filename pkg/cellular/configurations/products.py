"""
Multipliability of pairs of dihedral structures and the product that glues
two pairs along a triple of points.
"""
from __future__ import annotations

from typing import Dict, Hashable, List, Sequence, Tuple

from cellular.configurations.dihedral import canonical_config
from cellular.configurations.models import ConfigClass, DihedralStructure, Perm
from cellular.logger import get_logger

logger = get_logger(__name__)

Pair = Tuple[DihedralStructure, DihedralStructure]
Triple = Sequence[Hashable]


class ProductError(ValueError):
    """Raised when two pairs cannot be multiplied along the given triples."""


def _check_triple(d: DihedralStructure, t: Triple) -> None:
    if len(t) != 3 or len(set(t)) != 3:
        raise ProductError(f"A triple needs three distinct labels, got {tuple(t)}")
    missing = [label for label in t if label not in d.labels]
    if missing:
        raise ProductError(f"Triple labels {missing} are not in the structure")


def is_multipliable(pair: Pair, t: Triple) -> bool:
    """
    t(1), t(2), t(3) consecutive in that order for delta, and t(1), t(3)
    adjacent for delta'. Symmetric under reversing the triple.
    """
    delta, deltap = pair
    if delta.labels != deltap.labels:
        raise ProductError("Both structures of a pair must live on the same label set")
    if delta.n < 3:
        return False
    _check_triple(delta, t)
    t1, t2, t3 = t
    in_order = delta.are_adjacent(t1, t2) and delta.are_adjacent(t2, t3)
    return in_order and deltap.are_adjacent(t1, t3)


def _read_from(d: DihedralStructure, first: Hashable, second: Hashable) -> List[Hashable]:
    """The word of ``d`` read from ``first`` in the direction of its neighbour ``second``."""
    word = d.walk(first)
    if word[1] != second:
        word = [word[0]] + word[1:][::-1]
    return word


def _split_at(word: List[Hashable], middle: Hashable) -> Tuple[List[Hashable], List[Hashable]]:
    """For word = (start, X..., middle, Y..., end) return (X, Y)."""
    k = word.index(middle)
    return word[1:k], word[k + 1:-1]


class Product:
    """
    The product (alpha, alpha') of two pairs, relabelled by 1..m in alpha order,
    so alpha is delta0 and alpha' is sigma.delta0 for ``sigma``.

    ``emb1`` and ``emb2`` send the labels of S1 and S2 into 1..m; the triple
    of S2 lands on the image of the triple of S1.
    """

    def __init__(self, alpha_word: List[Hashable], alphap_word: List[Hashable],
                 emb1: Dict[Hashable, Hashable], emb2: Dict[Hashable, Hashable]):
        numbering = {label: i for i, label in enumerate(alpha_word, start=1)}
        self.alpha = DihedralStructure.standard(len(alpha_word))
        self.sigma = Perm(numbering[label] for label in alphap_word)
        self.alpha_prime = DihedralStructure.of_perm(self.sigma)
        self.emb1 = {label: numbering[tag] for label, tag in emb1.items()}
        self.emb2 = {label: numbering[tag] for label, tag in emb2.items()}

    @property
    def n(self) -> int:
        return self.sigma.n

    def pair(self) -> Pair:
        return self.alpha, self.alpha_prime

    def config(self) -> ConfigClass:
        return canonical_config(self.sigma)

    def __repr__(self) -> str:
        return f"Product(sigma={self.sigma})"


def product(pair1: Pair, pair2: Pair, t1: Triple, t2: Triple) -> Product:
    """
    Glue pair1 on S1 and pair2 on S2 along t1(i) = t2(i).

    pair1 must be multipliable along t1 and the dual (delta2', delta2) of
    pair2 along t2. The result restricts to delta_i and delta_i' on S_i.
    """
    delta1, delta1p = pair1
    delta2, delta2p = pair2
    if not is_multipliable(pair1, t1):
        raise ProductError(f"The first pair is not multipliable along {tuple(t1)}")
    if not is_multipliable((delta2p, delta2), t2):
        raise ProductError(f"The dual of the second pair is not multipliable along {tuple(t2)}")

    # S1 labels keep tag 0, S2 labels outside the triple get tag 1.
    emb1 = {label: (0, label) for label in delta1.labels}
    emb2 = {label: (1, label) for label in delta2.labels}
    for a, b in zip(t1, t2):
        emb2[b] = (0, a)
    T1, T2, T3 = (emb1[x] for x in t1)

    d1 = [emb1[x] for x in _read_from(delta1, t1[0], t1[1])]
    if d1[2] != T3:
        raise ProductError("The triple is not consecutive in the first structure")
    tail_c = d1[3:]
    d1p = [emb1[x] for x in delta1p.walk(t1[2], avoid=t1[0])]
    run_d1, run_d2 = _split_at(d1p, T2)

    d2p = [emb2[x] for x in _read_from(delta2p, t2[0], t2[1])]
    tail_e = d2p[3:]
    d2 = [emb2[x] for x in delta2.walk(t2[2], avoid=t2[0])]
    run_a, run_b = _split_at(d2, T2)

    alpha = [T1] + run_b[::-1] + [T2] + run_a[::-1] + [T3] + tail_c
    alphap = [T3] + run_d1 + [T2] + run_d2 + [T1] + tail_e[::-1]
    result = Product(alpha, alphap, emb1, emb2)

    for structure, emb, expected in (
        (result.alpha, result.emb1, delta1),
        (result.alpha_prime, result.emb1, delta1p),
        (result.alpha, result.emb2, delta2),
        (result.alpha_prime, result.emb2, delta2p),
    ):
        back = {v: k for k, v in emb.items()}
        restricted = structure.restrict(back.keys()).relabel(back)
        if restricted != expected:
            raise ProductError(f"Restriction {restricted} does not reproduce {expected}")

    logger.debug("Product of sizes %d and %d gives sigma=%s", delta1.n, delta2.n, result.sigma)
    return result


def config_of_pair(alpha: DihedralStructure, alphap: DihedralStructure) -> ConfigClass:
    """Relabel a pair on any label set to (delta0, sigma.delta0) and canonicalize."""
    if alpha.labels != alphap.labels:
        raise ProductError("Both structures of a pair must live on the same label set")
    numbering = {label: i for i, label in enumerate(alpha.word, start=1)}
    return canonical_config(Perm(numbering[label] for label in alphap.word))
