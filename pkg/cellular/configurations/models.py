"""
Core combinatorial types: permutations, dihedral structures, configuration
classes, stable partitions and half-integers.

Conventions:
  - Labels of the standard structure are 1..n.
  - A permutation sigma = (sigma(1), ..., sigma(n)) stands for the pair of
    dihedral structures (delta0, sigma.delta0), where sigma.delta0 is the
    cyclic order sigma(1), sigma(2), ..., sigma(n).
  - Stable partitions are bitmasks with bit (i - 1) standing for label i.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, FrozenSet, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple, Union


class ConfigurationError(ValueError):
    """Raised for malformed permutations, labels or sizes."""


# ============================================================================
# PERMUTATIONS
# ============================================================================


class Perm:
    """A permutation of 1..n, stored as the tuple of its values."""

    __slots__ = ("n", "values")

    def __init__(self, values: Iterable[int]):
        vals = tuple(int(v) for v in values)
        n = len(vals)
        if n < 3:
            raise ConfigurationError(f"Permutations need n >= 3, got n={n}")
        if sorted(vals) != list(range(1, n + 1)):
            raise ConfigurationError(f"{list(vals)} is not a permutation of 1..{n}")
        self.n = n
        self.values = vals

    @property
    def ell(self) -> int:
        """Dimension of the moduli space, n - 3."""
        return self.n - 3

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(1, n + 1))

    @classmethod
    def parse(cls, text: str) -> "Perm":
        """Parse '5,2,4,1,3', '[5, 2, 4, 1, 3]' or '5 2 4 1 3'."""
        cleaned = text.strip().strip("[]()")
        parts = [p for p in cleaned.replace(",", " ").split() if p]
        try:
            return cls(int(p) for p in parts)
        except ValueError as exc:
            if isinstance(exc, ConfigurationError):
                raise
            raise ConfigurationError(f"Cannot parse permutation from {text!r}") from exc

    def inverse(self) -> "Perm":
        inv = [0] * self.n
        for position, value in enumerate(self.values, start=1):
            inv[value - 1] = position
        return Perm(inv)

    def edges(self) -> List[Tuple[int, int]]:
        """Cyclic edges {sigma_i, sigma_i+1} as sorted pairs, in cycle order."""
        vals = self.values
        n = self.n
        return [tuple(sorted((vals[i], vals[(i + 1) % n]))) for i in range(n)]

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, index: int) -> int:
        return self.values[index]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Perm) and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __lt__(self, other: "Perm") -> bool:
        return (self.n, self.values) < (other.n, other.values)

    def __repr__(self) -> str:
        return f"Perm({list(self.values)})"

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.values)

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "values": list(self.values)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Perm":
        return cls(data.get("values") or data.get("rep") or [])


# ============================================================================
# DIHEDRAL STRUCTURES
# ============================================================================


def canonical_word(labels: Sequence[Hashable]) -> Tuple:
    """Lexicographic minimum of a cyclic word over its 2n rotations and reflections."""
    word = tuple(labels)
    n = len(word)
    best = word
    for candidate in (word, word[::-1]):
        for shift in range(n):
            rotated = candidate[shift:] + candidate[:shift]
            if rotated < best:
                best = rotated
    return best


class DihedralStructure:
    """
    A cyclic ordering of a finite label set, up to rotation and reflection.

    Labels must be mutually comparable; the stored word is the lexicographically
    least of the 2n dihedral images.
    """

    __slots__ = ("word",)

    def __init__(self, labels: Iterable[Hashable]):
        word = tuple(labels)
        if len(set(word)) != len(word):
            raise ConfigurationError(f"Repeated labels in dihedral structure {word}")
        if len(word) < 3:
            raise ConfigurationError("Dihedral structures need at least 3 labels")
        self.word = canonical_word(word)

    @classmethod
    def standard(cls, n: int) -> "DihedralStructure":
        """The standard structure delta0 = (1, 2, ..., n)."""
        return cls(range(1, n + 1))

    @classmethod
    def of_perm(cls, p: Perm) -> "DihedralStructure":
        """The structure sigma.delta0 = (sigma(1), ..., sigma(n))."""
        return cls(p.values)

    @property
    def n(self) -> int:
        return len(self.word)

    @property
    def labels(self) -> FrozenSet[Hashable]:
        return frozenset(self.word)

    def neighbours(self, label: Hashable) -> Tuple[Hashable, Hashable]:
        i = self.word.index(label)
        return self.word[i - 1], self.word[(i + 1) % self.n]

    def are_adjacent(self, u: Hashable, v: Hashable) -> bool:
        return v in self.neighbours(u)

    def edges(self) -> List[FrozenSet[Hashable]]:
        w = self.word
        return [frozenset((w[i], w[(i + 1) % self.n])) for i in range(self.n)]

    def is_consecutive(self, block: Iterable[Hashable]) -> bool:
        """True if the labels of ``block`` form a single cyclic run."""
        block = set(block)
        if not block or len(block) == self.n:
            return True
        starts = 0
        for i, label in enumerate(self.word):
            if label in block and self.word[i - 1] not in block:
                starts += 1
        return starts == 1

    def walk(self, start: Hashable, avoid: Optional[Hashable] = None) -> List[Hashable]:
        """
        The cyclic word read from ``start``, in the direction whose first step
        is not ``avoid`` (or the stored direction when ``avoid`` is None).
        """
        i = self.word.index(start)
        forward = list(self.word[i:] + self.word[:i])
        if avoid is not None and forward[1] == avoid:
            return [forward[0]] + forward[1:][::-1]
        return forward

    def restrict(self, subset: Iterable[Hashable]) -> "DihedralStructure":
        keep = set(subset)
        return DihedralStructure(label for label in self.word if label in keep)

    def relabel(self, mapping: Dict[Hashable, Hashable]) -> "DihedralStructure":
        return DihedralStructure(mapping[label] for label in self.word)

    def __iter__(self) -> Iterator[Hashable]:
        return iter(self.word)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DihedralStructure) and self.word == other.word

    def __hash__(self) -> int:
        return hash(self.word)

    def __repr__(self) -> str:
        return f"DihedralStructure({list(self.word)})"


# ============================================================================
# CONFIGURATION CLASSES
# ============================================================================


class ConfigClass:
    """
    An equivalence class [delta, delta'] of pairs of dihedral structures,
    held by its canonical (lexicographically least) permutation.

    Build instances through ``canonical_config``; the constructor trusts
    that ``rep`` is already canonical.
    """

    __slots__ = ("rep",)

    def __init__(self, rep: Perm):
        self.rep = rep

    @property
    def n(self) -> int:
        return self.rep.n

    @property
    def ell(self) -> int:
        return self.rep.n - 3

    def delta(self) -> DihedralStructure:
        return DihedralStructure.standard(self.n)

    def delta_prime(self) -> DihedralStructure:
        return DihedralStructure.of_perm(self.rep)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ConfigClass) and self.rep == other.rep

    def __hash__(self) -> int:
        return hash(self.rep)

    def __lt__(self, other: "ConfigClass") -> bool:
        return self.rep < other.rep

    def __repr__(self) -> str:
        return f"ConfigClass([{self.rep}])"

    def __str__(self) -> str:
        return f"[{self.rep}]"

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "rep": list(self.rep.values)}


# ============================================================================
# STABLE PARTITIONS
# ============================================================================


class StablePartition:
    """
    A stable partition S1 | S2 of {1..n} (both blocks of size >= 2), naming
    the boundary divisor D_{S1|S2}. The stored block is the one containing 1.
    """

    __slots__ = ("n", "mask")

    def __init__(self, n: int, mask: int):
        full = (1 << n) - 1
        mask &= full
        if not mask & 1:
            mask = full ^ mask
        size = bin(mask).count("1")
        if size < 2 or size > n - 2:
            raise ConfigurationError(
                f"Block of size {size} does not give a stable partition of {n} points"
            )
        self.n = n
        self.mask = mask

    @classmethod
    def from_block(cls, n: int, block: Iterable[int]) -> "StablePartition":
        mask = 0
        for label in block:
            if not 1 <= label <= n:
                raise ConfigurationError(f"Label {label} outside 1..{n}")
            mask |= 1 << (label - 1)
        return cls(n, mask)

    @property
    def block(self) -> FrozenSet[int]:
        return frozenset(i + 1 for i in range(self.n) if self.mask >> i & 1)

    @property
    def complement(self) -> FrozenSet[int]:
        return frozenset(i + 1 for i in range(self.n) if not self.mask >> i & 1)

    @property
    def min_size(self) -> int:
        size = bin(self.mask).count("1")
        return min(size, self.n - size)

    def same_block(self, i: int, j: int) -> bool:
        return (self.mask >> (i - 1) & 1) == (self.mask >> (j - 1) & 1)

    def sort_key(self) -> Tuple[int, int]:
        return (self.min_size, self.mask)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, StablePartition) and (self.n, self.mask) == (other.n, other.mask)

    def __hash__(self) -> int:
        return hash((self.n, self.mask))

    def __lt__(self, other: "StablePartition") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"StablePartition({self})"

    def __str__(self) -> str:
        left = ",".join(str(i) for i in sorted(self.block))
        right = ",".join(str(i) for i in sorted(self.complement))
        return f"{{{left}}}|{{{right}}}"

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "block": sorted(self.block), "complement": sorted(self.complement)}


# ============================================================================
# HALF-INTEGERS
# ============================================================================


class HalfInt:
    """An exact element of (1/2)Z, stored as twice its value."""

    __slots__ = ("doubled",)

    def __init__(self, doubled: int):
        self.doubled = int(doubled)

    @classmethod
    def of(cls, value: Union[int, Fraction, "HalfInt"]) -> "HalfInt":
        if isinstance(value, HalfInt):
            return value
        twice = Fraction(value) * 2
        if twice.denominator != 1:
            raise ValueError(f"{value} is not a half-integer")
        return cls(int(twice))

    @property
    def is_integral(self) -> bool:
        return self.doubled % 2 == 0

    def to_int(self) -> int:
        if not self.is_integral:
            raise ValueError(f"{self} is not an integer")
        return self.doubled // 2

    def to_fraction(self) -> Fraction:
        return Fraction(self.doubled, 2)

    def _coerce(self, other: Union[int, "HalfInt"]) -> int:
        return HalfInt.of(other).doubled

    def __add__(self, other):
        return HalfInt(self.doubled + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt(self.doubled - self._coerce(other))

    def __rsub__(self, other):
        return HalfInt(self._coerce(other) - self.doubled)

    def __neg__(self):
        return HalfInt(-self.doubled)

    def __mul__(self, k: int):
        return HalfInt(self.doubled * int(k))

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        try:
            return self.doubled == self._coerce(other)
        except (TypeError, ValueError):
            return False

    def __hash__(self) -> int:
        return hash(Fraction(self.doubled, 2))

    def __lt__(self, other) -> bool:
        return self.doubled < self._coerce(other)

    def __le__(self, other) -> bool:
        return self.doubled <= self._coerce(other)

    def __gt__(self, other) -> bool:
        return self.doubled > self._coerce(other)

    def __ge__(self, other) -> bool:
        return self.doubled >= self._coerce(other)

    def __float__(self) -> float:
        return self.doubled / 2

    def __repr__(self) -> str:
        return f"HalfInt({self})"

    def __str__(self) -> str:
        if self.is_integral:
            return str(self.doubled // 2)
        return f"{self.doubled}/2"
