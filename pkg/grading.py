"""
The degree group Z₂ⁿ
=====================

Degrees are n-bit vectors added componentwise mod 2. The pairing
⟨a, b⟩ = Σ aᵢbᵢ mod 2 decides the sign rule ε(a, b) = (−1)^⟨a,b⟩ and the
parity (even iff ⟨a, a⟩ = 0).

The engine fixes one total order on Z₂ⁿ: every even degree precedes every
odd degree, and each block is sorted lexicographically. For n = 3:

  (0,0,0) < (0,1,1) < (1,0,1) < (1,1,0) < (0,0,1) < (0,1,0) < (1,0,0) < (1,1,1)

Block indices everywhere else (BlockDims, matrix blocks, generator names
xi{t}_{c}) refer to positions γ₀…γ_q in this chain, never to raw bits.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache

from errors import ConfigurationError

logger = logging.getLogger(__name__)


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"


@dataclass(frozen=True)
class DegreeVector:
    """An element of Z₂ⁿ stored as a tuple of 0/1 bits."""

    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if not bits:
            raise ConfigurationError("degree vectors need n >= 1 bits")
        if any(b not in (0, 1) for b in bits):
            raise ConfigurationError(f"degree bits must be 0/1, got {self.bits!r}")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def zero(cls, n: int) -> DegreeVector:
        return cls((0,) * n)

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def is_zero(self) -> bool:
        return not any(self.bits)

    @cached_property
    def mask(self) -> int:
        """Bit pattern as an int (first bit most significant)."""
        out = 0
        for b in self.bits:
            out = (out << 1) | b
        return out

    @classmethod
    def from_mask(cls, mask: int, n: int) -> DegreeVector:
        return cls(tuple((mask >> (n - 1 - i)) & 1 for i in range(n)))

    def __add__(self, other: DegreeVector) -> DegreeVector:
        _check_lengths(self, other)
        return DegreeVector(tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    # γ + γ = 0, so subtraction is addition
    __sub__ = __add__

    def to_json(self) -> list[int]:
        return list(self.bits)

    def __str__(self) -> str:
        return "(" + ",".join(str(b) for b in self.bits) + ")"


def _check_lengths(a: DegreeVector, b: DegreeVector) -> None:
    if a.n != b.n:
        raise ConfigurationError(
            f"degree length mismatch: {a} has n={a.n}, {b} has n={b.n}")


def pairing(a: DegreeVector, b: DegreeVector) -> int:
    """⟨a, b⟩ = Σ aᵢbᵢ mod 2."""
    _check_lengths(a, b)
    return bin(a.mask & b.mask).count("1") & 1


def parity(a: DegreeVector) -> Parity:
    return Parity.ODD if pairing(a, a) else Parity.EVEN


def sign(a: DegreeVector, b: DegreeVector) -> int:
    """Koszul sign ε(a, b) = (−1)^⟨a,b⟩."""
    return -1 if pairing(a, b) else 1


def mask_pairing(a: int, b: int) -> int:
    """Pairing on raw bit masks; the multiplication kernel's hot path."""
    return bin(a & b).count("1") & 1


def enumerate_degrees(n: int) -> list[DegreeVector]:
    """All 2ⁿ degrees in chain order γ₀ < γ₁ < … < γ_q."""
    if n < 1:
        raise ConfigurationError(f"n must be a positive integer, got {n}")
    all_degrees = [DegreeVector(bits) for bits in itertools.product((0, 1), repeat=n)]
    # itertools.product already yields lexicographic order
    even = [d for d in all_degrees if parity(d) is Parity.EVEN]
    odd = [d for d in all_degrees if parity(d) is Parity.ODD]
    return even + odd


class DegreeChain:
    """
    The ordered degree table of one engine instance.

    n is fixed at construction; q = 2ⁿ − 1. Use `DegreeChain.for_n(n)` to get
    the shared instance, or `for_length(len(dims))` when only a BlockDims
    length (2ⁿ) is known.
    """

    def __init__(self, n: int):
        self.n = n
        self.degrees: tuple[DegreeVector, ...] = tuple(enumerate_degrees(n))
        self.q = len(self.degrees) - 1
        self._index = {d: i for i, d in enumerate(self.degrees)}
        size = len(self.degrees)
        self._add = [[self._index[self.degrees[i] + self.degrees[j]] for j in range(size)]
                     for i in range(size)]

    @staticmethod
    @lru_cache(maxsize=None)
    def for_n(n: int) -> DegreeChain:
        return DegreeChain(n)

    @staticmethod
    def for_length(length: int) -> DegreeChain:
        n = length.bit_length() - 1
        if length < 2 or (1 << n) != length:
            raise ConfigurationError(
                f"block vectors need 2**n entries (n >= 1), got length {length}")
        return DegreeChain.for_n(n)

    def __len__(self) -> int:
        return len(self.degrees)

    def __getitem__(self, i: int) -> DegreeVector:
        return self.degrees[i]

    def __iter__(self):
        return iter(self.degrees)

    @property
    def zero(self) -> DegreeVector:
        return self.degrees[0]

    def index(self, degree: DegreeVector) -> int:
        if degree.n != self.n:
            raise ConfigurationError(f"degree {degree} does not belong to Z_2^{self.n}")
        return self._index[degree]

    def add_index(self, i: int, j: int) -> int:
        """Index t with γ_t = γ_i + γ_j."""
        return self._add[i][j]

    def is_odd(self, i: int) -> bool:
        return parity(self.degrees[i]) is Parity.ODD

    def even_count(self) -> int:
        return sum(1 for d in self.degrees if parity(d) is Parity.EVEN)

    def to_json(self) -> list[list[int]]:
        return [d.to_json() for d in self.degrees]
