"""Binary words of length n <= 32 and their neighbors in H(n) and HH(n).

Textual position 1 is the leftmost character and corresponds to the bit
value 2**(n-1); position n is the least significant bit.  Halved-cube
components are indexed compactly by dropping position n, whose value is
forced by the weight parity of the component.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

MAX_LENGTH = 32


@dataclass(frozen=True, order=True)
class Word:
    bits: int
    length: int

    def __post_init__(self):
        if not 1 <= self.length <= MAX_LENGTH:
            raise ValueError(f"word length must be in [1, {MAX_LENGTH}], got {self.length}")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits {self.bits:#x} do not fit in length {self.length}")

    @classmethod
    def parse(cls, text: str) -> Word:
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a binary word: {text!r}")
        return cls(int(text, 2), len(text))

    @classmethod
    def from_positions(cls, positions, length: int) -> Word:
        """Word with ones exactly at the given 1-based textual positions."""
        bits = 0
        for p in positions:
            if not 1 <= p <= length:
                raise ValueError(f"position {p} outside 1..{length}")
            bits |= position_bit(p, length)
        return cls(bits, length)

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    @property
    def parity(self) -> int:
        return self.bits.bit_count() & 1

    def positions(self) -> list[int]:
        return [p for p in range(1, self.length + 1) if self.bits & position_bit(p, self.length)]

    def __xor__(self, other: Word) -> Word:
        _check_lengths(self, other)
        return Word(self.bits ^ other.bits, self.length)

    def __str__(self) -> str:
        return format(self.bits, f"0{self.length}b")


@dataclass(frozen=True)
class CompactIndex:
    """Index of a word inside one halved-cube component."""

    value: int
    parity: int


def position_bit(position: int, n: int) -> int:
    return 1 << (n - position)


def _check_lengths(u: Word, v: Word) -> None:
    if u.length != v.length:
        raise ValueError(f"length mismatch: {u.length} != {v.length}")


def distance(u: Word, v: Word) -> int:
    _check_lengths(u, v)
    return (u.bits ^ v.bits).bit_count()


def neighbors_h1(v: Word) -> list[Word]:
    """The n words at Hamming distance 1, flipping positions 1..n in order."""
    return [Word(v.bits ^ m, v.length) for m in h1_masks(v.length)]


def neighbors_h2(v: Word) -> list[Word]:
    """The n(n-1)/2 words at Hamming distance 2."""
    if v.length < 2:
        raise ValueError("HH(n) needs n >= 2")
    return [Word(v.bits ^ m, v.length) for m in h2_masks(v.length)]


@lru_cache(maxsize=None)
def h1_masks(n: int) -> tuple[int, ...]:
    return tuple(position_bit(p, n) for p in range(1, n + 1))


@lru_cache(maxsize=None)
def h2_masks(n: int) -> tuple[int, ...]:
    return tuple(a | b for a, b in combinations(h1_masks(n), 2))


def encode_compact(v: Word) -> CompactIndex:
    return CompactIndex(v.bits >> 1, v.parity)


def decode_compact(ci: CompactIndex, n: int) -> Word:
    if n < 1 or not 0 <= ci.value < 1 << (n - 1):
        raise ValueError(f"compact value {ci.value} out of range for n={n}")
    if ci.parity not in (0, 1):
        raise ValueError("parity must be 0 or 1")
    last = (ci.value.bit_count() + ci.parity) & 1
    return Word((ci.value << 1) | last, n)


# Vectorized forms.  Word arrays are uint32 (n <= 32) unless stated otherwise.

def popcount(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a)


@lru_cache(maxsize=8)
def component_words(n: int, parity: int) -> np.ndarray:
    """All words of the given weight parity, in compact-index order (read-only)."""
    values = np.arange(1 << (n - 1), dtype=np.uint32)
    last = ((popcount(values) + parity) & 1).astype(np.uint32)
    out = (values << np.uint32(1)) | last
    out.flags.writeable = False
    return out


def words_to_compact(words: np.ndarray) -> np.ndarray:
    return np.asarray(words, dtype=np.uint32) >> np.uint32(1)


def parse_word(text: str, n: int | None = None) -> Word:
    w = Word.parse(text)
    if n is not None and w.length != n:
        raise ValueError(f"expected a word of length {n}, got {text!r}")
    return w
