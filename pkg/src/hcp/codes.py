"""Binary codes over GF(2): linear spans, cosets, explicit word sets.

Words are plain ints (uint32 in arrays) in the convention of
:mod:`hcp.words`.  Bases are kept in reduced row-echelon form with the
pivot of every row at its leading (leftmost textual) bit, which makes the
reduction of a word against a basis return the numerically smallest
element of its coset.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from . import bitset
from .words import Word, h1_masks, popcount, position_bit

ALL_ONES_8 = 0xFF


class CodeConstructionError(RuntimeError):
    """A constructed code does not have the parameters it must have."""


def rref(vectors) -> tuple[int, ...]:
    """Reduced row-echelon basis of the span, rows sorted by decreasing pivot."""
    rows: list[int] = []
    for v in vectors:
        v = int(v)
        for r in rows:
            v = min(v, v ^ r)
        if v:
            rows = [min(r, r ^ v) for r in rows]
            rows.append(v)
    return tuple(sorted(rows, reverse=True))


def reduce(v: int, basis) -> int:
    for r in basis:
        v = min(v, v ^ r)
    return v


def in_span(v: int, basis) -> bool:
    return reduce(v, basis) == 0


def span_words(basis, offset: int = 0) -> np.ndarray:
    """Every element of offset + span(basis), unsorted."""
    out = np.array([offset], dtype=np.uint32)
    for b in basis:
        out = np.concatenate([out, out ^ np.uint32(b)])
    return out


@dataclass(frozen=True)
class BinaryCode:
    """A set of length-n words: a linear code, a coset of one, or an explicit set.

    ``basis`` is present iff the set is (a translate of) a linear code;
    ``offset`` is present iff it is a proper translate.  Explicit sets carry
    their sorted words in ``explicit`` instead.
    """

    length: int
    basis: tuple[int, ...] | None = None
    offset: int | None = None
    explicit: np.ndarray | None = None
    name: str = ""

    def __post_init__(self):
        if (self.basis is None) == (self.explicit is None):
            raise ValueError("exactly one of basis/explicit must be given")
        if self.basis is not None:
            basis = rref(self.basis)
            object.__setattr__(self, "basis", basis)
            if self.offset is not None:
                off = reduce(self.offset, basis)
                object.__setattr__(self, "offset", off or None)
        else:
            if self.offset is not None:
                raise ValueError("explicit sets do not take an offset")
            w = np.unique(np.asarray(self.explicit, dtype=np.uint32))
            object.__setattr__(self, "explicit", w)
        limit = 1 << self.length
        for v in (self.basis or ()) + ((self.offset,) if self.offset else ()):
            if v >= limit:
                raise ValueError(f"word {v:#x} does not fit in length {self.length}")

    @classmethod
    def linear(cls, length: int, generators, name: str = "") -> BinaryCode:
        return cls(length, basis=tuple(int(g) for g in generators), name=name)

    @classmethod
    def from_words(cls, length: int, words, name: str = "") -> BinaryCode:
        return cls(length, explicit=np.asarray(words, dtype=np.uint32), name=name)

    @property
    def is_linear(self) -> bool:
        return self.basis is not None and self.offset is None

    @property
    def is_affine(self) -> bool:
        return self.basis is not None

    @property
    def rank(self) -> int:
        if self.basis is None:
            raise ValueError("explicit sets have no rank")
        return len(self.basis)

    def __len__(self) -> int:
        if self.basis is not None:
            return 1 << len(self.basis)
        return int(self.explicit.size)

    @cached_property
    def words(self) -> np.ndarray:
        """Sorted uint32 array of all words (read-only)."""
        if self.basis is None:
            out = self.explicit
        else:
            out = np.sort(span_words(self.basis, self.offset or 0))
        out.flags.writeable = False
        return out

    def __contains__(self, v) -> bool:
        v = v.bits if isinstance(v, Word) else int(v)
        if self.basis is not None:
            return in_span(v ^ (self.offset or 0), self.basis)
        i = np.searchsorted(self.explicit, v)
        return bool(i < self.explicit.size and self.explicit[i] == v)

    def translate(self, v: int, name: str = "") -> BinaryCode:
        if self.basis is None:
            return BinaryCode.from_words(self.length, self.words ^ np.uint32(v), name)
        return BinaryCode(self.length, basis=self.basis, offset=(self.offset or 0) ^ v, name=name)

    def bitset(self) -> np.ndarray:
        return bitset.from_words(self.words, self.length)

    def __repr__(self) -> str:
        label = self.name or "BinaryCode"
        return f"<{label} n={self.length} size={len(self)}>"


def rotate_first7(x: int) -> int:
    """Cyclic shift of positions 1..7 of a length-8 word; position 8 fixed."""
    head = (x >> 1) & 0x7F
    head = (head >> 1) | ((head & 1) << 6)
    return (head << 1) | (x & 1)


def cyclic_closure_code(seed: Word | str | int, name: str = "") -> BinaryCode:
    """The (8,16,4) code containing ``seed`` closed under XOR and rotation of positions 1..7.

    The XOR/rotation closure of the seeds used here has 8 words; the
    all-ones word is rotation invariant and completes it to 16 words.
    """
    if isinstance(seed, str):
        seed = Word.parse(seed)
    if isinstance(seed, Word):
        if seed.length != 8:
            raise ValueError("seed must have length 8")
        seed = seed.bits
    gens = [seed]
    for _ in range(6):
        gens.append(rotate_first7(gens[-1]))
    return BinaryCode.linear(8, gens + [ALL_ONES_8], name=name)


def even_weight_code(n: int, name: str = "") -> BinaryCode:
    return BinaryCode.linear(n, [position_bit(1, n) | position_bit(p, n) for p in range(2, n + 1)], name=name)


def concat(parts) -> int:
    """Concatenate (word, length) pairs, first part leftmost."""
    out = 0
    for w, n in parts:
        out = (out << n) | w
    return out


def turyn_compose(cx: BinaryCode, cyz: BinaryCode, name: str = "") -> BinaryCode:
    """{(x+y, x+z, x+y+z) : x in cx, y, z in cyz} as a length-24 linear code."""
    if cx.length != 8 or cyz.length != 8:
        raise ValueError("turyn_compose takes two length-8 codes")
    if not (cx.is_linear and cyz.is_linear):
        raise ValueError("turyn_compose needs linear codes")
    gens = [concat([(x, 8), (x, 8), (x, 8)]) for x in cx.basis]
    gens += [concat([(y, 8), (0, 8), (y, 8)]) for y in cyz.basis]
    gens += [concat([(0, 8), (z, 8), (z, 8)]) for z in cyz.basis]
    return BinaryCode.linear(24, gens, name=name)


def direct_sum(*codes: BinaryCode, name: str = "") -> BinaryCode:
    """Concatenation code: all (c1, c2, ...) with ci in codes[i]."""
    total = sum(c.length for c in codes)
    gens = []
    shift = total
    for c in codes:
        if not c.is_linear:
            raise ValueError("direct_sum needs linear codes")
        shift -= c.length
        gens += [g << shift for g in c.basis]
    return BinaryCode.linear(total, gens, name=name)


def min_distance(c: BinaryCode) -> int:
    if len(c) < 2:
        raise ValueError("minimum distance needs at least two words")
    if c.is_affine:
        w = span_words(c.basis)
        return int(popcount(w[w != 0]).min())
    w = c.words.astype(np.int64)
    if w.size > 4096:
        raise ValueError("pairwise minimum distance of explicit sets is limited to 4096 words")
    d = np.bitwise_count(w[:, None] ^ w[None, :])
    d[np.diag_indices_from(d)] = c.length + 1
    return int(d.min())


def neighborhood(c: BinaryCode, name: str = "") -> BinaryCode:
    """All words at distance exactly 1 from the set."""
    if len(c) == 0:
        return BinaryCode.from_words(c.length, [], name)
    w = c.words
    near = (w[:, None] ^ np.array(h1_masks(c.length), dtype=np.uint32)[None, :]).ravel()
    near = np.setdiff1d(near, w)
    return BinaryCode.from_words(c.length, near, name)


def is_subcode(sub: BinaryCode, sup: BinaryCode) -> bool:
    return sub.length == sup.length and all(v in sup for v in sub.basis)


def coset_partition(sub: BinaryCode, sup: BinaryCode, prefix: str = "") -> list[BinaryCode]:
    """Cosets of the linear code ``sub`` that make up ``sup``.

    ``sup`` may be a translate of a linear code containing ``sub``.  Cosets are
    ordered by their smallest word.
    """
    if not sub.is_linear or not sup.is_affine:
        raise ValueError("coset_partition needs a linear sub and an affine super")
    if sub.length != sup.length:
        raise ValueError("length mismatch")
    for v in sub.basis:
        if not in_span(v, sup.basis):
            raise ValueError(f"{sub!r} is not contained in {sup!r}")
    quotient = rref(reduce(v, sub.basis) for v in sup.basis)
    reps = sorted({reduce(int(q), sub.basis) for q in span_words(quotient, sup.offset or 0)})
    return [BinaryCode(sub.length, basis=sub.basis, offset=r, name=f"{prefix}{i + 1}")
            for i, r in enumerate(reps)]


def set_distance(a: BinaryCode, b: BinaryCode) -> int:
    """Minimum distance between a word of ``a`` and a word of ``b``."""
    if a.length != b.length:
        raise ValueError("length mismatch")
    if len(a) == 0 or len(b) == 0:
        raise ValueError("distance to an empty set is undefined")
    if a.is_affine and b.is_affine:
        basis = rref(a.basis + b.basis)
        offset = reduce((a.offset or 0) ^ (b.offset or 0), basis)
        if offset == 0:
            return 0
        return int(popcount(span_words(basis, offset)).min())
    # explicit sets: grow a ball around the smaller set until it meets the other
    if len(a) > len(b):
        a, b = b, a
    n = a.length
    target = b.bitset()
    ball = a.bitset()
    for d in range(n + 1):
        if np.any(ball & target):
            return d
        ball = ball | bitset.neighborhood(ball, h1_masks(n))
    raise AssertionError("unreachable: the ball covers the cube")


# Named codes -------------------------------------------------------------

SEED_C8 = "00101110"
SEED_C8P = "01001110"
BLOCK_MARK = 0b00000001


def _require(ok: bool, msg: str) -> None:
    if not ok:
        raise CodeConstructionError(msg)


def build_c8() -> BinaryCode:
    return cyclic_closure_code(SEED_C8, name="C8")


def build_c8p() -> BinaryCode:
    return cyclic_closure_code(SEED_C8P, name="C8'")


def build_b8() -> BinaryCode:
    b8 = even_weight_code(8, name="B8")
    _require(is_subcode(build_c8p(), b8), "B8 must contain C8'")
    return b8


def build_f() -> BinaryCode:
    return turyn_compose(build_c8(), build_c8p(), name="F")


def build_d() -> BinaryCode:
    return turyn_compose(build_c8(), build_b8(), name="D")


def _build_c16_from(c1: BinaryCode) -> BinaryCode:
    b8 = build_b8()
    gens = [concat([(y, 8), (y, 8)]) for y in b8.basis] + [concat([(0, 8), (z, 8)]) for z in c1.basis]
    return BinaryCode.linear(16, gens, name="C16")


def build_c16() -> BinaryCode:
    """{(y, y+z) : y in B8, z in C8'}, checked to be a (16, 2^11, 4) code.

    C8 is tried as the inner code if C8' does not give those parameters.
    """
    for c1 in (build_c8p(), build_c8()):
        c16 = _build_c16_from(c1)
        if c16.rank == 11 and min_distance(c16) == 4:
            return c16
    raise CodeConstructionError("no reading of the inner code gives a (16, 2^11, 4) code")


def build_l() -> BinaryCode:
    """{(x, w) : x in B8, w in C16}, a linear code of size 2^18.

    Its minimum distance is 2, attained by (x, 0) with x of weight 2: each
    codeword has 28 codeword neighbors in the halved cube.
    """
    l_code = direct_sum(build_b8(), build_c16(), name="L")
    _require(l_code.rank == 18, f"|L| = 2^{l_code.rank}, expected 2^18")
    _require(min_distance(l_code) == 2, "L must have minimum distance 2")
    return l_code


def n_offset() -> int:
    return concat([(BLOCK_MARK, 8)] * 3)


def build_n() -> BinaryCode:
    """B8 x B8 x B8 translated by 00000001 in every block (odd-weight words)."""
    b8 = build_b8()
    return direct_sum(b8, b8, b8).translate(n_offset(), name="N")


def build_golay_neighborhood_cosets() -> list[BinaryCode]:
    """F_1..F_64: the cosets of F in D, F_1 = F."""
    return coset_partition(build_f(), build_d(), prefix="F_")


def build_l_cosets() -> list[BinaryCode]:
    """L_1..L_8: the cosets of L inside N."""
    return coset_partition(build_l(), build_n(), prefix="L_")


BUILDERS = {
    "c8": build_c8,
    "c8p": build_c8p,
    "b8": build_b8,
    "f": build_f,
    "d": build_d,
    "c16": build_c16,
    "l": build_l,
    "n": build_n,
}


# Text format --------------------------------------------------------------

def dumps(c: BinaryCode) -> str:
    if not c.is_affine:
        raise ValueError("only linear codes and their cosets have a text form")
    off = "-" if c.offset is None else format(c.offset, f"0{c.length}b")
    lines = [f"code n={c.length} k={c.rank} offset={off}"]
    lines += [format(b, f"0{c.length}b") for b in c.basis]
    return "\n".join(lines) + "\n"


def loads(text: str, name: str = "") -> BinaryCode:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty code file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "code":
        raise ValueError(f"bad header: {lines[0]!r}")
    fields = dict(kv.split("=", 1) for kv in head[1:])
    n, k, off = int(fields["n"]), int(fields["k"]), fields["offset"]
    basis = [Word.parse(ln) for ln in lines[1:]]
    if len(basis) != k or any(b.length != n for b in basis):
        raise ValueError(f"expected {k} basis words of length {n}")
    offset = None if off == "-" else Word.parse(off).bits
    code = BinaryCode(n, basis=tuple(b.bits for b in basis), offset=offset, name=name)
    if code.rank != k:
        raise ValueError(f"basis words are dependent: rank {code.rank} != {k}")
    return code


def save(c: BinaryCode, path) -> None:
    Path(path).write_text(dumps(c))


def load(path) -> BinaryCode:
    return loads(Path(path).read_text(), name=Path(path).stem)
