"""Unions of Golay-neighborhood cosets and L-cosets in the odd halved 24-cube.

Every set used here has a characteristic function that is a perfect
coloring with eigenvalue 20, so a disjoint union of ``i`` neighborhoods
Omega(F_t) and ``j`` cosets L_m has parameters
((20+c, 256-c)(c, 276-c)) with c = 3i + 8j.  Disjointness is checked on
membership bitsets, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import bitset, codes
from .colorings import H2_ODD, Coloring, ParameterMatrix, characteristic
from .words import h1_masks

N = 24
NUM_F = 64
NUM_L = 8
EIGENVALUE = 20
HALVED_DEGREE = N * (N - 1) // 2
OPEN_VALUES_NOTE = "no construction known and not excluded"
UNIQUENESS_NOTE = "a perfect coloring with parameters ((23,253)(3,273)) is unique up to graph automorphisms"


class DisjointnessError(ValueError):
    def __init__(self, first: str, second: str, word: int):
        super().__init__(f"{first} and {second} intersect in {word:0{N}b}")
        self.pair = (first, second)
        self.word = word


def parameters_for(c: int) -> ParameterMatrix:
    """((20+c, 256-c)(c, 276-c))."""
    return ParameterMatrix.of([[EIGENVALUE + c, HALVED_DEGREE - EIGENVALUE - c], [c, HALVED_DEGREE - c]])


@dataclass(frozen=True)
class ConstructionSpec:
    i_set: frozenset[int] = frozenset()
    j_set: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "i_set", frozenset(int(i) for i in self.i_set))
        object.__setattr__(self, "j_set", frozenset(int(j) for j in self.j_set))
        if not self.i_set and not self.j_set:
            raise ValueError("a construction needs at least one set")
        if not self.i_set <= set(range(1, NUM_F + 1)):
            raise ValueError(f"Golay coset indices must lie in 1..{NUM_F}")
        if not self.j_set <= set(range(1, NUM_L + 1)):
            raise ValueError(f"L coset indices must lie in 1..{NUM_L}")
        if len(self.i_set) + len(self.j_set) >= NUM_F + NUM_L:
            raise ValueError("the union would cover the whole component")

    @classmethod
    def parse(cls, i_text: str = "", j_text: str = "") -> ConstructionSpec:
        def ints(t):
            return [int(x) for x in t.replace(" ", "").split(",") if x]
        return cls(frozenset(ints(i_text)), frozenset(ints(j_text)))

    @property
    def i(self) -> int:
        return len(self.i_set)

    @property
    def j(self) -> int:
        return len(self.j_set)

    @property
    def c(self) -> int:
        return 3 * self.i + 8 * self.j

    def expected(self) -> ParameterMatrix:
        return parameters_for(self.c)

    def __str__(self) -> str:
        return f"i={sorted(self.i_set)} j={sorted(self.j_set)}"


@lru_cache(maxsize=1)
def golay_cosets() -> tuple[codes.BinaryCode, ...]:
    return tuple(codes.build_golay_neighborhood_cosets())


@lru_cache(maxsize=1)
def l_cosets() -> tuple[codes.BinaryCode, ...]:
    return tuple(codes.build_l_cosets())


@lru_cache(maxsize=1)
def odd_l_cosets() -> tuple[codes.BinaryCode, ...]:
    """All 32 cosets of L among the odd-weight words (L_1..L_8 are among them)."""
    odd_space = codes.even_weight_code(N).translate(1)
    return tuple(codes.coset_partition(codes.build_l(), odd_space, prefix="L'_"))


@lru_cache(maxsize=NUM_F)
def golay_neighborhood_words(t: int) -> np.ndarray:
    """Omega(F_t), 1-based index."""
    return codes.neighborhood(golay_cosets()[t - 1]).words


def member_sets(spec: ConstructionSpec):
    """(name, words) for every selected set, Golay neighborhoods first."""
    for t in sorted(spec.i_set):
        yield f"Omega(F_{t})", golay_neighborhood_words(t)
    for m in sorted(spec.j_set):
        yield f"L_{m}", l_cosets()[m - 1].words


def disjoint_union(named_sets, n: int = N) -> np.ndarray:
    """Bitset of the union; raises DisjointnessError naming the first overlapping pair."""
    union = bitset.empty(n)
    seen = []
    for name, words in named_sets:
        b = bitset.from_words(words, n)
        overlap = bitset.first(b & union)
        if overlap is not None:
            for other, other_words in seen:
                if np.any(other_words == overlap):
                    raise DisjointnessError(other, name, overlap)
            raise AssertionError("overlap without an owner")
        union |= b
        seen.append((name, words))
    return union


def build_union(spec: ConstructionSpec) -> Coloring:
    """Characteristic function, on the odd halved 24-cube, of the union the spec selects."""
    union = disjoint_union(member_sets(spec))
    return characteristic(bitset.to_words(union, N), N, H2_ODD, name=f"union[{spec}]")


def build_l_union(indices) -> Coloring:
    """Union of cosets of L taken from all 32 odd-weight cosets (1-based indices)."""
    cosets = odd_l_cosets()
    union = disjoint_union((c.name, c.words) for c in (cosets[m - 1] for m in sorted(set(indices))))
    return characteristic(bitset.to_words(union, N), N, H2_ODD, name=f"L-union{sorted(set(indices))}")


def complement(col: Coloring) -> Coloring:
    if col.k != 2:
        raise ValueError("complement is defined for 2-colorings")
    return Coloring(col.n, col.graph, 2, 1 - col.colors, name=f"not {col.name}")


def all_single_specs() -> list[ConstructionSpec]:
    return ([ConstructionSpec(i_set=frozenset({t})) for t in range(1, NUM_F + 1)]
            + [ConstructionSpec(j_set=frozenset({m})) for m in range(1, NUM_L + 1)])


def random_mixed_specs(count: int, seed: int = 20240601) -> list[ConstructionSpec]:
    """Specs with at least one set of each kind, drawn reproducibly."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        i = int(rng.integers(1, NUM_F + 1))
        j = int(rng.integers(1, NUM_L + 1))
        if i + j >= NUM_F + NUM_L:
            continue
        i_set = rng.choice(np.arange(1, NUM_F + 1), size=i, replace=False)
        j_set = rng.choice(np.arange(1, NUM_L + 1), size=j, replace=False)
        out.append(ConstructionSpec(frozenset(i_set.tolist()), frozenset(j_set.tolist())))
    return out


# Spheres and the nonexistence filter ----------------------------------------

@dataclass
class SphereDecomposition:
    centers: np.ndarray
    leftover: np.ndarray
    pairwise_disjoint: bool

    def to_json(self) -> dict:
        return {
            "centers": [format(int(w), f"0{N}b") for w in self.centers],
            "disjoint": self.pairwise_disjoint,
            "leftover_count": int(self.leftover.size),
        }


@lru_cache(maxsize=4)
def parity_bitset(n: int, parity: int) -> np.ndarray:
    w = np.arange(1 << n, dtype=np.uint32)
    return bitset.pack((np.bitwise_count(w) & 1) == parity, n)


def decompose_spheres(support, parity: int, n: int = N) -> SphereDecomposition:
    """Find all spheres (the n neighbors of an opposite-parity word) inside the support."""
    words = np.asarray(support, dtype=np.uint32)
    if words.size and np.any((np.bitwise_count(words) & 1) != parity):
        raise ValueError("support is not inside one component")
    masks = h1_masks(n)
    s = bitset.from_words(words, n)
    centers = bitset.common_neighborhood(s, masks) & parity_bitset(n, 1 - parity)
    covered = bitset.neighborhood(centers, masks)
    disjoint = bitset.count(covered) == n * bitset.count(centers)
    return SphereDecomposition(bitset.to_words(centers, n), bitset.to_words(s & ~covered, n), disjoint)


def nonexistence_filter(c: int) -> str:
    """'nonexistent' when a union-of-spheres argument rules c out, else 'inconclusive'.

    For c <= 7 the color-1 set must be a union of spheres, and a union of
    spheres needs c divisible by 3 or c >= 25.
    """
    if c < 1:
        raise ValueError("c must be positive")
    if c <= 7 and c % 3:
        return "nonexistent"
    return "inconclusive"


def uniqueness_note(c: int) -> str | None:
    return UNIQUENESS_NOTE if c == 3 else None


# Spectrum -----------------------------------------------------------------

@dataclass
class SpectrumEntry:
    c: int
    status: str
    witnesses: list[tuple[int, int]] = field(default_factory=list)
    circle: bool = False
    box: bool = False
    note: str | None = None

    @property
    def parameters(self) -> ParameterMatrix:
        return parameters_for(self.c)

    def symbol(self) -> str:
        s = {"exists": "+", "nonexistent": "-", "open": "?"}[self.status]
        if self.circle:
            s = f"({s})"
        if self.box:
            s = f"[{s}]"
        return s

    def to_json(self) -> dict:
        return {
            "box": self.box,
            "c": self.c,
            "circle": self.circle,
            "note": self.note,
            "parameters": [list(r) for r in self.parameters.entries],
            "status": self.status,
            "witnesses": [list(w) for w in self.witnesses],
        }


def witnesses_for(c: int) -> list[tuple[int, int]]:
    """All (i, j) with 3i + 8j = c, i <= 64, j <= 8, 0 < i + j < 72."""
    return [(i, j) for j in range(NUM_L + 1) for i in range(NUM_F + 1)
            if 3 * i + 8 * j == c and 0 < i + j < NUM_F + NUM_L]


def circle_mark(c: int) -> bool:
    """Realized by Golay-neighborhood cosets alone, or by the complement of such a union."""
    total = HALVED_DEGREE - EIGENVALUE  # complementing maps c to 256 - c
    return any(v > 0 and v % 3 == 0 and v // 3 <= NUM_F for v in (c, total - c))


def box_mark(c: int) -> bool:
    """Realized by a union of cosets of L in one component (32 are available)."""
    return c > 0 and c % 8 == 0 and c // 8 < 32


def spectrum_table(c_max: int = 128) -> list[SpectrumEntry]:
    out = []
    for c in range(1, c_max + 1):
        wit = witnesses_for(c)
        if nonexistence_filter(c) == "nonexistent":
            status = "nonexistent"
        elif wit:
            status = "exists"
        else:
            status = "open"
        entry = SpectrumEntry(c, status, wit, status == "exists" and circle_mark(c),
                              status == "exists" and box_mark(c))
        entry.note = uniqueness_note(c) or (OPEN_VALUES_NOTE if status == "open" else None)
        out.append(entry)
    return out


def format_spectrum(entries, per_row: int = 16) -> str:
    lines = []
    for k in range(0, len(entries), per_row):
        row = entries[k:k + per_row]
        lines.append(" ".join(f"{e.c:>6}" for e in row))
        lines.append(" ".join(f"{e.symbol():>6}" for e in row))
    counts = {s: sum(e.status == s for e in entries) for s in ("exists", "nonexistent", "open")}
    lines.append("")
    lines.append("legend: + exists, - none, ? open; (x) Golay-neighborhood cosets, [x] cosets of L")
    lines.append("totals: " + ", ".join(f"{k}={v}" for k, v in counts.items()))
    for e in entries:
        if e.note and e.status != "open":
            lines.append(f"c={e.c}: {e.note}")
    return "\n".join(lines)
