"""Vertex colorings of H(n) and of the halved n-cubes, and their verification.

H1 colorings are indexed by the word itself.  Colorings of a halved-cube
component (graph ``H2-even`` or ``H2-odd``) are indexed by the compact
index of :mod:`hcp.words`, i.e. by ``word >> 1``.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import bitset
from .codes import BinaryCode
from .words import Word, component_words, h1_masks, h2_masks

H1, H2_EVEN, H2_ODD = "H1", "H2-even", "H2-odd"
GRAPHS = (H1, H2_EVEN, H2_ODD)
MAGIC = b"PCHC"
VERSION = 1
ABSENT = 255


class PreconditionError(ValueError):
    """Raised when an operation needs a perfect coloring and did not get one."""

    def __init__(self, message: str, report: VerificationReport | None = None):
        super().__init__(message)
        self.report = report


def degree(graph: str, n: int) -> int:
    return n if graph == H1 else n * (n - 1) // 2


def component_parity(graph: str) -> int:
    return {H2_EVEN: 0, H2_ODD: 1}[graph]


def graph_for_parity(parity: int) -> str:
    return (H2_EVEN, H2_ODD)[parity]


@dataclass(frozen=True)
class ParameterMatrix:
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, rows) -> ParameterMatrix:
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @property
    def k(self) -> int:
        return len(self.entries)

    def row_sums(self) -> list[int]:
        return [sum(r) for r in self.entries]

    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def submatrix(self, idx) -> ParameterMatrix:
        return ParameterMatrix.of([[self.entries[i][j] for j in idx] for i in idx])

    def __str__(self) -> str:
        return "(" + "".join("(" + ",".join(map(str, r)) + ")" for r in self.entries) + ")"


def parse_matrix(text: str) -> ParameterMatrix:
    """Parse ``"a,b;c,d"`` (rows separated by ``;``)."""
    return ParameterMatrix.of([[int(x) for x in row.split(",")] for row in text.split(";")])


def chi_form(p: ParameterMatrix) -> ParameterMatrix:
    """Matrix of a characteristic function with color 1 listed first.

    Characteristic colorings store membership as color 1, so the verified
    matrix is indexed (0, 1); the conventional ((a,b)(c,d)) lists the member
    color first.
    """
    if p.k != 2:
        raise ValueError("chi_form needs a 2x2 matrix")
    (s00, s01), (s10, s11) = p.entries
    return ParameterMatrix.of([[s11, s10], [s01, s00]])


def eigenvalue_of(p: ParameterMatrix) -> int:
    if p.k != 2:
        raise ValueError("eigenvalue_of needs a 2x2 parameter matrix")
    (a, b), (c, d) = p.entries
    if a + b != c + d:
        raise ValueError(f"row sums differ: {a + b} != {c + d}")
    assert a - c == d - b
    return a - c


def transform_matrix(s: ParameterMatrix, n: int) -> ParameterMatrix:
    """Distance-2 parameter matrix (S^2 - nE)/2 induced by an H(n) matrix S."""
    a = s.array()
    if a.shape[0] != a.shape[1]:
        raise ValueError("parameter matrix must be square")
    t = a @ a - n * np.eye(a.shape[0], dtype=np.int64)
    if np.any(t % 2):
        raise ValueError(f"S^2 - {n}E has odd entries; S cannot induce a distance-2 matrix")
    t //= 2
    if np.any(t < 0):
        raise ValueError(f"(S^2 - {n}E)/2 has negative entries")
    return ParameterMatrix.of(t)


@dataclass
class Coloring:
    n: int
    graph: str
    k: int
    colors: np.ndarray
    labels: tuple[int, ...] | None = None  # original colors after a dense remap
    name: str = ""

    def __post_init__(self):
        if self.graph not in GRAPHS:
            raise ValueError(f"unknown graph {self.graph!r}")
        if not 1 <= self.n <= 24 + 8 or (self.graph != H1 and self.n < 2):
            raise ValueError(f"unsupported n={self.n} for {self.graph}")
        self.colors = np.ascontiguousarray(self.colors, dtype=np.uint8)
        if self.colors.shape != (self.domain_size,):
            raise ValueError(f"{self.graph} on n={self.n} needs {self.domain_size} colors, got {self.colors.shape}")
        if not 1 <= self.k < ABSENT:
            raise ValueError(f"bad number of colors {self.k}")
        used = np.bincount(self.colors, minlength=self.k)
        if used.size > self.k:
            raise ValueError(f"color {used.size - 1} out of range for k={self.k}")
        if np.any(used == 0):
            raise ValueError(f"coloring is not surjective: colors {np.flatnonzero(used == 0).tolist()} unused")
        if self.labels is not None and len(self.labels) != self.k:
            raise ValueError("one label per color required")

    @property
    def domain_size(self) -> int:
        return 1 << self.n if self.graph == H1 else 1 << (self.n - 1)

    @property
    def degree(self) -> int:
        return degree(self.graph, self.n)

    def vertex_word(self, index: int) -> Word:
        if self.graph == H1:
            return Word(index, self.n)
        return Word(int(component_words(self.n, component_parity(self.graph))[index]), self.n)

    def vertex_index(self, word: int) -> int:
        if self.graph == H1:
            return word
        if word.bit_count() & 1 != component_parity(self.graph):
            raise ValueError(f"word {word:#x} is not in component {self.graph}")
        return word >> 1

    def words(self) -> np.ndarray:
        if self.graph == H1:
            return np.arange(1 << self.n, dtype=np.uint32)
        return component_words(self.n, component_parity(self.graph))

    def full_colors(self) -> np.ndarray:
        """Colors over all 2^n words, ABSENT outside the coloring's domain."""
        if self.graph == H1:
            return self.colors
        full = np.full(1 << self.n, ABSENT, dtype=np.uint8)
        full[self.words()] = self.colors
        return full

    def support(self, color: int = 1) -> np.ndarray:
        return self.words()[self.colors == color]


def characteristic(words, n: int, graph: str, name: str = "") -> Coloring:
    """Characteristic function of a vertex set: members get color 1."""
    words = np.asarray(words, dtype=np.uint32)
    if graph == H1:
        colors = np.zeros(1 << n, dtype=np.uint8)
        colors[words] = 1
    else:
        parity = component_parity(graph)
        if words.size and np.any((np.bitwise_count(words) & 1) != parity):
            raise ValueError(f"set is not inside component {graph}")
        colors = np.zeros(1 << (n - 1), dtype=np.uint8)
        colors[words >> np.uint32(1)] = 1
    return Coloring(n, graph, 2, colors, name=name)


def constant(n: int, graph: str) -> Coloring:
    size = 1 << n if graph == H1 else 1 << (n - 1)
    return Coloring(n, graph, 1, np.zeros(size, dtype=np.uint8))


@dataclass
class Witness:
    vertex: Word
    color: int
    counts: tuple[int, ...]
    reference_vertex: Word
    reference_counts: tuple[int, ...]

    def __str__(self) -> str:
        return (f"vertex {self.vertex} of color {self.color} has neighbor counts {list(self.counts)}, "
                f"but vertex {self.reference_vertex} of the same color has {list(self.reference_counts)}")


@dataclass
class VerificationReport:
    graph: str
    n: int
    perfect: bool
    matrix: ParameterMatrix | None = None
    witness: Witness | None = None
    labels: tuple[int, ...] | None = None
    meta: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "perfect" if self.perfect else "violated"

    def __str__(self) -> str:
        if self.perfect:
            return f"{self.graph}({self.n}): perfect {self.matrix}"
        return f"{self.graph}({self.n}): violated: {self.witness}"


def masks_for(graph: str, n: int):
    return h1_masks(n) if graph == H1 else h2_masks(n)


def verify_perfect(col: Coloring, threads: int | None = None) -> VerificationReport:
    """Sweep every vertex and compare neighbor-color counts within each color class.

    The reference count vector of a color is that of its lowest-indexed
    vertex.  On failure the witness is the lowest-indexed vertex whose
    vector differs from its color's reference.
    """
    n, k, deg = col.n, col.k, col.degree
    full = col.full_colors()
    indicators = [bitset.pack(full == c, n) for c in range(k)]
    # counts of the last color follow from the degree
    planes = bitset.neighbor_counts(indicators[:-1], masks_for(col.graph, n), deg, threads)

    def counts_at(word: int) -> tuple[int, ...]:
        head = [bitset.counter_value(planes[j], word) for j in range(k - 1)]
        return tuple(head + [deg - sum(head)])

    refs, bad_first = [], None
    for c in range(k):
        ref_word = bitset.first(indicators[c])
        ref = counts_at(ref_word)
        refs.append((ref_word, ref))
        same = np.full_like(indicators[c], np.uint64(0xFFFFFFFFFFFFFFFF))
        for j in range(k - 1):
            same &= bitset.counter_equals(planes[j], ref[j])
        bad = indicators[c] & ~same
        w = bitset.first(bad)
        if w is not None and (bad_first is None or w < bad_first[0]):
            bad_first = (w, c)
    if bad_first is not None:
        w, c = bad_first
        witness = Witness(Word(w, n), c, counts_at(w), Word(refs[c][0], n), refs[c][1])
        return VerificationReport(col.graph, n, False, witness=witness, labels=col.labels)
    matrix = ParameterMatrix.of([r for _, r in refs])
    return VerificationReport(col.graph, n, True, matrix=matrix, labels=col.labels)


def restrict_to_component(col: Coloring, parity: int) -> Coloring:
    """The coloring of H(n) seen on one halved-cube component, colors densely relabeled."""
    if col.graph != H1:
        raise ValueError("restrict_to_component takes an H1 coloring")
    comp = col.colors[component_words(col.n, parity)]
    present = np.flatnonzero(np.bincount(comp, minlength=col.k))
    remap = np.full(col.k, ABSENT, dtype=np.uint8)
    remap[present] = np.arange(present.size, dtype=np.uint8)
    base = col.labels or tuple(range(col.k))
    labels = tuple(base[c] for c in present)
    return Coloring(col.n, graph_for_parity(parity), int(present.size), remap[comp], labels=labels, name=col.name)


def verify_perfect_h2_from_h1(col: Coloring, threads: int | None = None,
                              h1_report: VerificationReport | None = None):
    """Verify an H(n)-perfect coloring on both halved components.

    Returns ``(h1_report, even_report, odd_report)``.  Component reports use
    dense color indices; ``labels`` maps them back to the H(n) colors.
    """
    if h1_report is None:
        h1_report = verify_perfect(col, threads)
    if not h1_report.perfect:
        raise PreconditionError(f"coloring is not perfect on H({col.n}): {h1_report.witness}", h1_report)
    if col.n < 2:
        raise ValueError("halved cubes need n >= 2")
    even = verify_perfect(restrict_to_component(col, 0), threads)
    odd = verify_perfect(restrict_to_component(col, 1), threads)
    return h1_report, even, odd


def distance_coloring(code: BinaryCode) -> Coloring:
    """Color every word of H(n) by its distance to the code (multi-source BFS)."""
    if len(code) == 0:
        raise ValueError("distance coloring of an empty code")
    n = code.length
    masks = h1_masks(n)
    frontier = code.bitset()
    seen = frontier.copy()
    dist = np.zeros(1 << n, dtype=np.uint8)
    level = 0
    while True:
        nxt = bitset.neighborhood(frontier, masks) & ~seen
        if not np.any(nxt):
            break
        level += 1
        dist[bitset.unpack(nxt, n)] = level
        seen |= nxt
        frontier = nxt
    return Coloring(n, H1, level + 1, dist, name=f"dist({code.name or 'C'})")


def covering_radius(code: BinaryCode) -> int:
    return distance_coloring(code).k - 1


def double_count_identity(matrix: ParameterMatrix, members: int, vertices: int) -> bool:
    """b*|C| == c*(V-|C|) for a characteristic coloring in ((a,b)(c,d)) form."""
    (_, b), (c, _) = matrix.entries
    return b * members == c * (vertices - members)


# Binary file format --------------------------------------------------------

_TAGS = {H1: 0, H2_EVEN: 1, H2_ODD: 2}
_HEADER = struct.Struct("<4sBBBB")


def dump_bytes(col: Coloring) -> bytes:
    return _HEADER.pack(MAGIC, VERSION, col.n, _TAGS[col.graph], col.k) + col.colors.tobytes()


def load_bytes(data: bytes, name: str = "") -> Coloring:
    if len(data) < _HEADER.size:
        raise ValueError("coloring file too short")
    magic, version, n, tag, k = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise ValueError(f"bad magic {magic!r}")
    if version != VERSION:
        raise ValueError(f"unsupported coloring file version {version}")
    graphs = {v: g for g, v in _TAGS.items()}
    if tag not in graphs:
        raise ValueError(f"bad graph tag {tag}")
    colors = np.frombuffer(data, dtype=np.uint8, offset=_HEADER.size)
    return Coloring(n, graphs[tag], k, colors.copy(), name=name)


def save(col: Coloring, path) -> None:
    Path(path).write_bytes(dump_bytes(col))


def load(path) -> Coloring:
    return load_bytes(Path(path).read_bytes(), name=Path(path).stem)
