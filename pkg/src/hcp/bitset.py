"""Bit-packed vertex sets over {0,1}^n and bit-sliced neighbor counting.

A vertex set is a uint64 array with vertex ``v`` stored in block ``v >> 6``
at bit ``v & 63``.  Translating a set by a word ``m`` (``v -> v ^ m``) is a
block gather for the high part of ``m`` and at most six delta swaps inside
each block for the low part, so a whole neighbor layer of H(n) or HH(n) is
a handful of vector operations.  Neighbor counts are accumulated in
bit-sliced counters: plane ``b`` holds bit ``b`` of every vertex's count.
"""

from __future__ import annotations

import os
import sys
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache

import numpy as np

if sys.byteorder != "little":  # pragma: no cover
    raise ImportError("hcp.bitset assumes a little-endian host")

_SWAP_MASKS = tuple(
    np.uint64(m)
    for m in (
        0x5555555555555555,
        0x3333333333333333,
        0x0F0F0F0F0F0F0F0F,
        0x00FF00FF00FF00FF,
        0x0000FFFF0000FFFF,
        0x00000000FFFFFFFF,
    )
)
_ALL = np.uint64(0xFFFFFFFFFFFFFFFF)


def n_blocks(n: int) -> int:
    return 1 << max(0, n - 6)


def default_threads() -> int:
    env = os.environ.get("HCP_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def empty(n: int) -> np.ndarray:
    return np.zeros(n_blocks(n), dtype=np.uint64)


def pack(flags: np.ndarray, n: int) -> np.ndarray:
    """Pack a boolean array of length 2**n."""
    flags = np.asarray(flags, dtype=bool)
    if flags.shape != (1 << n,):
        raise ValueError(f"expected {1 << n} flags, got {flags.shape}")
    if n < 6:
        flags = np.concatenate([flags, np.zeros(64 - flags.size, dtype=bool)])
    return np.packbits(flags, bitorder="little").view(np.uint64)


def unpack(bits: np.ndarray, n: int) -> np.ndarray:
    return np.unpackbits(bits.view(np.uint8), bitorder="little")[: 1 << n].view(bool)


def from_words(words, n: int) -> np.ndarray:
    flags = np.zeros(1 << n, dtype=bool)
    flags[np.asarray(words, dtype=np.int64)] = True
    return pack(flags, n)


def to_words(bits: np.ndarray, n: int) -> np.ndarray:
    return np.flatnonzero(unpack(bits, n)).astype(np.uint32)


def count(bits: np.ndarray) -> int:
    return int(np.bitwise_count(bits).sum(dtype=np.int64))


def first(bits: np.ndarray) -> int | None:
    """Smallest member of the set, or None if empty."""
    nz = np.flatnonzero(bits)
    if nz.size == 0:
        return None
    q = int(nz[0])
    x = int(bits[q])
    return (q << 6) | ((x & -x).bit_length() - 1)


def contains(bits: np.ndarray, v: int) -> bool:
    return bool((int(bits[v >> 6]) >> (v & 63)) & 1)


@lru_cache(maxsize=4)
def _block_index(nb: int) -> np.ndarray:
    return np.arange(nb, dtype=np.int64)


def translate(bits: np.ndarray, m: int, lo: int = 0, hi: int | None = None) -> np.ndarray:
    """Blocks ``lo:hi`` of the set translated by ``m``: ``out[v] = bits[v ^ m]``."""
    nb = bits.size
    hi = nb if hi is None else hi
    mh, ml = m >> 6, m & 63
    if mh:
        x = np.take(bits, _block_index(nb)[lo:hi] ^ mh)
    else:
        x = bits[lo:hi].copy()
    b = 0
    while ml:
        if ml & 1:
            s = np.uint64(1 << b)
            mask = _SWAP_MASKS[b]
            x = ((x & mask) << s) | ((x >> s) & mask)
        ml >>= 1
        b += 1
    return x


def neighborhood(bits: np.ndarray, masks) -> np.ndarray:
    """Union of the translates of the set by every mask."""
    out = np.zeros_like(bits)
    for m in masks:
        out |= translate(bits, m)
    return out


def common_neighborhood(bits: np.ndarray, masks) -> np.ndarray:
    """Vertices v with v ^ m in the set for every mask m."""
    out = np.full_like(bits, _ALL)
    for m in masks:
        out &= translate(bits, m)
    return out


def _add_plane(planes: np.ndarray, x: np.ndarray, carry: np.ndarray, tmp: np.ndarray) -> None:
    np.copyto(carry, x)
    for p in planes:
        np.bitwise_and(p, carry, out=tmp)
        np.bitwise_xor(p, carry, out=p)
        carry, tmp = tmp, carry


def _count_range(indicators, masks, nbits, lo, hi) -> np.ndarray:
    planes = np.zeros((len(indicators), nbits, hi - lo), dtype=np.uint64)
    carry = np.empty(hi - lo, dtype=np.uint64)
    tmp = np.empty(hi - lo, dtype=np.uint64)
    for c, ind in enumerate(indicators):
        for m in masks:
            _add_plane(planes[c], translate(ind, m, lo, hi), carry, tmp)
    return planes


def neighbor_counts(indicators, masks, max_count: int, threads: int | None = None) -> np.ndarray:
    """Bit-sliced counts of neighbors in each indicator set.

    Returns an array of shape (len(indicators), nbits, n_blocks) where
    ``nbits = max_count.bit_length()``; bit ``b`` of vertex ``v``'s count for
    set ``c`` is bit ``v & 63`` of ``out[c, b, v >> 6]``.  Work is split into
    disjoint block ranges; the result does not depend on ``threads``.
    """
    indicators = list(indicators)
    nbits = max(1, max_count.bit_length())
    if not indicators:
        return np.zeros((0, nbits, 0), dtype=np.uint64)
    nb = indicators[0].size
    threads = default_threads() if threads is None else max(1, threads)
    chunks = min(threads, nb)
    bounds = [nb * i // chunks for i in range(chunks + 1)]
    masks = list(masks)
    if chunks == 1:
        return _count_range(indicators, masks, nbits, 0, nb)
    with ThreadPoolExecutor(max_workers=chunks) as pool:
        parts = list(pool.map(lambda i: _count_range(indicators, masks, nbits, bounds[i], bounds[i + 1]),
                              range(chunks)))
    return np.concatenate(parts, axis=2)


def counter_value(planes: np.ndarray, v: int) -> int:
    """Count stored for vertex v in one counter (planes of shape (nbits, n_blocks))."""
    q, r = v >> 6, v & 63
    return sum(((int(p[q]) >> r) & 1) << b for b, p in enumerate(planes))


def counter_equals(planes: np.ndarray, value: int) -> np.ndarray:
    """Set of vertices whose count equals ``value``."""
    if value >> planes.shape[0]:
        return np.zeros(planes.shape[1], dtype=np.uint64)
    out = np.full(planes.shape[1], _ALL, dtype=np.uint64)
    for b, p in enumerate(planes):
        if (value >> b) & 1:
            out &= p
        else:
            out &= ~p
    return out
