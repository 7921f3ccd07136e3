"""Bit-word arithmetic on binary Hamming space and exact Krawtchouk evaluation.

Vertices of the Hamming graph on m coordinates are plain Python ints:
coordinate i (1-indexed) lives at bit position i-1, so the text form
"10110..." (coordinate 1 leftmost) maps character t to bit t.  All lengths
are capped at 24 coordinates; every scan over the full vertex set then fits
comfortably in memory.

Krawtchouk values are exact arbitrary-precision integers.  No floating
point is used anywhere in this module: downstream feasibility arguments
rest on exact sign decisions.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterator

import numpy as np

MAX_LENGTH = 24


def check_length(m: int) -> None:
    if not 1 <= m <= MAX_LENGTH:
        raise ValueError(f"length must be in [1, {MAX_LENGTH}], got {m}")


def check_vertex(v: int, m: int) -> None:
    """Reject words with bits outside coordinates 1..m."""
    check_length(m)
    if v < 0 or v >> m:
        raise ValueError(f"vertex {v:#x} does not fit in {m} coordinates")


def weight(v: int) -> int:
    """Number of non-zero coordinates."""
    return v.bit_count()


def distance(u: int, v: int) -> int:
    """Hamming distance between two equal-length words."""
    return (u ^ v).bit_count()


def complement(v: int, m: int) -> int:
    """Word with support equal to the complement of supp(v) in {1..m}."""
    check_vertex(v, m)
    return v ^ ((1 << m) - 1)


def support(v: int) -> tuple[int, ...]:
    """1-indexed coordinates where v is non-zero, ascending."""
    out = []
    i = 1
    while v:
        if v & 1:
            out.append(i)
        v >>= 1
        i += 1
    return tuple(out)


def covers(nu: int, beta: int) -> bool:
    """True iff every non-zero coordinate of nu is also set in beta."""
    return nu & beta == nu


def from_support(coords, m: int) -> int:
    """Word with the given 1-indexed support."""
    check_length(m)
    v = 0
    for i in coords:
        if not 1 <= i <= m:
            raise ValueError(f"coordinate {i} outside 1..{m}")
        v |= 1 << (i - 1)
    return v


def to_string(v: int, m: int) -> str:
    """Text form: '0'/'1' per coordinate, coordinate 1 leftmost."""
    check_vertex(v, m)
    return "".join("1" if (v >> i) & 1 else "0" for i in range(m))


def from_string(s: str) -> tuple[int, int]:
    """Parse the text form; returns (word, length)."""
    m = len(s)
    check_length(m)
    v = 0
    for i, ch in enumerate(s):
        if ch == "1":
            v |= 1 << i
        elif ch != "0":
            raise ValueError(f"invalid character {ch!r} in vertex string")
    return v, m


def weight_masks(m: int, k: int) -> Iterator[int]:
    """All weight-k words of length m in ascending integer order (Gosper)."""
    if k == 0:
        yield 0
        return
    x = (1 << k) - 1
    limit = 1 << m
    while x < limit:
        yield x
        c = x & -x
        r = x + c
        x = (((r ^ x) >> 2) // c) | r


def sphere(center: int, k: int, m: int) -> Iterator[int]:
    """All words at distance exactly k from center, ascending by bit word.

    Yields binomial(m, k) distinct words.  The list is materialized
    internally so the output order is independent of the center.
    """
    check_vertex(center, m)
    if not 0 <= k <= m:
        raise ValueError(f"sphere radius {k} outside [0, {m}]")
    if center == 0:
        yield from weight_masks(m, k)
        return
    yield from sorted(center ^ mask for mask in weight_masks(m, k))


def krawtchouk(m: int, k: int, x: int) -> int:
    """Exact alternating-binomial sum K_k(x) for length m."""
    if not (0 <= k <= m and 0 <= x <= m):
        raise ValueError(f"krawtchouk arguments k={k}, x={x} outside [0, {m}]")
    return sum(
        (-1) ** j * math.comb(x, j) * math.comb(m - x, k - j)
        for j in range(k + 1)
    )


class KrawtchoukTable:
    """Memoized (m+1) x (m+1) table of exact K_k(x) values."""

    def __init__(self, m: int):
        check_length(m)
        self.m = m
        self.values = tuple(
            tuple(krawtchouk(m, k, x) for x in range(m + 1))
            for k in range(m + 1)
        )

    def __call__(self, k: int, x: int) -> int:
        return self.values[k][x]


@lru_cache(maxsize=None)
def krawtchouk_table(m: int) -> KrawtchoukTable:
    return KrawtchoukTable(m)


# ---------------------------------------------------------------------------
# Vectorized helpers for full vertex-space scans.

@lru_cache(maxsize=None)
def all_vertices(m: int) -> np.ndarray:
    """The 2^m vertex set as a read-only uint32 array."""
    check_length(m)
    arr = np.arange(1 << m, dtype=np.uint32)
    arr.setflags(write=False)
    return arr


def popcount_u32(arr: np.ndarray) -> np.ndarray:
    return np.bitwise_count(arr).astype(np.uint8)
