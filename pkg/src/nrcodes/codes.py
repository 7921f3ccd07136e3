"""Construction of the binary codes under study.

The centerpiece is the coset construction of the Nordstrom-Robinson code
from the extended binary Golay code: split the 24 coordinates into the
first 8 (J*) and the last 16 (J), take the subcode D supported off J*
together with seven cosets pinned by their support pattern on J*, and
project the union onto J.  Everything downstream (distance spectra, group
computations) consumes the immutable Code objects built here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from .hamming import (
    all_vertices,
    check_length,
    check_vertex,
    from_string,
    popcount_u32,
    to_string,
    weight,
)


class ConstructionError(RuntimeError):
    """A deterministic construction step failed its own postcondition."""


class CodeFileError(ValueError):
    """Malformed code file."""


class Code:
    """Immutable, deduplicated, canonically ordered set of equal-length words.

    Canonical order is ascending integer value of the bit word.  Minimum
    distance is computed by exhaustive pair scan at construction time and
    cached, as are the weight histogram and a hash set for membership.
    """

    __slots__ = ("m", "words", "size", "min_distance", "_member", "_hist")

    def __init__(self, m: int, words):
        check_length(m)
        ordered = sorted(set(words))
        if not ordered:
            raise ValueError("a code must contain at least one word")
        if ordered[0] < 0 or ordered[-1] >> m:
            raise ValueError(f"code words do not fit in {m} coordinates")
        self.m = m
        self.words = tuple(ordered)
        self.size = len(self.words)
        self._member = frozenset(self.words)
        self._hist = None
        self.min_distance = _min_distance(self.words) if self.size >= 2 else None

    def __len__(self) -> int:
        return self.size

    def __iter__(self):
        return iter(self.words)

    def __contains__(self, v: int) -> bool:
        return v in self._member

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Code)
            and self.m == other.m
            and self.words == other.words
        )

    def __hash__(self) -> int:
        return hash((self.m, self.words))

    def __repr__(self) -> str:
        d = self.min_distance
        return f"Code(m={self.m}, size={self.size}, min_distance={d})"

    def words_u32(self) -> np.ndarray:
        return np.asarray(self.words, dtype=np.uint32)

    @property
    def weight_histogram(self) -> tuple[int, ...]:
        """Count of words per weight, indexed 0..m."""
        if self._hist is None:
            hist = [0] * (self.m + 1)
            for w in self.words:
                hist[w.bit_count()] += 1
            self._hist = tuple(hist)
        return self._hist

    def weight_class(self, k: int) -> tuple[int, ...]:
        """All words of weight k, canonical order."""
        return tuple(w for w in self.words if w.bit_count() == k)


def _min_distance(words) -> int:
    """Exhaustive minimum over distinct pairs, chunked for large codes."""
    arr = np.asarray(words, dtype=np.uint32)
    n = len(arr)
    best = np.iinfo(np.uint8).max
    step = max(1, (1 << 21) // n)
    for lo in range(0, n, step):
        block = arr[lo : lo + step]
        d = np.bitwise_count(block[:, None] ^ arr[None, :])
        # mask the diagonal of self-pairs inside this block
        idx = np.arange(lo, min(lo + step, n))
        d[idx - lo, idx] = 255
        best = min(best, int(d.min()))
    return best


@dataclass(frozen=True)
class CodePredicates:
    is_linear: bool
    is_even: bool
    is_antipodal: bool
    min_distance: int | None
    weight_histogram: tuple[int, ...]


def code_predicates(code: Code) -> CodePredicates:
    """Closure under sum / even weights / closure under complement."""
    full = (1 << code.m) - 1
    is_antipodal = all((w ^ full) in code for w in code.words)
    is_even = all(w.bit_count() % 2 == 0 for w in code.words)
    return CodePredicates(
        is_linear=is_linear(code),
        is_even=is_even,
        is_antipodal=is_antipodal,
        min_distance=code.min_distance,
        weight_histogram=code.weight_histogram,
    )


def is_linear(code: Code) -> bool:
    """Contains zero and is closed under coordinatewise sum."""
    if 0 not in code:
        return False
    basis = linear_basis(code)
    return len(code) == 1 << len(basis)


def linear_basis(code: Code) -> tuple[int, ...]:
    """Row-reduced basis of the span of the code words."""
    basis: list[int] = []
    for w in code.words:
        for b in basis:
            w = min(w, w ^ b)
        if w:
            basis.append(w)
            basis.sort(reverse=True)
    return tuple(sorted(basis))


def span(generators, m: int) -> Code:
    """Code spanned by the given generator words."""
    words = [0]
    for g in generators:
        check_vertex(g, m)
        words += [w ^ g for w in words]
    return Code(m, words)


# ---------------------------------------------------------------------------
# Extended binary Golay code.

# 12x12 block adjoined to the identity: an 11x11 circulant over the
# quadratic residues mod 11 (plus 0), bordered by an all-ones row/column
# with a zero corner.
_CIRC = {0, 1, 3, 4, 5, 9}


def _golay_block_rows() -> list[int]:
    rows = []
    for i in range(11):
        row = sum(1 << j for j in range(11) if (i + j) % 11 in _CIRC)
        rows.append(row | (1 << 11))
    rows.append((1 << 11) - 1)
    return rows


def _relocate(words: list[int], src_coords: tuple[int, ...], m: int) -> list[int]:
    """Move the 1-indexed src_coords to positions 1..len(src), keeping the
    relative order of moved and unmoved coordinates alike."""
    rest = [i for i in range(1, m + 1) if i not in src_coords]
    new_pos = {}
    for t, i in enumerate(src_coords, start=1):
        new_pos[i] = t
    for t, i in enumerate(rest, start=len(src_coords) + 1):
        new_pos[i] = t
    out = []
    for w in words:
        x = 0
        for i in range(1, m + 1):
            if (w >> (i - 1)) & 1:
                x |= 1 << (new_pos[i] - 1)
        out.append(x)
    return out


@lru_cache(maxsize=1)
def golay24() -> Code:
    """The [24,12,8] extended binary Golay code containing (1^8, 0^16).

    Built as the span of [I | B] for the classic bordered-circulant block
    B, then relabeled by the coordinate permutation that moves the support
    of the least weight-8 codeword to coordinates {1..8}.  The weight
    enumerator and minimum distance are verified before returning.
    """
    block = _golay_block_rows()
    gens = [(1 << i) | (block[i] << 12) for i in range(12)]
    raw = span(gens, 24)
    if len(raw) != 4096:
        raise ConstructionError("Golay span does not have 2^12 words")
    least_w8 = next(w for w in raw.words if w.bit_count() == 8)
    sup = tuple(i + 1 for i in range(24) if (least_w8 >> i) & 1)
    code = Code(24, _relocate(list(raw.words), sup, 24))
    gamma = (1 << 8) - 1
    if gamma not in code:
        raise ConstructionError("relocation lost the (1^8, 0^16) codeword")
    if code.min_distance != 8:
        raise ConstructionError(f"Golay minimum distance {code.min_distance} != 8")
    hist = code.weight_histogram
    expected = {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}
    for k, n in enumerate(hist):
        if n != expected.get(k, 0):
            raise ConstructionError(f"Golay weight enumerator wrong at weight {k}")
    return code


JSTAR = tuple(range(1, 9))
J16 = tuple(range(9, 25))
_JSTAR_MASK = (1 << 8) - 1


@dataclass(frozen=True)
class CosetDecomposition:
    """The Golay code split along its first eight coordinates.

    D is the subcode supported off {1..8}; reps[i-1] is the least codeword
    whose support meets {1..8} exactly in {i, 8}; u_vectors[i] is the
    projection of the i-th coset onto {1..8} (u_0 = 0).
    """

    golay: Code
    D: Code
    reps: tuple[int, ...]
    u_vectors: tuple[int, ...]
    jstar: tuple[int, ...] = JSTAR
    j: tuple[int, ...] = J16

    def cosets(self) -> list[tuple[int, ...]]:
        """Word lists of D = D^0, D^1, ..., D^7, canonical order each."""
        out = [self.D.words]
        for rep in self.reps:
            out.append(tuple(sorted(w ^ rep for w in self.D.words)))
        return out


def coset_decomposition(G: Code) -> CosetDecomposition:
    """Split a Golay code satisfying golay24()'s postconditions."""
    if G.m != 24:
        raise ValueError("decomposition requires a length-24 code")
    d_words = [w for w in G.words if w & _JSTAR_MASK == 0]
    D = Code(24, d_words)
    reps = []
    for i in range(1, 8):
        pattern = (1 << (i - 1)) | (1 << 7)
        rep = next((w for w in G.words if w & _JSTAR_MASK == pattern), None)
        if rep is None:
            raise ConstructionError(
                f"no codeword meets coordinates 1..8 exactly in {{{i}, 8}}"
            )
        reps.append(rep)
    u_vectors = (0,) + tuple((1 << (i - 1)) | (1 << 7) for i in range(1, 8))
    decomp = CosetDecomposition(golay=G, D=D, reps=tuple(reps), u_vectors=u_vectors)
    for i, coset in enumerate(decomp.cosets()):
        member = set(coset)
        filtered = [w for w in G.words if w & _JSTAR_MASK == u_vectors[i]]
        if sorted(filtered) != sorted(member):
            raise ConstructionError(f"coset {i} does not match its support filter")
    return decomp


def project(code: Code, coords) -> Code:
    """Projection onto the given ordered 1-indexed coordinate subset."""
    coords = tuple(coords)
    if not coords:
        raise ValueError("projection coordinate set must be nonempty")
    if any(not 1 <= i <= code.m for i in coords):
        raise ValueError(f"projection coordinates outside 1..{code.m}")
    if len(set(coords)) != len(coords):
        raise ValueError("projection coordinates must be distinct")
    out = []
    for w in code.words:
        x = 0
        for t, i in enumerate(coords):
            x |= ((w >> (i - 1)) & 1) << t
        out.append(x)
    return Code(len(coords), out)


def project_word(w: int, coords) -> int:
    x = 0
    for t, i in enumerate(coords):
        x |= ((w >> (i - 1)) & 1) << t
    return x


def puncture(code: Code, p: int) -> Code:
    """Delete coordinate p from every word."""
    if not 1 <= p <= code.m:
        raise ValueError(f"puncture coordinate {p} outside 1..{code.m}")
    return project(code, [i for i in range(1, code.m + 1) if i != p])


def translate(code: Code, beta: int) -> Code:
    """The coset {w + beta : w in C}, recanonicalized."""
    check_vertex(beta, code.m)
    return Code(code.m, [w ^ beta for w in code.words])


@lru_cache(maxsize=1)
def nordstrom_robinson() -> Code:
    """The (16,256,6) Nordstrom-Robinson code.

    Union of the eight pinned Golay cosets projected onto coordinates
    {9..24}.  Postconditions (size, distance, evenness, weight-6 count)
    are asserted before returning.
    """
    decomp = coset_decomposition(golay24())
    words = [w >> 8 for coset in decomp.cosets() for w in coset]
    nr = Code(16, words)
    if len(nr) != 256 or nr.min_distance != 6:
        raise ConstructionError("Nordstrom-Robinson postconditions failed")
    if any(w.bit_count() % 2 for w in nr.words):
        raise ConstructionError("Nordstrom-Robinson contains an odd-weight word")
    if nr.weight_histogram[6] != 112:
        raise ConstructionError("Nordstrom-Robinson weight-6 count is not 112")
    return nr


@lru_cache(maxsize=1)
def reed_muller_subcode() -> Code:
    """The linear [16,5,8] subcode: projection of D onto {9..24}."""
    decomp = coset_decomposition(golay24())
    rm = Code(16, [w >> 8 for w in decomp.D.words])
    if len(rm) != 32 or rm.min_distance != 8 or not is_linear(rm):
        raise ConstructionError("Reed-Muller subcode postconditions failed")
    return rm


def punctured_nr(p: int = 1) -> Code:
    """The (15,256,5) code obtained by deleting coordinate p."""
    return puncture(nordstrom_robinson(), p)


# ---------------------------------------------------------------------------
# Code file format: first line "m=<length>", one word per line.

def write_code(code: Code, path) -> None:
    lines = [f"m={code.m}"] + [to_string(w, code.m) for w in code.words]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_code(path) -> Code:
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("m="):
        raise CodeFileError("first line must be 'm=<length>'")
    try:
        m = int(lines[0][2:])
        check_length(m)
    except ValueError as exc:
        raise CodeFileError(f"bad length header: {exc}") from exc
    words = []
    for ln in lines[1:]:
        if len(ln) != m:
            raise CodeFileError(f"word {ln!r} does not have length {m}")
        try:
            w, _ = from_string(ln)
        except ValueError as exc:
            raise CodeFileError(str(exc)) from exc
        words.append(w)
    if not words:
        raise CodeFileError("code file contains no words")
    return Code(m, words)
