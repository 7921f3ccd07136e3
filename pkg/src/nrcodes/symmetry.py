"""Hamming-graph automorphisms: search, group order, orbits, transitivity.

An automorphism of the Hamming graph on m coordinates is a translation
followed by a coordinate permutation.  This module finds the permutation
stabilizer of a code by backtrack search over coordinate images (pruned by
coordinate invariants and by multiset consistency of projected codeword
prefixes), assembles generators of the full stabilizer including
translations, computes exact permutation-group orders through a
deterministic stabilizer chain, and certifies complete transitivity by
matching vertex orbits against the distance partition.

Searches are bounded by an explicit node budget (NRCODES_BUDGET or 10^8 by
default); exceeding it raises, never returns a partial answer.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .codes import Code, linear_basis
from .hamming import all_vertices, check_vertex, from_string, to_string
from .spectrum import distance_partition

DEFAULT_BUDGET = 10**8
_BUDGET_ENV = "NRCODES_BUDGET"


class SearchBudgetExceeded(RuntimeError):
    """A backtrack search ran past its node limit."""


class _Budget:
    __slots__ = ("limit", "used")

    def __init__(self, limit: int | None):
        if limit is None:
            limit = int(os.environ.get(_BUDGET_ENV, DEFAULT_BUDGET))
        self.limit = limit
        self.used = 0

    def charge(self) -> None:
        self.used += 1
        if self.used > self.limit:
            raise SearchBudgetExceeded(
                f"search exceeded its node budget of {self.limit}"
            )


# ---------------------------------------------------------------------------
# Permutations in one-line notation: p[i] is the image of point i (0-based).

def _perm_identity(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def _perm_mult(p, q) -> tuple[int, ...]:
    """Apply p, then q."""
    return tuple(q[p[i]] for i in range(len(p)))


def _perm_inv(p) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def _check_perm(p, n: int) -> tuple[int, ...]:
    p = tuple(p)
    if sorted(p) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {p}")
    return p


def permute_bits(v: int, sigma) -> int:
    """Move the bit at coordinate j to coordinate sigma[j]."""
    out = 0
    for j, sj in enumerate(sigma):
        out |= ((v >> j) & 1) << sj
    return out


def unpermute_bits(v: int, sigma) -> int:
    """Inverse of permute_bits for the same sigma."""
    out = 0
    for j, sj in enumerate(sigma):
        out |= ((v >> sj) & 1) << j
    return out


@dataclass(frozen=True)
class AutElement:
    """Translation-then-permutation automorphism of the Hamming graph.

    Acts on a vertex as permute(v + beta); composition is left-to-right,
    so act(x * y, v) == act(y, act(x, v)).
    """

    m: int
    beta: int
    sigma: tuple[int, ...]

    def __post_init__(self):
        check_vertex(self.beta, self.m)
        object.__setattr__(self, "sigma", _check_perm(self.sigma, self.m))

    @classmethod
    def identity(cls, m: int) -> "AutElement":
        return cls(m, 0, _perm_identity(m))

    @classmethod
    def translation(cls, m: int, beta: int) -> "AutElement":
        return cls(m, beta, _perm_identity(m))

    @classmethod
    def permutation(cls, m: int, sigma) -> "AutElement":
        return cls(m, 0, tuple(sigma))

    def act(self, v: int) -> int:
        if v >> self.m or v < 0:
            raise ValueError(f"vertex {v:#x} does not fit in {self.m} coordinates")
        return permute_bits(v ^ self.beta, self.sigma)

    def __mul__(self, other: "AutElement") -> "AutElement":
        if self.m != other.m:
            raise ValueError("cannot compose elements of different lengths")
        beta = self.beta ^ unpermute_bits(other.beta, self.sigma)
        return AutElement(self.m, beta, _perm_mult(self.sigma, other.sigma))

    def inverse(self) -> "AutElement":
        return AutElement(
            self.m, permute_bits(self.beta, self.sigma), _perm_inv(self.sigma)
        )

    def is_identity(self) -> bool:
        return self.beta == 0 and self.sigma == _perm_identity(self.m)

    def permutation_part(self) -> tuple[int, ...]:
        return self.sigma


def act_on_code(x: AutElement, code: Code) -> Code:
    return Code(code.m, [x.act(w) for w in code.words])


def stabilizes(x: AutElement, code: Code) -> bool:
    return all(x.act(w) in code for w in code.words)


def project_automorphism(x: AutElement, coords) -> AutElement:
    """Induced action on the projection onto the 1-indexed coords.

    Requires the permutation part to stabilize the coordinate set.
    """
    coords = tuple(coords)
    zero_based = [i - 1 for i in coords]
    pos = {c: t for t, c in enumerate(zero_based)}
    if any(x.sigma[c] not in pos for c in zero_based):
        raise ValueError("permutation part does not stabilize the coordinate set")
    new_sigma = tuple(pos[x.sigma[c]] for c in zero_based)
    new_beta = 0
    for t, c in enumerate(zero_based):
        new_beta |= ((x.beta >> c) & 1) << t
    return AutElement(len(coords), new_beta, new_sigma)


# ---------------------------------------------------------------------------
# Automorphism file format: one element per line,
# "beta=<0/1 string> sigma=<space-separated images of 1..m>".

def format_aut_element(x: AutElement) -> str:
    images = " ".join(str(x.sigma[j] + 1) for j in range(x.m))
    return f"beta={to_string(x.beta, x.m)} sigma={images}"


def parse_aut_element(line: str) -> AutElement:
    parts = line.split()
    if len(parts) < 2 or not parts[0].startswith("beta=") or not parts[1].startswith("sigma="):
        raise ValueError(f"malformed automorphism line: {line!r}")
    beta, m = from_string(parts[0][len("beta="):])
    images = [parts[1][len("sigma="):]] + parts[2:]
    sigma = tuple(int(t) - 1 for t in images)
    if len(sigma) != m:
        raise ValueError("sigma length does not match beta length")
    return AutElement(m, beta, sigma)


def write_aut_elements(elements, path) -> None:
    Path(path).write_text(
        "".join(format_aut_element(x) + "\n" for x in elements), encoding="utf-8"
    )


def read_aut_elements(path) -> list[AutElement]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return [parse_aut_element(ln) for ln in lines if ln.strip()]


# ---------------------------------------------------------------------------
# Permutation groups with a deterministic stabilizer chain.

class PermGroup:
    """Permutation group given by generators; order via stabilizer chain.

    Base points are chosen as the smallest moved point at each level and
    transversals grow by breadth-first Schreier generation, so the chain
    (and therefore the reported order) is reproducible.
    """

    def __init__(self, degree: int, generators):
        self.degree = degree
        self.generators = tuple(
            _check_perm(g, degree) for g in generators
        )
        self._chain: list[dict] | None = None

    def _build_chain(self) -> list[dict]:
        if self._chain is not None:
            return self._chain
        degree = self.degree
        identity = _perm_identity(degree)
        levels: list[dict] = []

        def level_gens(i: int) -> list[tuple]:
            # strong generators fixing bases 0..i-1: those assigned at level >= i
            return [g for lvl in levels[i:] for g in lvl["gens"]]

        def rebuild(i: int) -> None:
            lvl = levels[i]
            gens = level_gens(i)
            transversal = {lvl["base"]: identity}
            queue = [lvl["base"]]
            for pt in queue:
                for g in gens:
                    npt = g[pt]
                    if npt not in transversal:
                        transversal[npt] = _perm_mult(transversal[pt], g)
                        queue.append(npt)
            lvl["transversal"] = transversal

        def strip(g, start: int):
            for idx in range(start, len(levels)):
                lvl = levels[idx]
                x = g[lvl["base"]]
                rep = lvl["transversal"].get(x)
                if rep is None:
                    return g, idx
                g = _perm_mult(g, _perm_inv(rep))
            return g, len(levels)

        stack = [(g, 0) for g in reversed(self.generators)]
        while stack:
            g, start = stack.pop()
            residue, j = strip(g, start)
            if residue == identity:
                continue
            if j == len(levels):
                base = next(i for i in range(degree) if residue[i] != i)
                levels.append({"base": base, "gens": [], "transversal": {}})
            levels[j]["gens"].append(residue)
            # the new generator enlarges every level up to j
            for i in range(j, -1, -1):
                rebuild(i)
                lvl = levels[i]
                gens = level_gens(i)
                for pt in sorted(lvl["transversal"]):
                    rep = lvl["transversal"][pt]
                    for h in gens:
                        target = lvl["transversal"][h[pt]]
                        schreier = _perm_mult(_perm_mult(rep, h), _perm_inv(target))
                        if schreier != identity:
                            stack.append((schreier, i + 1))
        self._chain = levels
        return levels

    def order(self) -> int:
        n = 1
        for lvl in self._build_chain():
            n *= len(lvl["transversal"])
        return n

    def base(self) -> tuple[int, ...]:
        return tuple(lvl["base"] for lvl in self._build_chain())


def group_order(group: PermGroup) -> int:
    return group.order()


# ---------------------------------------------------------------------------
# Coordinate invariants used to prune the backtrack searches.

def _weight_class_columns(words, m: int) -> list[list[int]]:
    """Per weight class, per coordinate, a bit mask over word indices."""
    by_weight: dict[int, list[int]] = {}
    for idx, w in enumerate(words):
        by_weight.setdefault(w.bit_count(), []).append(idx)
    classes = []
    for wt in sorted(by_weight):
        cols = [0] * m
        for idx in by_weight[wt]:
            w = words[idx]
            j = 0
            while w:
                if w & 1:
                    cols[j] |= 1 << idx
                w >>= 1
                j += 1
        classes.append(cols)
    return classes


def _refine_colors_joint(words_a, words_b, m: int):
    """Invariant coloring of coordinates, computed for two codes in lockstep.

    Colors are shared integer ranks, comparable across the two codes; a
    coordinate of one code may only map to a coordinate of the other with
    the same color.  Returns None if the color multisets differ (then no
    permutation can map the first code onto the second).
    """
    cols_a = _weight_class_columns(words_a, m)
    cols_b = _weight_class_columns(words_b, m)
    if len(cols_a) != len(cols_b):
        return None

    def initial(cols):
        return [
            tuple(cls[i].bit_count() for cls in cols) for i in range(m)
        ]

    keys_a, keys_b = initial(cols_a), initial(cols_b)
    colors_a = colors_b = None
    for _ in range(m + 2):
        ranking = {key: r for r, key in enumerate(sorted(set(keys_a) | set(keys_b)))}
        new_a = [ranking[k] for k in keys_a]
        new_b = [ranking[k] for k in keys_b]
        if new_a == colors_a and new_b == colors_b:
            break
        colors_a, colors_b = new_a, new_b

        def refined(cols, colors):
            keys = []
            for i in range(m):
                pair_counts = sorted(
                    (
                        colors[j],
                        tuple((cls[i] & cls[j]).bit_count() for cls in cols),
                    )
                    for j in range(m)
                    if j != i
                )
                keys.append((colors[i], tuple(pair_counts)))
            return keys

        keys_a = refined(cols_a, colors_a)
        keys_b = refined(cols_b, colors_b)
    if sorted(colors_a) != sorted(colors_b):
        return None
    return colors_a, colors_b


def coordinate_invariant_partition(code: Code) -> tuple[tuple[int, ...], ...]:
    """Coordinates (1-indexed) grouped by iterated invariant refinement.

    Permutation automorphisms of the code preserve the cells.
    """
    res = _refine_colors_joint(code.words, code.words, code.m)
    colors, _ = res
    cells: dict[int, list[int]] = {}
    for i, c in enumerate(colors):
        cells.setdefault(c, []).append(i + 1)
    return tuple(tuple(cells[c]) for c in sorted(cells))


# ---------------------------------------------------------------------------
# Backtrack search for a coordinate permutation mapping one code to another.

def _column_masks(words, m: int) -> list[int]:
    cols = [0] * m
    for idx, w in enumerate(words):
        j = 0
        while w:
            if w & 1:
                cols[j] |= 1 << idx
            w >>= 1
            j += 1
    return cols


def _search_permutation(
    words_a, words_b, m: int, prefix, budget: _Budget
) -> tuple[int, ...] | None:
    """First coordinate permutation with words_a^sigma == words_b, or None.

    `prefix` is a list of (coordinate, image) pairs fixed in advance.
    Remaining coordinates are assigned smallest-first with images tried in
    ascending order.  A partial assignment survives only while the words
    of both codes, projected onto the assigned coordinates, match as
    multisets; the multisets are maintained as a refinement of paired
    index-set blocks, one split per assignment.
    """
    if len(words_a) != len(words_b):
        return None
    n = len(words_a)
    colors = _refine_colors_joint(words_a, words_b, m)
    if colors is None:
        return None
    colors_a, colors_b = colors
    cols_a = _column_masks(words_a, m)
    cols_b = _column_masks(words_b, m)

    order = [c for c, _ in prefix] + [
        c for c in range(m) if c not in {c0 for c0, _ in prefix}
    ]
    prescribed = dict(prefix)
    sigma = [-1] * m
    used = [False] * m
    full = (1 << n) - 1
    root_blocks = [(full, full)]

    def split(blocks, ca: int, cb: int):
        out = []
        for da, db in blocks:
            da1 = da & ca
            db1 = db & cb
            if da1.bit_count() != db1.bit_count():
                return None
            da0 = da & ~ca
            db0 = db & ~cb
            if da0:
                out.append((da0, db0))
            if da1:
                out.append((da1, db1))
        return out

    def extend(depth: int, blocks) -> bool:
        if depth == m:
            return True
        i = order[depth]
        if i in prescribed:
            candidates = [prescribed[i]]
        else:
            candidates = [
                p for p in range(m)
                if not used[p] and colors_b[p] == colors_a[i]
            ]
        for p in candidates:
            if used[p] or colors_b[p] != colors_a[i]:
                continue
            budget.charge()
            sub = split(blocks, cols_a[i], cols_b[p])
            if sub is None:
                continue
            sigma[i] = p
            used[p] = True
            if extend(depth + 1, sub):
                return True
            sigma[i] = -1
            used[p] = False
        return False

    if extend(0, root_blocks):
        return tuple(sigma)
    return None


def enumerate_perm_automorphisms(code: Code, budget: int | None = None) -> PermGroup:
    """Full permutation stabilizer of the code, with exact order.

    Walks the stabilizer chain over coordinates 0, 1, 2, ...: at each level
    the orbit of the next coordinate is determined by one existence search
    per unproven candidate image, and the witnesses double as a strong
    generating set.  The resulting group order is cross-checked against
    the product of the orbit sizes.
    """
    if code.m > 16 or code.size > 4096:
        raise ValueError("automorphism search supports m <= 16 and |C| <= 4096")
    tracker = _Budget(budget)
    m = code.m
    words = code.words
    gens: list[tuple[int, ...]] = []
    order = 1
    for k in range(m):
        level_gens: list[tuple[int, ...]] = []
        orbit = {k}

        def close_orbit():
            queue = list(orbit)
            for pt in queue:
                for g in level_gens:
                    npt = g[pt]
                    if npt not in orbit:
                        orbit.add(npt)
                        queue.append(npt)

        prefix = [(i, i) for i in range(k)]
        for p in range(k + 1, m):
            if p in orbit:
                continue
            sigma = _search_permutation(
                words, words, m, prefix + [(k, p)], tracker
            )
            if sigma is not None:
                level_gens.append(sigma)
                close_orbit()
        gens.extend(level_gens)
        order *= len(orbit)
    group = PermGroup(m, gens)
    for g in gens:
        permuted = Code(m, [permute_bits(w, g) for w in words])
        if permuted.words != words:
            raise RuntimeError("backtrack produced a non-automorphism")
    if group.order() != order:
        raise RuntimeError(
            f"stabilizer-chain order {group.order()} != orbit product {order}"
        )
    return group


def find_equivalence(
    code_a: Code, code_b: Code, budget: int | None = None
) -> AutElement | None:
    """Some Hamming-graph automorphism mapping code_a onto code_b, or None.

    Fixes the least word of code_a, tries each word of code_b as its
    image, and searches for the coordinate permutation between the two
    translated codes.
    """
    if code_a.m != code_b.m:
        raise ValueError("codes must have the same length")
    if code_a.size != code_b.size:
        return None
    m = code_a.m
    tracker = _Budget(budget)
    c = code_a.words[0]
    shifted_a = tuple(sorted(w ^ c for w in code_a.words))
    for c2 in code_b.words:
        shifted_b = tuple(sorted(w ^ c2 for w in code_b.words))
        sigma = _search_permutation(shifted_a, shifted_b, m, [], tracker)
        if sigma is None:
            continue
        beta = c ^ unpermute_bits(c2, sigma)
        x = AutElement(m, beta, sigma)
        if not all(x.act(w) in code_b for w in code_a.words):
            raise RuntimeError("equivalence search produced a wrong element")
        return x
    return None


def translation_kernel(code: Code) -> Code:
    """All words beta with C + beta = C; a linear subcode of C."""
    if 0 not in code:
        raise ValueError("translation kernel requires the zero word in the code")
    kernel = [
        beta
        for beta in code.words
        if all((w ^ beta) in code for w in code.words)
    ]
    return Code(code.m, kernel)


def assemble_aut_generators(
    code: Code, budget: int | None = None
) -> list[AutElement]:
    """Generators of a subgroup of the code's full stabilizer.

    Combines (a) the permutation stabilizer, (b) a basis of the
    translation kernel, and (c) for each kernel coset inside the code, one
    element moving the zero word onto a coset representative (a coordinate
    permutation followed by the representative's translation).  Every
    element is re-verified to stabilize the code.
    """
    if 0 not in code:
        raise ValueError("generator assembly requires the zero word in the code")
    m = code.m
    tracker = _Budget(budget)
    out: list[AutElement] = []
    perm_group = enumerate_perm_automorphisms(code, budget)
    out.extend(AutElement.permutation(m, g) for g in perm_group.generators)
    kernel = translation_kernel(code)
    out.extend(AutElement.translation(m, b) for b in linear_basis(kernel))
    seen: set[int] = set()
    reps = []
    for w in code.words:
        if w not in seen:
            reps.append(w)
            seen.update(w ^ kw for kw in kernel.words)
    for rep in reps:
        if rep == 0:
            continue
        target = tuple(sorted(w ^ rep for w in code.words))
        sigma = _search_permutation(code.words, target, m, [], tracker)
        if sigma is None:
            continue
        x = AutElement(m, unpermute_bits(rep, sigma), sigma)
        if x.act(0) != rep:
            raise RuntimeError("coset mover does not send 0 to its representative")
        out.append(x)
    for x in out:
        if not stabilizes(x, code):
            raise RuntimeError("assembled generator does not stabilize the code")
    return out


# ---------------------------------------------------------------------------
# Orbits on the vertex space.

@dataclass(frozen=True)
class OrbitPartition:
    """Orbit labels (smallest member of each orbit) for every vertex."""

    m: int
    labels: np.ndarray  # uint32, read-only
    orbit_count: int
    sizes: tuple[int, ...]  # by ascending orbit label


def _action_table(x: AutElement) -> np.ndarray:
    verts = all_vertices(x.m) ^ np.uint32(x.beta)
    out = np.zeros(1 << x.m, dtype=np.uint32)
    for j, sj in enumerate(x.sigma):
        out |= ((verts >> np.uint32(j)) & np.uint32(1)) << np.uint32(sj)
    return out


def vertex_orbits(gens, m: int) -> OrbitPartition:
    """Orbits of the generated group on all 2^m vertices.

    Labels converge to the smallest vertex of each orbit by repeated
    minimum propagation along every generator's action table, so the
    labeling is canonical regardless of generator order.
    """
    for g in gens:
        if g.m != m:
            raise ValueError("generator length does not match the vertex space")
    labels = np.arange(1 << m, dtype=np.uint32)
    tables = [_action_table(g) for g in gens]
    for _ in range(1 << m):
        before = labels.copy()
        for t in tables:
            np.minimum(labels, labels[t], out=labels)
        if (labels == before).all():
            break
    uniq, counts = np.unique(labels, return_counts=True)
    labels.setflags(write=False)
    return OrbitPartition(
        m=m, labels=labels, orbit_count=len(uniq),
        sizes=tuple(int(c) for c in counts),
    )


@dataclass(frozen=True)
class SphereOrbits:
    k: int
    orbit_count: int
    sizes: tuple[int, ...]


def orbits_on_sphere(group: PermGroup, m: int, k: int) -> SphereOrbits:
    """Orbits of a permutation group on the weight-k vertices."""
    if group.degree != m:
        raise ValueError("group degree does not match the vertex length")
    gens = [AutElement.permutation(m, g) for g in group.generators]
    partition = vertex_orbits(gens, m)
    weights = np.bitwise_count(all_vertices(m))
    labs = partition.labels[weights == k]
    uniq, counts = np.unique(labs, return_counts=True)
    return SphereOrbits(
        k=k, orbit_count=len(uniq), sizes=tuple(int(c) for c in counts)
    )


@dataclass(frozen=True)
class CellCertificate:
    cell: int
    cell_size: int
    orbit_label: int
    orbit_size: int


@dataclass(frozen=True)
class TransitivityResult:
    ok: bool
    cells: tuple[CellCertificate, ...]
    witness: tuple[int, int, int] | None  # (cell, vertex_a, vertex_b)


def verify_complete_transitivity(code: Code, gens) -> TransitivityResult:
    """Do the orbits of the generators equal the distance partition?

    Every generator must stabilize the code (checked, error otherwise).
    On success the certificate lists, per cell, the matched orbit size;
    on failure it returns two same-cell vertices in different orbits.
    """
    for x in gens:
        if not stabilizes(x, code):
            raise ValueError("generator does not stabilize the code")
    partition = distance_partition(code)
    orbits = vertex_orbits(gens, code.m)
    labels = orbits.labels
    cells = []
    for i in range(partition.rho + 1):
        cell = partition.cell(i)
        labs = labels[cell]
        first = labs[0]
        mismatch = labs != first
        if mismatch.any():
            b = int(np.argmax(mismatch))
            return TransitivityResult(
                ok=False, cells=tuple(cells),
                witness=(i, int(cell[0]), int(cell[b])),
            )
        orbit_size = int(np.count_nonzero(labels == first))
        cells.append(
            CellCertificate(
                cell=i, cell_size=len(cell),
                orbit_label=int(first), orbit_size=orbit_size,
            )
        )
    ok = all(c.orbit_size == c.cell_size for c in cells)
    witness = None
    return TransitivityResult(ok=ok, cells=tuple(cells), witness=witness)
