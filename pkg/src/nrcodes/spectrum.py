"""Distance spectra, regularity checks, design counting, and feasibility.

Arithmetic in this module is exact throughout: pair counts and Krawtchouk
values are Python ints, normalized quantities are `fractions.Fraction`.
numpy is used only for counting scans over the vertex space, never for
the arithmetic whose signs decide feasibility.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .codes import Code, is_linear, linear_basis
from .hamming import all_vertices, krawtchouk_table, weight_masks

INF_DIST = 64  # sentinel above any achievable distance, safe in uint8 arithmetic


class FeasibilityError(ValueError):
    """The constraint system does not bound every unknown."""


@dataclass(frozen=True)
class DistanceDistribution:
    """Exact ordered-pair distance counts and their normalized form."""

    m: int
    size: int
    pair_counts: tuple[int, ...]
    a: tuple[Fraction, ...]


def distance_distribution(code: Code) -> DistanceDistribution:
    arr = code.words_u32()
    n = len(arr)
    counts = np.zeros(code.m + 1, dtype=np.int64)
    step = max(1, (1 << 21) // n)
    for lo in range(0, n, step):
        d = np.bitwise_count(arr[lo : lo + step, None] ^ arr[None, :])
        counts += np.bincount(d.ravel(), minlength=code.m + 1)
    pair_counts = tuple(int(c) for c in counts)
    a = tuple(Fraction(c, n) for c in pair_counts)
    return DistanceDistribution(m=code.m, size=n, pair_counts=pair_counts, a=a)


def macwilliams_transform(dist: DistanceDistribution) -> tuple[Fraction, ...]:
    """Krawtchouk transform of the normalized distance distribution."""
    kt = krawtchouk_table(dist.m)
    return tuple(
        sum((ai * kt(k, i) for i, ai in enumerate(dist.a)), start=Fraction(0))
        for k in range(dist.m + 1)
    )


@dataclass(frozen=True)
class DistancePartition:
    """Distance-to-code for every vertex, with covering radius and cells."""

    m: int
    dist_to_code: np.ndarray  # uint8, length 2^m, read-only
    rho: int
    cell_sizes: tuple[int, ...]

    def cell(self, i: int) -> np.ndarray:
        return np.nonzero(self.dist_to_code == i)[0]


def distance_partition(code: Code) -> DistancePartition:
    """Exact d(v, C) for all 2^m vertices.

    Separable distance transform over the hypercube: one min-plus sweep
    per coordinate axis propagates distances exactly, so the cost is
    m * 2^m regardless of |C|.
    """
    m = code.m
    dist = np.full(1 << m, INF_DIST, dtype=np.uint8)
    dist[code.words_u32()] = 0
    for j in range(m):
        d = dist.reshape(-1, 2, 1 << j)
        np.minimum(d[:, 0, :], d[:, 1, :] + 1, out=d[:, 0, :])
        np.minimum(d[:, 1, :], d[:, 0, :] + 1, out=d[:, 1, :])
    rho = int(dist.max())
    sizes = np.bincount(dist, minlength=rho + 1)
    dist.setflags(write=False)
    return DistancePartition(
        m=m, dist_to_code=dist, rho=rho,
        cell_sizes=tuple(int(s) for s in sizes),
    )


@dataclass(frozen=True)
class IntersectionTable:
    """Codewords-at-distance-k counts per distance-partition cell.

    Entry (i, k) is the number of codewords at distance k from any vertex
    of cell i; it exists exactly when the code is completely regular.
    """

    m: int
    rho: int
    size: int
    rows: tuple[tuple[int, ...], ...]

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.rows)


@dataclass(frozen=True)
class RegularityWitness:
    cell: int
    vertex_a: int
    vertex_b: int
    profile_a: tuple[int, ...]
    profile_b: tuple[int, ...]


@dataclass(frozen=True)
class CompleteRegularityResult:
    ok: bool
    table: IntersectionTable | None
    witness: RegularityWitness | None


def completely_regular_check(code: Code) -> CompleteRegularityResult:
    """Decide complete regularity, returning the table or a witness pair.

    Nonlinear codes get a full vertex scan (profile of every vertex against
    every codeword).  Linear codes with a vertex space too large for that
    are handled through their cosets: profile and cell are constant on each
    coset, so one representative per coset suffices.
    """
    if (1 << code.m) * code.size > (1 << 25) and is_linear(code):
        return _cr_check_linear(code)
    return _cr_check_dense(code)


def _cr_check_dense(code: Code) -> CompleteRegularityResult:
    m = code.m
    n = 1 << m
    verts = all_vertices(m)
    counts = np.zeros((n, m + 1), dtype=np.uint16)
    rows = np.arange(n)
    for w in code.words:
        counts[rows, np.bitwise_count(verts ^ np.uint32(w))] += 1
    partition = distance_partition(code)
    table_rows = []
    for i in range(partition.rho + 1):
        cell = partition.cell(i)
        sub = counts[cell]
        mismatch = (sub != sub[0]).any(axis=1)
        if mismatch.any():
            b = int(np.argmax(mismatch))
            return CompleteRegularityResult(
                ok=False, table=None,
                witness=RegularityWitness(
                    cell=i,
                    vertex_a=int(cell[0]),
                    vertex_b=int(cell[b]),
                    profile_a=tuple(int(x) for x in sub[0]),
                    profile_b=tuple(int(x) for x in sub[b]),
                ),
            )
        table_rows.append(tuple(int(x) for x in sub[0]))
    table = IntersectionTable(
        m=m, rho=partition.rho, size=code.size, rows=tuple(table_rows)
    )
    return CompleteRegularityResult(ok=True, table=table, witness=None)


def _cr_check_linear(code: Code) -> CompleteRegularityResult:
    """Coset route: one profile per coset of the code in its vertex space."""
    m = code.m
    basis = linear_basis(code)
    pivots = [b.bit_length() - 1 for b in basis]
    free = [q for q in range(m) if q not in set(pivots)]
    arr = code.words_u32()
    reps_by_minwt: dict[int, tuple[int, tuple[int, ...]]] = {}
    rows_by_minwt: dict[int, tuple[int, ...]] = {}
    for cid in range(1 << len(free)):
        rep = 0
        for t, q in enumerate(free):
            rep |= ((cid >> t) & 1) << q
        d = np.bitwise_count(np.uint32(rep) ^ arr)
        profile = tuple(int(x) for x in np.bincount(d, minlength=m + 1))
        minwt = int(d.min())
        if minwt not in rows_by_minwt:
            rows_by_minwt[minwt] = profile
            reps_by_minwt[minwt] = (rep, profile)
        elif rows_by_minwt[minwt] != profile:
            first_rep, first_profile = reps_by_minwt[minwt]
            return CompleteRegularityResult(
                ok=False, table=None,
                witness=RegularityWitness(
                    cell=minwt, vertex_a=first_rep, vertex_b=rep,
                    profile_a=first_profile, profile_b=profile,
                ),
            )
    rho = max(rows_by_minwt)
    table = IntersectionTable(
        m=m, rho=rho, size=code.size,
        rows=tuple(rows_by_minwt[i] for i in range(rho + 1)),
    )
    return CompleteRegularityResult(ok=True, table=table, witness=None)


# ---------------------------------------------------------------------------
# Combinatorial designs over weight classes.

@dataclass(frozen=True)
class DesignCheckResult:
    ok: bool
    lam: int | None
    witness: tuple[int, int] | None  # (weight-t vertex, deviating count)


def design_check(words: Code, t: int) -> DesignCheckResult:
    """Does every weight-t vertex sit under exactly lambda of the words?"""
    weights = {w.bit_count() for w in words.words}
    if len(weights) != 1:
        raise ValueError(f"design words must share one weight, got {sorted(weights)}")
    k = weights.pop()
    if not 0 <= t <= k:
        raise ValueError(f"design strength t={t} outside [0, {k}]")
    lam = None
    for nu in weight_masks(words.m, t):
        count = sum(1 for w in words.words if nu & w == nu)
        if lam is None:
            lam = count
        elif count != lam:
            return DesignCheckResult(ok=False, lam=None, witness=(nu, count))
    return DesignCheckResult(ok=True, lam=lam, witness=None)


@dataclass(frozen=True)
class DesignParams:
    """Derived parameters of a t-(m, k, lam) design, exact."""

    t: int
    m: int
    k: int
    lam: int
    lambdas: tuple[Fraction, ...]  # lambda_i for i = 0..t
    b: Fraction
    integral: tuple[bool, ...]
    b_integral: bool


def design_arithmetic(t: int, m: int, k: int, lam: int) -> DesignParams:
    if not 0 <= t <= k <= m:
        raise ValueError(f"need 0 <= t <= k <= m, got t={t}, k={k}, m={m}")
    if lam < 1:
        raise ValueError("lambda must be a positive integer")
    lambdas = tuple(
        Fraction(lam * math.comb(m - i, t - i), math.comb(k - i, t - i))
        for i in range(t + 1)
    )
    b = lambdas[0]
    integral = tuple(x.denominator == 1 for x in lambdas)
    return DesignParams(
        t=t, m=m, k=k, lam=lam,
        lambdas=lambdas, b=b, integral=integral,
        b_integral=b.denominator == 1,
    )


def lambda_upper_bound(m: int, t: int, delta: int) -> Fraction:
    """Packing bound on lambda for weight-delta words meeting in a t-set."""
    if delta <= t:
        raise ValueError(f"bound requires delta > t, got delta={delta}, t={t}")
    return Fraction(m - t, delta - t)


# ---------------------------------------------------------------------------
# Feasibility of partially specified distance distributions.

@dataclass(frozen=True)
class ConstraintRow:
    """One transform-nonnegativity row: const + sum(coeff * var) >= 0."""

    k: int
    const: int
    coeffs: tuple[int, ...]

    def render(self, names: tuple[str, ...]) -> str:
        parts = [str(self.const)]
        for c, name in zip(self.coeffs, names):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            parts.append(f"{sign} {abs(c)}*{name}")
        return " ".join(parts) + " >= 0"


@dataclass(frozen=True)
class FeasibilityResult:
    m: int
    variables: tuple[tuple[int, ...], ...]  # slot groups tied to one unknown
    names: tuple[str, ...]
    rows: tuple[ConstraintRow, ...]
    bounds: tuple[tuple[int, int], ...]
    solutions: tuple[dict[int, int], ...]  # slot -> value, all unknown slots
    distributions: tuple[tuple[int, ...], ...]  # full (m+1)-tuples


def feasible_distributions(
    m: int, template, antipodal: bool = False
) -> FeasibilityResult:
    """All nonnegative integer completions passing transform nonnegativity.

    `template` is an (m+1)-sequence of fixed ints or None for unknown
    slots.  With `antipodal`, slots i and m-i are tied to one unknown.
    Bounds on each unknown are derived from the constraint rows themselves
    by interval propagation; a system leaving any unknown unbounded is an
    error.
    """
    template = list(template)
    if len(template) != m + 1:
        raise ValueError(f"template must have {m + 1} entries")
    if template[0] != 1:
        raise ValueError("template must fix the zero-distance entry to 1")
    fixed: dict[int, int] = {}
    groups: list[tuple[int, ...]] = []
    if antipodal:
        for i in range(0, m // 2 + 1):
            j = m - i
            lo_v, hi_v = template[i], template[j]
            if lo_v is not None and hi_v is not None and lo_v != hi_v:
                raise ValueError(f"entries {i} and {j} contradict the symmetry tie")
            value = lo_v if lo_v is not None else hi_v
            slots = (i,) if i == j else (i, j)
            if value is None:
                groups.append(slots)
            else:
                for s in slots:
                    fixed[s] = value
    else:
        for i, value in enumerate(template):
            if value is None:
                groups.append((i,))
            else:
                fixed[i] = value
    variables = tuple(groups)
    names = tuple(f"a{g[0]}" for g in variables)

    kt = krawtchouk_table(m)
    rows = []
    for k in range(m + 1):
        const = sum(v * kt(k, i) for i, v in fixed.items())
        coeffs = tuple(sum(kt(k, i) for i in g) for g in variables)
        rows.append(ConstraintRow(k=k, const=const, coeffs=coeffs))
    rows = tuple(rows)

    bounds = _propagate_bounds(rows, len(variables))
    lo = [b[0] for b in bounds]
    hi = [b[1] for b in bounds]
    solutions = []
    distributions = []
    if all(l <= h for l, h in zip(lo, hi)):
        ranges = [range(l, h + 1) for l, h in zip(lo, hi)]
        for point in itertools.product(*ranges):
            if all(
                row.const + sum(c * x for c, x in zip(row.coeffs, point)) >= 0
                for row in rows
            ):
                assignment = {
                    s: x for g, x in zip(variables, point) for s in g
                }
                solutions.append(assignment)
                full = list(template)
                if antipodal:
                    for i, v in fixed.items():
                        full[i] = v
                for s, x in assignment.items():
                    full[s] = x
                distributions.append(tuple(full))
    return FeasibilityResult(
        m=m, variables=variables, names=names, rows=rows,
        bounds=tuple(zip(lo, hi)),
        solutions=tuple(solutions), distributions=tuple(distributions),
    )


def _propagate_bounds(
    rows: tuple[ConstraintRow, ...], nvars: int
) -> list[tuple[int, int | None]]:
    """Interval propagation to a fixed point; raises if any variable stays
    unbounded above."""
    lo = [0] * nvars
    hi: list[int | None] = [None] * nvars

    def crossed() -> bool:
        # lo > hi is a sound proof of infeasibility; stop tightening there
        return any(
            hi[v] is not None and lo[v] > hi[v] for v in range(nvars)
        )

    for _ in range(200):
        if crossed():
            break
        changed = False
        for row in rows:
            for v in range(nvars):
                gv = row.coeffs[v]
                if gv == 0:
                    continue
                others = 0
                bounded = True
                for u in range(nvars):
                    if u == v:
                        continue
                    gu = row.coeffs[u]
                    if gu > 0:
                        if hi[u] is None:
                            bounded = False
                            break
                        others += gu * hi[u]
                    elif gu < 0:
                        others += gu * lo[u]
                if not bounded:
                    continue
                if gv < 0:
                    new_hi = (row.const + others) // (-gv)
                    if hi[v] is None or new_hi < hi[v]:
                        hi[v] = new_hi
                        changed = True
                else:
                    new_lo = -((row.const + others) // gv)
                    if new_lo > lo[v]:
                        lo[v] = new_lo
                        changed = True
        if not changed:
            break
    if crossed():
        return [(1, 0)] * nvars
    unbounded = [v for v in range(nvars) if hi[v] is None]
    if unbounded:
        raise FeasibilityError(
            f"no constraint row bounds unknown(s) {unbounded} from above"
        )
    return [(lo[v], hi[v]) for v in range(nvars)]
