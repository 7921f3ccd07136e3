"""Independent brute-force oracles.

Everything here recomputes quantities straight from the definitions,
deliberately avoiding the code paths it is used to check: regularity by a
double loop over vertices and spheres, automorphism groups by iterating
all m! permutations, group orders by multiplicative closure.
"""

import itertools

from nrcodes.codes import Code
from nrcodes.hamming import sphere
from nrcodes.symmetry import permute_bits


def brute_sphere(center: int, k: int, m: int) -> list[int]:
    return [v for v in range(1 << m) if (v ^ center).bit_count() == k]


def brute_regularity(code: Code):
    """(is_completely_regular, rows or witness) by definition."""
    m = code.m
    by_cell: dict[int, dict[tuple, int]] = {}
    for v in range(1 << m):
        d = min((v ^ w).bit_count() for w in code.words)
        profile = tuple(
            sum(1 for u in sphere(v, k, m) if u in code) for k in range(m + 1)
        )
        by_cell.setdefault(d, {}).setdefault(profile, v)
    if all(len(profiles) == 1 for profiles in by_cell.values()):
        rows = tuple(
            next(iter(by_cell[i])) for i in sorted(by_cell)
        )
        return True, rows
    bad = next(i for i in sorted(by_cell) if len(by_cell[i]) > 1)
    return False, sorted(by_cell[bad].values())[:2]


def brute_perm_automorphisms(code: Code) -> list[tuple[int, ...]]:
    out = []
    for p in itertools.permutations(range(code.m)):
        if all(permute_bits(w, p) in code for w in code.words):
            out.append(p)
    return out


def mulclose_order(gens, n: int) -> int:
    """Order of the generated permutation group by plain closure."""
    seen = {tuple(range(n))}
    seen.update(tuple(g) for g in gens)
    frontier = list(seen)
    while frontier:
        fresh = []
        for p in frontier:
            for q in list(seen):
                r = tuple(q[p[i]] for i in range(n))
                if r not in seen:
                    seen.add(r)
                    fresh.append(r)
        frontier = fresh
    return len(seen)
