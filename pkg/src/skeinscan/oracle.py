"""Independent brute-force evaluators used as ground truth at small sizes.

Each crossing is smoothed both ways; a state is a choice over all crossings
(2^n of them).  Loops in a smoothed state are counted by union-find over arc
labels, with no geometry and no shared machinery with the scanning engine.
The A-smoothing of a crossing joins each over-strand end to the arc one slot
clockwise of it (the same global convention the engine's tests pin down via
the kink and R2 identities).
"""

from __future__ import annotations

from .laurent import LaurentPoly, ONE
from .matchings import Matching, is_noncrossing
from .planar import Diagram
from .skein import BRACKET, LOOP_VALUES

BRACKET_CAP = 22
TANGLE_CAP_N = 18
TANGLE_CAP_G = 12


class TooLarge(ValueError):
    """Raised when a diagram exceeds the brute-force size caps."""


def _loop_powers(mode: str, top: int) -> list[LaurentPoly]:
    powers = [ONE]
    for _ in range(top):
        powers.append(powers[-1] * LOOP_VALUES[mode])
    return powers


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


def _smoothing_joins(crossing, choice: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Arc pairs joined by the chosen smoothing (0 = A, 1 = B).

    The A-smoothing connects each over end to its clockwise neighbor slot:
    over strand through slots (p, p+2) gives pairs (p-1, p) and (p+1, p+2).
    """
    a = crossing.arcs
    p = crossing.over
    if choice == 0:
        s = p
    else:
        s = p + 1
    return ((a[(s - 1) % 4], a[s % 4]), (a[(s + 1) % 4], a[(s + 2) % 4]))


def brute_force_bracket(d: Diagram, mode: str = BRACKET) -> LaurentPoly:
    """Normalized state sum: sum over assignments of A^(#A - #B) * delta^(loops-1).

    The unknot maps to 1.  Hard-capped at 22 crossings; the enumeration is
    exponential by construction.
    """
    n = d.n
    if not d.is_closed:
        raise ValueError("brute_force_bracket needs a closed diagram")
    if n > BRACKET_CAP:
        raise TooLarge(f"{n} crossings exceeds the brute-force cap {BRACKET_CAP}")
    if n == 0 and d.free_loops == 0:
        raise ValueError("empty diagram has no components")

    arcs = sorted({a for c in d.crossings for a in c.arcs})
    # aggregate counts per (exponent of A, loop count); expand at the end
    agg: dict[tuple[int, int], int] = {}
    max_loops = 0
    for mask in range(1 << n):
        uf = _UnionFind(arcs)
        b_count = 0
        for ci, c in enumerate(d.crossings):
            choice = (mask >> ci) & 1
            b_count += choice
            (x1, y1), (x2, y2) = _smoothing_joins(c, choice)
            uf.union(x1, y1)
            uf.union(x2, y2)
        loops = len({uf.find(a) for a in arcs}) + d.free_loops
        key = (n - 2 * b_count, loops)
        agg[key] = agg.get(key, 0) + 1
        max_loops = max(max_loops, loops)

    powers = _loop_powers(mode, max_loops)
    total = LaurentPoly.zero()
    for (exp, loops), count in sorted(agg.items()):
        total = total + powers[loops - 1].shifted(exp).scaled(count)
    return total


def brute_force_tangle_expansion(d: Diagram, mode: str = BRACKET) -> dict[Matching, LaurentPoly]:
    """State sum of a tangle: every assignment leaves a planar matching of the
    boundary points plus closed loops; accumulate A^(#A - #B) * delta^loops
    onto that matching."""
    n, g = d.n, d.g
    if g == 0:
        raise ValueError("tangle expansion needs boundary points")
    if n > TANGLE_CAP_N or g > TANGLE_CAP_G:
        raise TooLarge(f"n={n}, g={g} exceeds caps ({TANGLE_CAP_N}, {TANGLE_CAP_G})")

    arcs = sorted({a for c in d.crossings for a in c.arcs} | set(d.boundary_arcs))
    agg: dict[Matching, dict[tuple[int, int], int]] = {}
    max_loops = 0
    for mask in range(1 << n):
        uf = _UnionFind(arcs)
        b_count = 0
        for ci, c in enumerate(d.crossings):
            choice = (mask >> ci) & 1
            b_count += choice
            (x1, y1), (x2, y2) = _smoothing_joins(c, choice)
            uf.union(x1, y1)
            uf.union(x2, y2)
        # boundary matching: positions joined iff their arcs are connected
        roots = [uf.find(a) for a in d.boundary_arcs]
        pair_of = [-1] * g
        for i in range(g):
            if pair_of[i] != -1:
                continue
            partner = [j for j in range(g) if j != i and roots[j] == roots[i]]
            if len(partner) != 1:
                raise ValueError(
                    f"state {mask:b}: boundary point {i} connects to {len(partner)} others"
                )
            j = partner[0]
            pair_of[i], pair_of[j] = j, i
        matching = tuple(pair_of)
        if not is_noncrossing(matching):
            raise ValueError(f"state {mask:b} produced a crossing matching {matching}")
        bdy_roots = set(roots)
        loops = len({uf.find(a) for a in arcs} - bdy_roots) + d.free_loops
        key = (n - 2 * b_count, loops)
        bucket = agg.setdefault(matching, {})
        bucket[key] = bucket.get(key, 0) + 1
        max_loops = max(max_loops, loops)

    powers = _loop_powers(mode, max_loops)
    out: dict[Matching, LaurentPoly] = {}
    for matching, bucket in agg.items():
        total = LaurentPoly.zero()
        for (exp, loops), count in sorted(bucket.items()):
            total = total + powers[loops].shifted(exp).scaled(count)
        if not total.is_zero():
            out[matching] = total
    return out
