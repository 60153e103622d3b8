"""Programmatic diagram builders: braid closures and tangles, torus links,
pretzels, twist insertions, and split unions.

These produce PD data from first principles, so a diagram's description is
its construction.  Conventions for a braid crossing on strand positions
(p, p+1), drawn with strands running upward:

    slot 0 = bottom-left   slot 1 = bottom-right
    slot 2 = top-right     slot 3 = top-left

listed counterclockwise.  A positive generator (sigma_p) takes the strand
entering bottom-left over to top-right, so the over strand runs through
slots (0, 2).
"""

from __future__ import annotations

from .planar import Crossing, Diagram, validate


class _ArcAllocator:
    def __init__(self, start: int = 1):
        self.next = start

    def take(self) -> int:
        a = self.next
        self.next += 1
        return a


def _braid_crossings(word: list[int], strands: int, alloc: _ArcAllocator):
    """Crossings for a braid word; returns (crossings, bottom arcs, top arcs)."""
    if strands < 2:
        raise ValueError("a braid needs at least 2 strands")
    bottom = [alloc.take() for _ in range(strands)]
    current = list(bottom)
    crossings: list[Crossing] = []
    for letter in word:
        p = abs(letter) - 1
        if not 0 <= p < strands - 1:
            raise ValueError(f"generator {letter} out of range for {strands} strands")
        bl, br = current[p], current[p + 1]
        tl, tr = alloc.take(), alloc.take()
        # counterclockwise: bottom-left, bottom-right, top-right, top-left
        over = 0 if letter > 0 else 1
        crossings.append(Crossing((bl, br, tr, tl), over))
        current[p], current[p + 1] = tl, tr
    return crossings, bottom, current


def _relabel(crossings, mapping):
    return [Crossing(tuple(mapping.get(a, a) for a in c.arcs), c.over) for c in crossings]


def braid_closure(word: list[int], strands: int) -> Diagram:
    """Trace closure of a braid word (generators 1..strands-1, sign = handedness).
    Strands untouched by the word close into free loops."""
    alloc = _ArcAllocator()
    crossings, bottom, top = _braid_crossings(word, strands, alloc)
    free = 0
    mapping: dict[int, int] = {}
    for b, t in zip(bottom, top):
        if b == t:
            free += 1  # strand with no crossings closes into a circle
        else:
            mapping[t] = b
    # a top arc may itself be a bottom arc of the same strand chain; resolve
    def resolve(a: int) -> int:
        while a in mapping:
            a = mapping[a]
        return a

    mapping = {t: resolve(t) for t in mapping}
    crossings = _relabel(crossings, mapping)
    d = Diagram(tuple(crossings), free_loops=free)
    validate(d)
    return d


def braid_tangle(word: list[int], strands: int) -> Diagram:
    """A braid as a tangle: boundary runs counterclockwise along the bottom
    (left to right) and back along the top (right to left)."""
    alloc = _ArcAllocator()
    crossings, bottom, top = _braid_crossings(word, strands, alloc)
    boundary = tuple(bottom) + tuple(reversed(top))
    d = Diagram(tuple(crossings), boundary_arcs=boundary)
    validate(d)
    return d


def torus_link(k: int) -> Diagram:
    """The (2, k) torus link: closure of k positive half-twists on 2 strands."""
    if k < 1:
        raise ValueError("need at least one crossing")
    return braid_closure([1] * k, 2)


def twist_region_tangle(k: int) -> Diagram:
    """k half-twists on two strands, as a 4-point tangle."""
    return braid_tangle([1] * k, 2)


def pretzel(signs: list[int]) -> Diagram:
    """Pretzel link P(p1, p2, ...): vertical twist regions of |p_i| crossings
    side by side, joined along the top and bottom; the sign of p_i picks the
    handedness of its region."""
    if len(signs) < 1 or any(p == 0 for p in signs):
        raise ValueError("pretzel parameters must be nonzero")
    alloc = _ArcAllocator()
    crossings: list[Crossing] = []
    lefts: list[tuple[int, int]] = []  # (bottom, top) of each region's left strand
    rights: list[tuple[int, int]] = []
    for p in signs:
        word = [1] * abs(p) if p > 0 else [-1] * abs(p)
        cs, bottom, top = _braid_crossings(word, 2, alloc)
        crossings.extend(cs)
        lefts.append((bottom[0], top[0]))
        rights.append((bottom[1], top[1]))
    mapping: dict[int, int] = {}

    def merge(a: int, b: int) -> None:
        # identify label b with a
        ra, rb = a, b
        while ra in mapping:
            ra = mapping[ra]
        while rb in mapping:
            rb = mapping[rb]
        if ra != rb:
            mapping[rb] = ra

    m = len(signs)
    for i in range(m):
        j = (i + 1) % m
        merge(rights[i][1], lefts[j][1])  # tops: right of region i to left of region i+1
        merge(rights[i][0], lefts[j][0])  # bottoms likewise
    flat = {}
    for a in list(mapping):
        r = a
        while r in mapping:
            r = mapping[r]
        flat[a] = r
    crossings = _relabel(crossings, flat)
    d = Diagram(tuple(crossings))
    validate(d)
    return d


def add_kink(d: Diagram, arc: int, positive: bool = True) -> Diagram:
    """Insert a curl on the given arc (a first Reidemeister move).  A positive
    kink multiplies the bracket by -A^3 and raises the writhe by one."""
    labels = {a for c in d.crossings for a in c.arcs} | set(d.boundary_arcs)
    fresh = max(labels) + 1
    loop_arc, far_arc = fresh, fresh + 1
    replaced = False
    crossings = []
    for c in d.crossings:
        if not replaced and arc in c.arcs:
            new_arcs = []
            for a in c.arcs:
                if a == arc and not replaced:
                    new_arcs.append(far_arc)
                    replaced = True
                else:
                    new_arcs.append(a)
            crossings.append(Crossing(tuple(new_arcs), c.over))
        else:
            crossings.append(c)
    boundary = list(d.boundary_arcs)
    if not replaced:
        if arc not in boundary:
            raise ValueError(f"arc {arc} not in the diagram")
        boundary[boundary.index(arc)] = far_arc
        replaced = True
    # kink crossing: strand comes in (arc), loops (loop_arc), leaves (far_arc);
    # over flag picks the handedness
    over = 0 if positive else 1
    crossings.append(Crossing((arc, loop_arc, loop_arc, far_arc), over))
    out = Diagram(tuple(crossings), d.free_loops, tuple(boundary))
    validate(out)
    return out


def disjoint_union(d1: Diagram, d2: Diagram) -> Diagram:
    """Place two closed diagrams side by side."""
    if not (d1.is_closed and d2.is_closed):
        raise ValueError("disjoint union of tangles is not supported")
    shift = max([a for c in d1.crossings for a in c.arcs], default=0)
    crossings = list(d1.crossings) + [
        Crossing(tuple(a + shift for a in c.arcs), c.over) for c in d2.crossings
    ]
    d = Diagram(tuple(crossings), d1.free_loops + d2.free_loops)
    validate(d)
    return d


def connected_sum(d1: Diagram, d2: Diagram, arc1: int | None = None, arc2: int | None = None) -> Diagram:
    """Connected sum of two closed diagrams: cut one arc of each and splice.

    The spliced arcs default to each diagram's lowest label.  Both inputs
    must have at least one crossing.
    """
    if not (d1.is_closed and d2.is_closed) or not (d1.n and d2.n):
        raise ValueError("connected sum needs two closed diagrams with crossings")
    a1 = arc1 if arc1 is not None else min(a for c in d1.crossings for a in c.arcs)
    a2 = arc2 if arc2 is not None else min(a for c in d2.crossings for a in c.arcs)
    shift = max(a for c in d1.crossings for a in c.arcs)
    fresh = shift + max(a for c in d2.crossings for a in c.arcs) + 1
    crossings = []
    # cut arc a1 into (a1, fresh); cut shifted a2 into (a2', fresh): splice
    # a1 -> a2' and fresh -> fresh, giving one strand through both diagrams
    seen1 = False
    for c in d1.crossings:
        arcs = []
        for a in c.arcs:
            if a == a1 and seen1:
                arcs.append(fresh)
            else:
                if a == a1:
                    seen1 = True
                arcs.append(a)
        crossings.append(Crossing(tuple(arcs), c.over))
    seen2 = False
    a2s = a2 + shift
    for c in d2.crossings:
        arcs = []
        for a in c.arcs:
            aa = a + shift
            if aa == a2s and seen2:
                arcs.append(a1)
            else:
                if aa == a2s:
                    seen2 = True
                    aa = fresh
                arcs.append(aa)
        crossings.append(Crossing(tuple(arcs), c.over))
    d = Diagram(tuple(crossings), d1.free_loops + d2.free_loops)
    validate(d)
    return d
