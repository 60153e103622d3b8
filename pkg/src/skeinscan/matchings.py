"""Noncrossing perfect matchings of g circularly ordered points.

These are the basis objects of the state space: a matching stands for the
crossingless, loopless way the scanned part of a diagram can connect its
frontier points.  There are Catalan(g/2) of them; each is represented by its
involution array ``pair_of`` where ``pair_of[i] == j`` iff i and j are joined.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

Matching = tuple[int, ...]


class OddBoundary(ValueError):
    """Raised when a matching is requested on an odd number of points."""


class SizeMismatch(ValueError):
    """Raised when two matchings on different point counts are combined."""


def catalan(m: int) -> int:
    """The m-th Catalan number, (1/(m+1)) * C(2m, m), exactly."""
    if m < 0:
        raise ValueError("catalan of negative index")
    return comb(2 * m, m) // (m + 1)


def is_noncrossing(pair_of: Matching) -> bool:
    """Check that pair_of is a fixed-point-free involution with no pair of
    chords (i,k), (j,l) interleaved as i<j<k<l."""
    g = len(pair_of)
    for i, j in enumerate(pair_of):
        if not 0 <= j < g or j == i or pair_of[j] != i:
            return False
    stack: list[int] = []
    for i in range(g):
        if pair_of[i] > i:
            stack.append(i)
        else:
            if not stack or stack[-1] != pair_of[i]:
                return False
            stack.pop()
    return True


@lru_cache(maxsize=None)
def noncrossing_matchings(g: int) -> tuple[Matching, ...]:
    """All noncrossing perfect matchings on g points, in lexicographic order
    of their pair_of arrays.  This order is the canonical basis order."""
    if g % 2:
        raise OddBoundary(f"no perfect matching on {g} points")
    if g == 0:
        return ((),)

    def build(points: tuple[int, ...]):
        if not points:
            yield {}
            return
        first = points[0]
        for idx in range(1, len(points), 2):
            inside = points[1:idx]
            outside = points[idx + 1:]
            partner = points[idx]
            for left in build(inside):
                for right in build(outside):
                    pairing = {first: partner, partner: first}
                    pairing.update(left)
                    pairing.update(right)
                    yield pairing

    out = []
    for pairing in build(tuple(range(g))):
        out.append(tuple(pairing[i] for i in range(g)))
    out.sort()
    return tuple(out)


def enumerate_matchings(g: int) -> list[Matching]:
    return list(noncrossing_matchings(g))


class Basis:
    """Interning table for the matchings on g points.

    Maps each matching to its dense rank in the canonical enumeration so
    state maps can be keyed by small integers.
    """

    __slots__ = ("g", "matchings", "_index")

    def __init__(self, g: int):
        self.g = g
        self.matchings = noncrossing_matchings(g)
        self._index = {m: i for i, m in enumerate(self.matchings)}

    def __len__(self) -> int:
        return len(self.matchings)

    def index_of(self, m: Matching) -> int:
        return self._index[m]

    def matching(self, idx: int) -> Matching:
        return self.matchings[idx]


@lru_cache(maxsize=None)
def basis(g: int) -> Basis:
    return Basis(g)


def glue_loop_count(b: Matching, b2: Matching) -> int:
    """Number of closed loops formed by closing b against the mirror of b2.

    Follow the two involutions alternately from every point; each cycle is
    one loop.  Equal matchings give g/2 loops, the maximum; g = 0 gives 0.
    """
    if len(b) != len(b2):
        raise SizeMismatch(f"matchings on {len(b)} and {len(b2)} points")
    g = len(b)
    seen = [False] * g
    loops = 0
    for start in range(g):
        if seen[start]:
            continue
        loops += 1
        p = start
        while not seen[p]:
            seen[p] = True
            q = b[p]
            seen[q] = True
            p = b2[q]
    return loops


def format_matching(m: Matching) -> str:
    """Render as parenthesized pairs, e.g. ``(0 1)(2 3)``; empty is ``()``."""
    if not m:
        return "()"
    return "".join(f"({i} {j})" for i, j in enumerate(m) if i < j)


def parse_matching(text: str) -> Matching:
    text = text.strip()
    if text in ("()", ""):
        return ()
    pairs = []
    for chunk in text.replace(")(", ")|(").split("|"):
        chunk = chunk.strip()
        if not (chunk.startswith("(") and chunk.endswith(")")):
            raise ValueError(f"bad matching chunk {chunk!r}")
        i, j = chunk[1:-1].split()
        pairs.append((int(i), int(j)))
    g = 2 * len(pairs)
    pair_of = [-1] * g
    for i, j in pairs:
        if not (0 <= i < g and 0 <= j < g) or pair_of[i] != -1 or pair_of[j] != -1:
            raise ValueError(f"invalid pairing in {text!r}")
        pair_of[i], pair_of[j] = j, i
    m = tuple(pair_of)
    if not is_noncrossing(m):
        raise ValueError(f"{text!r} is not a noncrossing matching")
    return m
