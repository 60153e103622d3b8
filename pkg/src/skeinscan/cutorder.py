"""Build cuttings: orderings of elementary events that keep the scanned
region a disk while minimizing the peak frontier size (girth).

A cutting processes the diagram one crossing at a time.  Gluing a crossing
absorbs a contiguous run of frontier tokens (the arcs joining it to the
scanned region) and emits its remaining arcs as new tokens; completed arcs
whose two stubs become adjacent are capped immediately; crossingless circles
are a birth/cap pair.  The searches cover exactly the disk gluings that
absorb one contiguous token run per step (a crossing whose frontier arcs sit
in several separated runs can be glued along one run, leaving the other arcs
as stubs to cap later).

The frontier is a circular token list.  Events that would wrap the seam
between positions g-1 and 0 first rotate the labelling so their run starts
at 0; the state machine applies the same rule, keeping both sides aligned.
"""

from __future__ import annotations

import heapq
import json
import math
import random
from dataclasses import dataclass

from .planar import Diagram
from .skein import Birth, Cap, Cross, Event

# Cutwidth of a 4-valent planar graph is at most this constant times sqrt(n).
SQRT_BOUND_CONST = 6 * math.sqrt(2) + 5 * math.sqrt(3)

DEFAULT_EXACT_CAP = 20


class TooLarge(ValueError):
    """Raised when the exact search is asked for more crossings than its cap."""


class InvalidOrder(ValueError):
    """Raised when a crossing order cannot be realized as a disk scan."""


class InvalidCutting(ValueError):
    """Raised when an explicit cutting does not replay to the diagram."""


@dataclass
class Cutting:
    events: list[Event]
    girth: int
    source_order: list[int]
    final_rotation: int = 0

    def to_json(self) -> dict:
        evs = []
        for ev in self.events:
            if isinstance(ev, Birth):
                evs.append({"type": "birth", "at": ev.at})
            elif isinstance(ev, Cap):
                evs.append({"type": "cap", "at": ev.at})
            else:
                evs.append({
                    "type": "cross", "at": ev.at, "absorb": ev.absorb,
                    "over_first": ev.over_first, "crossing": ev.crossing,
                    "rot": ev.rot,
                })
        return {
            "girth": self.girth,
            "source_order": list(self.source_order),
            "final_rotation": self.final_rotation,
            "events": evs,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Cutting":
        events: list[Event] = []
        for ev in data["events"]:
            if ev["type"] == "birth":
                events.append(Birth(ev["at"]))
            elif ev["type"] == "cap":
                events.append(Cap(ev["at"]))
            elif ev["type"] == "cross":
                events.append(Cross(ev["at"], ev["absorb"], ev["over_first"],
                                    ev.get("crossing"), ev.get("rot")))
            else:
                raise InvalidCutting(f"unknown event type {ev['type']!r}")
        return cls(events, data["girth"], list(data["source_order"]),
                   data.get("final_rotation", 0))


# ---------------------------------------------------------------------------
# Scan simulation
# ---------------------------------------------------------------------------


def _cyclically_sorted(seq: list[int]) -> bool:
    """True when seq is a rotation of its sorted self (no duplicates)."""
    n = len(seq)
    if n <= 1:
        return True
    if len(set(seq)) != n:
        return False
    lo = seq.index(min(seq))
    rotated = seq[lo:] + seq[:lo]
    return all(rotated[i] < rotated[i + 1] for i in range(n - 1))


class _Scan:
    """Frontier-token simulation shared by the compiler and the searches."""

    def __init__(self, d: Diagram):
        self.d = d
        self.frontier: list[int] = []        # arc label per frontier position
        self.targets: list[int | None] = []  # declared boundary position, if any
        self.events: list[Event] = []
        self.processed: set[int] = set()
        self.girth = 0
        # arc -> crossing slots it meets
        self.arc_slots: dict[int, list[tuple[int, int]]] = {}
        for ci, c in enumerate(d.crossings):
            for s, a in enumerate(c.arcs):
                self.arc_slots.setdefault(a, []).append((ci, s))
        self.bdy = set(d.boundary_arcs)
        from .planar import _crossing_pieces
        self.piece = _crossing_pieces(d)
        self.piece_members: dict[int, list[int]] = {}
        for ci, p in enumerate(self.piece):
            self.piece_members.setdefault(p, []).append(ci)
        self.piece_on_boundary: set[int] = {
            self.piece[ci] for ci, c in enumerate(d.crossings)
            if any(a in self.bdy for a in c.arcs)
        }
        self.started_pieces: set[int] = set()
        self.fresh_starts: list[int] = []  # boundary pieces begun with k = 0
        self.rot_pref: dict[int, int] = {}
        self.start_pref: dict[int, int] = {}
        # target position of each crossing-attached boundary arc (unique)
        self.target_index: dict[int, int] = {}
        for i, a in enumerate(d.boundary_arcs):
            if a in self.arc_slots:
                self.target_index[a] = i

    # -- bookkeeping --------------------------------------------------------

    def clone(self) -> "_Scan":
        other = _Scan.__new__(_Scan)
        other.d = self.d
        other.frontier = list(self.frontier)
        other.targets = list(self.targets)
        other.events = list(self.events)
        other.processed = set(self.processed)
        other.girth = self.girth
        other.arc_slots = self.arc_slots
        other.bdy = self.bdy
        other.piece = self.piece
        other.piece_members = self.piece_members
        other.piece_on_boundary = self.piece_on_boundary
        other.started_pieces = set(self.started_pieces)
        other.fresh_starts = list(self.fresh_starts)
        other.rot_pref = self.rot_pref
        other.start_pref = self.start_pref
        other.target_index = self.target_index
        return other

    def state_key(self) -> tuple:
        """Canonical (processed, frontier up to rotation) key for memoization."""
        f = tuple(zip(self.frontier, (t if t is not None else -1 for t in self.targets)))
        if f:
            best = min(f[i:] + f[:i] for i in range(len(f)))
        else:
            best = ()
        return (frozenset(self.processed), best)

    def _bump(self) -> None:
        self.girth = max(self.girth, len(self.frontier))

    def _rotate(self, r: int) -> None:
        self.frontier = self.frontier[r:] + self.frontier[:r]
        self.targets = self.targets[r:] + self.targets[:r]

    # -- elementary steps ----------------------------------------------------

    def emit_birth(self, arc: int, at: int, tgt: tuple[int | None, int | None] = (None, None)) -> None:
        self.frontier[at:at] = [arc, arc]
        self.targets[at:at] = list(tgt)
        self.events.append(Birth(at))
        self._bump()

    def emit_cap(self, at: int) -> None:
        g = len(self.frontier)
        self.events.append(Cap(at))
        if at == g - 1 and g >= 2:
            self._rotate(at)
            at = 0
        del self.frontier[at:at + 2]
        del self.targets[at:at + 2]

    def free_loop_events(self) -> None:
        for _ in range(self.d.free_loops):
            self.frontier[0:0] = [0, 0]  # throwaway token label
            self.targets[0:0] = [None, None]
            self.events.append(Birth(0))
            self._bump()
            self.events.append(Cap(0))
            del self.frontier[0:2]
            del self.targets[0:2]

    def plain_chord_events(self) -> None:
        """Birth every crossingless boundary chord, outermost first.

        A chord encloses everything declared between its endpoints, so it
        must exist before the enclosed strands are scanned; sorting in a
        frame whose seam lies outside all chords makes the nesting linear.
        """
        target = self.d.boundary_arcs
        g = len(target)
        chords = []
        seen: set[int] = set()
        for i, a in enumerate(target):
            if a in self.arc_slots or a in seen:
                continue
            seen.add(a)
            j = next(k for k in range(i + 1, g) if target[k] == a)
            chords.append((a, i, j))
        if not chords:
            return
        # a gap outside all chords: right before the start of some chord that
        # no other chord strictly encloses
        outer = [(i, j) for _, i, j in chords]
        anchor = 0
        for i, j in outer:
            if not any(p < i and j < q for p, q in outer):
                anchor = i
                break

        def lin(t: int) -> int:
            return (t - anchor) % g

        chords.sort(key=lambda c: (lin(c[1]), -lin(c[2])))
        for arc, i, j in chords:
            placed = False
            for p in range(len(self.frontier) + 1):
                trial = self.targets[:p] + [lin(i), lin(j)] + self.targets[p:]
                if _cyclically_sorted([t for t in trial if t is not None]):
                    self.emit_birth(arc, p, (lin(i), lin(j)))
                    placed = True
                    break
            if not placed:
                raise InvalidOrder(f"cannot place crossingless chord {arc}")
        # store linearized coordinates for every future boundary emission too
        self.target_index = {a: lin(t) for a, t in self.target_index.items()}

    def prologue(self) -> None:
        self.free_loop_events()
        self.plain_chord_events()

    def cascade_caps(self) -> None:
        """Cap every adjacent pair of stubs of the same completed interior
        arc.  Crossingless boundary chords also carry equal adjacent tokens
        but stay: they are part of the declared boundary."""
        changed = True
        while changed:
            changed = False
            g = len(self.frontier)
            for i in range(g):
                j = (i + 1) % g
                if (g >= 2 and i != j and self.frontier[i] == self.frontier[j]
                        and len(self.arc_slots.get(self.frontier[i], ())) == 2):
                    self.emit_cap(i)
                    changed = True
                    break

    # -- crossing moves ------------------------------------------------------

    def token_runs(self, ci: int) -> list[list[int]]:
        """Maximal circular runs of frontier positions holding arcs of ci."""
        g = len(self.frontier)
        arcs = set(self.d.crossings[ci].arcs)
        flags = [tok in arcs for tok in self.frontier]
        if not any(flags):
            return []
        if all(flags):
            return [list(range(g))]
        runs: list[list[int]] = []
        # start just after a gap
        start = next(i for i in range(g) if not flags[i])
        run: list[int] = []
        for off in range(1, g + 1):
            i = (start + off) % g
            if flags[i]:
                run.append(i)
            elif run:
                runs.append(run)
                run = []
        if run:
            runs.append(run)
        return runs

    def _slot_of(self, ci: int, arc: int) -> int | None:
        slots = [s for (cj, s) in self.arc_slots[arc] if cj == ci]
        return slots[0] if len(slots) == 1 else None

    def run_moves(self, ci: int) -> list[tuple[int, int, int]]:
        """All (at, k, rot) sub-run absorptions available for crossing ci.
        rot is the crossing slot glued at frontier position ``at``; slots
        decrease along the run (the gluing reverses orientation)."""
        moves: list[tuple[int, int, int]] = []
        for run in self.token_runs(ci):
            L = len(run)
            for start in range(L):
                r0 = self._slot_of(ci, self.frontier[run[start]])
                if r0 is None:
                    continue
                for length in range(1, min(L - start, 4) + 1):
                    ok = True
                    for j in range(length):
                        pos = run[start + j]
                        s = self._slot_of(ci, self.frontier[pos])
                        if s is None or s != (r0 - j) % 4:
                            ok = False
                            break
                    if ok:
                        moves.append((run[start], length, r0))
        return moves

    def full_move(self, ci: int) -> tuple[int, int, int] | None:
        """The move absorbing all of ci's frontier tokens, if they form one
        slot-consistent run."""
        runs = self.token_runs(ci)
        if len(runs) != 1:
            return None
        total = len(runs[0])
        for at, k, r in self.run_moves(ci):
            if k == total and at == runs[0][0]:
                return (at, k, r)
        return None

    def fresh_insert_position(self, ci: int) -> int:
        """Gap for gluing a crossing whose piece has no frontier tokens yet.

        The gap must sit between two physically adjacent tokens with known
        boundary positions straddling the new piece's declared interval; the
        seam counts as a gap.  Closed diagrams always use the seam (split
        components commute with everything)."""
        g = len(self.frontier)
        if g == 0 or not self.d.boundary_arcs:
            return g
        mine = {self.target_index[a] for a in self.d.boundary_arcs
                if a in self.target_index
                and self.arc_slots.get(a) and self.piece[self.arc_slots[a][0][0]] == self.piece[ci]}
        if not mine:
            return g
        gsize = len(self.d.boundary_arcs)

        def inside(a: int, b: int, x: int) -> bool:
            return 0 < (x - a) % gsize < (b - a) % gsize

        for q in range(g):
            t_a, t_b = self.targets[q], self.targets[(q + 1) % g]
            if t_a is None or t_b is None:
                continue
            if all(inside(t_a, t_b, t) for t in mine):
                return q + 1  # q+1 == g means the seam
        return g

    def apply_cross(self, ci: int, at: int, k: int, rot: int) -> None:
        g = len(self.frontier)
        c = self.d.crossings[ci]
        if k > 0:
            over_first = (rot % 2) == c.over
        else:
            over_first = ((rot + 1) % 2) == c.over
            if self.piece[ci] in self.piece_on_boundary:
                self.fresh_starts.append(self.piece[ci])
        self.events.append(Cross(at, k, over_first, ci, rot))
        if k > 0 and at + k > g:  # wraps: rotate so the run starts at 0
            self._rotate(at)
            at = 0
        emitted = [c.arcs[(rot + 1 + j) % 4] for j in range(4 - k)]
        self.frontier[at:at + k] = emitted
        self.targets[at:at + k] = [self.target_index.get(a) for a in emitted]
        self.processed.add(ci)
        self.started_pieces.add(self.piece[ci])
        self._bump()
        self.cascade_caps()

    def fresh_rot(self, ci: int) -> int:
        return self.rot_pref.get(self.piece[ci], 3)

    # -- final phase ----------------------------------------------------------

    def finish(self) -> int:
        """Verify the frontier matches the declared boundary and return the
        rotation aligning position i with boundary_arcs[i]."""
        d = self.d
        if len(self.processed) != d.n:
            raise InvalidOrder("not every crossing was processed")
        if not d.boundary_arcs:
            if self.frontier:
                raise InvalidOrder(f"leftover frontier tokens {self.frontier}")
            return 0
        g = len(self.frontier)
        if g != d.g:
            raise InvalidOrder(f"frontier has {g} points, boundary declares {d.g}")
        target = list(d.boundary_arcs)
        for r in range(g):
            if self.frontier[r:] + self.frontier[:r] == target:
                return r
        raise InvalidOrder(
            f"frontier {self.frontier} is no rotation of the boundary {target}"
        )


# ---------------------------------------------------------------------------
# Compilation and searches
# ---------------------------------------------------------------------------

def _frontier_crossings(scan: _Scan) -> list[int]:
    """Unprocessed crossings reachable through a frontier token, in id order."""
    out: set[int] = set()
    for arc in scan.frontier:
        for ci, _ in scan.arc_slots.get(arc, ()):
            if ci not in scan.processed:
                out.add(ci)
    return sorted(out)


def _fresh_crossings(scan: _Scan, all_fresh: bool) -> list[int]:
    out: list[int] = []
    for piece, cis in sorted(scan.piece_members.items(), key=lambda kv: kv[1][0]):
        if piece not in scan.started_pieces:
            out.extend(cis if all_fresh else [scan.start_pref.get(piece, cis[0])])
    return out


def _available_moves(scan: _Scan, all_fresh: bool) -> list[tuple[int, tuple[int, int, int]]]:
    """(crossing, (at, k, rot)) moves from the current scan state."""
    moves: list[tuple[int, tuple[int, int, int]]] = []
    for ci in _frontier_crossings(scan):
        for mv in scan.run_moves(ci):
            moves.append((ci, mv))
    for ci in _fresh_crossings(scan, all_fresh):
        at = scan.fresh_insert_position(ci)
        if all_fresh and scan.piece[ci] in scan.piece_on_boundary:
            # the rotation phases a split piece against the declared boundary
            for rot in (3, 2, 1, 0):
                moves.append((ci, (at, 0, rot)))
        else:
            moves.append((ci, (at, 0, scan.fresh_rot(ci))))
    return moves


def _with_phase_retries(d: Diagram, attempt, cap: int = 512) -> Cutting:
    """Run a compile attempt; when the final boundary alignment fails and the
    scan started boundary-attached pieces fresh inside a pinned pocket, retry
    over those pieces' start crossings and stub rotations (the one genuinely
    free choice such an embedding has is the phase of each pocket piece)."""
    import itertools

    scan = _Scan(d)
    scan.prologue()
    try:
        return attempt(scan)
    except InvalidOrder as first_err:
        pieces = list(dict.fromkeys(scan.fresh_starts))
        if not pieces:
            raise
        last = first_err
        options = [
            [(ci, rot) for ci in scan.piece_members[p] for rot in (3, 2, 1, 0)]
            for p in pieces
        ]
        for combo in itertools.islice(itertools.product(*options), cap):
            if all(ci == scan.piece_members[p][0] and rot == 3
                   for p, (ci, rot) in zip(pieces, combo)):
                continue  # the default already failed
            retry = _Scan(d)
            retry.start_pref = {p: ci for p, (ci, _) in zip(pieces, combo)}
            retry.rot_pref = {p: rot for p, (_, rot) in zip(pieces, combo)}
            retry.prologue()
            try:
                return attempt(retry)
            except InvalidOrder as err:
                last = err
        raise last


def compile_order(d: Diagram, order: list[int]) -> Cutting:
    """Compile an explicit crossing order into events, absorbing maximally.
    Raises InvalidOrder when a crossing is not glueable at its turn."""
    if sorted(order) != list(range(d.n)):
        raise InvalidOrder(f"order must be a permutation of 0..{d.n - 1}")

    def attempt(scan: _Scan) -> Cutting:
        for ci in order:
            runs = scan.token_runs(ci)
            if runs:
                mv = scan.full_move(ci)
                if mv is None:
                    raise InvalidOrder(f"crossing {ci} is not glueable (tokens not one run)")
                scan.apply_cross(ci, *mv)
            else:
                if scan.piece[ci] in scan.started_pieces:
                    raise InvalidOrder(f"crossing {ci} is unreachable from the frontier")
                scan.apply_cross(ci, scan.fresh_insert_position(ci), 0, scan.fresh_rot(ci))
        rot = scan.finish()
        return Cutting(scan.events, scan.girth, list(order), rot)

    return _with_phase_retries(d, attempt)


def greedy_cutting(d: Diagram, lookahead: int = 2) -> Cutting:
    """Deterministic greedy scan: pick, among glueable crossings, the one
    minimizing the post-event frontier, breaking ties by a bounded lookahead
    of the greedy continuation and then by lowest crossing id."""

    def attempt(scan: _Scan) -> Cutting:
        order: list[int] = []
        while len(scan.processed) < scan.d.n:
            candidates = _candidate_best_moves(scan)
            if not candidates:
                raise InvalidOrder("greedy scan has no glueable crossing (unexpected)")
            if len(candidates) == 1:
                ci, mv = candidates[0]
            else:
                # rank by post-event frontier first; spend the lookahead
                # budget only on the candidates tied at the minimum
                posts = []
                for ci, mv in candidates:
                    probe = scan.clone()
                    probe.apply_cross(ci, *mv)
                    posts.append((len(probe.frontier), ci, mv, probe))
                posts.sort(key=lambda t: (t[0], t[1]))
                tied = [t for t in posts if t[0] == posts[0][0]]
                if len(tied) == 1 or not lookahead:
                    _, ci, mv, _ = tied[0]
                else:
                    scored = [(_lookahead_peak(probe, lookahead), ci, mv)
                              for _, ci, mv, probe in tied]
                    scored.sort(key=lambda t: (t[0], t[1]))
                    _, ci, mv = scored[0]
            scan.apply_cross(ci, *mv)
            order.append(ci)
        rot = scan.finish()
        return Cutting(scan.events, scan.girth, order, rot)

    return _with_phase_retries(d, attempt)


def _candidate_best_moves(scan: _Scan) -> list[tuple[int, tuple[int, int, int]]]:
    """One move per glueable crossing: its full absorption when possible,
    else its longest single-run absorption; plus fresh starts."""
    out: list[tuple[int, tuple[int, int, int]]] = []
    for ci in _frontier_crossings(scan):
        mv = scan.full_move(ci)
        if mv is None:
            partial = scan.run_moves(ci)
            if partial:
                mv = max(partial, key=lambda m: m[1])
        if mv is not None:
            out.append((ci, mv))
    for ci in _fresh_crossings(scan, all_fresh=False):
        out.append((ci, (scan.fresh_insert_position(ci), 0, scan.fresh_rot(ci))))
    return out


def _lookahead_peak(scan: _Scan, depth: int) -> int:
    probe = scan.clone()
    for _ in range(depth):
        if len(probe.processed) == probe.d.n:
            break
        candidates = _candidate_best_moves(probe)
        if not candidates:
            break
        best = None
        for ci, mv in candidates:
            trial = probe.clone()
            trial.apply_cross(ci, *mv)
            key = (len(trial.frontier), ci)
            if best is None or key < best[0]:
                best = (key, ci, mv)
        probe.apply_cross(best[1], *best[2])
    return probe.girth


def exact_min_girth(d: Diagram, max_n: int = DEFAULT_EXACT_CAP) -> Cutting:
    """Provably minimal girth over the covered disk-cutting space, by a
    bottleneck shortest-path search over (processed set, frontier) states:
    the cost of a path is the maximum frontier size along it, and states are
    expanded in increasing cost, so the first completed state is optimal."""
    if d.n > max_n:
        raise TooLarge(f"{d.n} crossings exceeds the exact-search cap {max_n}")
    base = _Scan(d)
    base.prologue()
    counter = 0
    heap: list[tuple[int, int]] = []  # (peak, entry id)
    entries: dict[int, tuple[_Scan, list[int], bool]] = {}

    def push(scan: _Scan, order: list[int], peak: int, done: bool = False):
        nonlocal counter
        entries[counter] = (scan, order, done)
        heapq.heappush(heap, (peak, counter))
        counter += 1

    settled: dict[tuple, int] = {}
    push(base, [], base.girth)
    while heap:
        peak, eid = heapq.heappop(heap)
        scan, order, done = entries.pop(eid)
        if done:
            probe = scan.clone()
            rot = probe.finish()
            return Cutting(probe.events, probe.girth, order, rot)
        key = scan.state_key()
        if settled.get(key, 1 << 30) <= peak:
            continue
        settled[key] = peak
        if len(scan.processed) == d.n:
            probe = scan.clone()
            probe.finish()  # finishing births can raise the peak
            push(scan, order, max(peak, probe.girth), done=True)
            continue
        for ci, mv in _available_moves(scan, all_fresh=True):
            child = scan.clone()
            child.apply_cross(ci, *mv)
            child_peak = max(peak, child.girth)
            ckey = child.state_key()
            if settled.get(ckey, 1 << 30) <= child_peak:
                continue
            push(child, order + [ci], child_peak)
    raise InvalidOrder("search exhausted without completing the scan")


def improve_cutting(d: Diagram, start: Cutting, seed: int, iterations: int = 400) -> Cutting:
    """Seeded local search over crossing orders.  Proposes transpositions and
    single-element relocations of the source order, keeping the best valid
    compilation; never returns a cutting worse than ``start``."""
    rng = random.Random(seed)
    best = start
    try:
        current = compile_order(d, list(start.source_order))
        if current.girth < best.girth:
            best = current
    except InvalidOrder:
        current = None
    order = list(start.source_order)
    cur_girth = current.girth if current else 1 << 30
    n = d.n
    if n < 2:
        return best
    for _ in range(iterations):
        cand = list(order)
        if rng.random() < 0.5:
            i, j = rng.randrange(n), rng.randrange(n)
            cand[i], cand[j] = cand[j], cand[i]
        else:
            i, j = rng.randrange(n), rng.randrange(n)
            cand.insert(j, cand.pop(i))
        try:
            compiled = compile_order(d, cand)
        except InvalidOrder:
            continue
        if compiled.girth <= cur_girth:
            order, cur_girth = cand, compiled.girth
            if compiled.girth < best.girth:
                best = compiled
    return best


def sqrt_bound_check(d: Diagram, cutting: Cutting) -> dict:
    """The cutwidth bound: girth should not exceed (6*sqrt2 + 5*sqrt3)*sqrt(n).
    Crossingless diagrams are exempt (their girth 2 comes from loop births)."""
    n = d.n
    bound = SQRT_BOUND_CONST * math.sqrt(n)
    ok = True if n == 0 else cutting.girth <= bound
    return {"bound": bound, "ok": ok}


def verify_cutting(d: Diagram, cutting: Cutting) -> None:
    """Replay an explicit cutting against the diagram, checking that every
    event is a legal disk step and the replay reconstructs the diagram,
    the recorded girth, and the recorded cap/birth bookkeeping exactly."""
    scan = _Scan(d)
    scan.prologue()
    events = cutting.events
    pos = len(scan.events)
    if events[:pos] != scan.events:
        raise InvalidCutting(
            "cutting must open with the canonical free-loop and chord events")
    while pos < len(events):
        ev = events[pos]
        if not isinstance(ev, Cross):
            break  # trailing births of crossingless chords belong to finish()
        ci = ev.crossing
        if ci is None or not 0 <= ci < d.n or ci in scan.processed:
            raise InvalidCutting(f"bad crossing reference in {ev}")
        if ev.absorb == 0:
            if scan.token_runs(ci):
                raise InvalidCutting(f"{ev} ignores frontier arcs of crossing {ci}")
            over = d.crossings[ci].over
            rot = ev.rot if ev.rot is not None else (3 if ev.over_first == (over == 0) else 2)
            if ev.over_first != (((rot + 1) % 2) == over):
                raise InvalidCutting(f"{ev} has an inconsistent over_first flag")
            if not 0 <= ev.at <= len(scan.frontier):
                raise InvalidCutting(f"{ev} inserts outside the frontier")
            scan.apply_cross(ci, ev.at, 0, rot)
        else:
            legal = {}
            for at, k, rot in scan.run_moves(ci):
                over_first = (rot % 2) == d.crossings[ci].over
                legal[(at, k, over_first)] = (at, k, rot)
            mv = legal.get((ev.at, ev.absorb, ev.over_first))
            if mv is None:
                raise InvalidCutting(f"{ev} is not a legal gluing here")
            scan.apply_cross(ci, *mv)
        pos = len(scan.events)
        if events[:pos] != scan.events:
            raise InvalidCutting("recorded events diverge from the replay")
    try:
        rot = scan.finish()
    except InvalidOrder as exc:
        raise InvalidCutting(str(exc)) from exc
    if scan.events != events:
        raise InvalidCutting("recorded events diverge from the replay")
    if rot != cutting.final_rotation:
        raise InvalidCutting("final rotation does not match")
    if scan.girth != cutting.girth:
        raise InvalidCutting(f"replayed girth {scan.girth} != recorded {cutting.girth}")
