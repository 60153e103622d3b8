"""Top-level computations: bracket, positive variant, tangle expansion, and
the writhe-normalized Jones polynomial.

The fold replays a cutting's events through the skein state machine while a
tracker maintains the partial tangle's crossing count n, component count c,
and frontier size g.  After every event the structural invariants are
checked and any violation is recorded in the diagnostics (they all encode
theorems, so a violation means an engine bug or a deliberately mutated
build):

* every coefficient's exponents agree mod 4, and its span is a multiple of 4;
* every coefficient's span is at most 4(n + c) - 2g;
* the total spread of exponents is at most 4(n + c) (positive mode, where
  no cancellation can hide a violation);
* the state holds at most Catalan(g/2) matchings, and each coefficient has
  at most n + c - g/2 + 1 terms;
* in positive mode every integer coefficient is strictly positive.

The raw fold closes every loop with the loop value, so a closed diagram
yields loop_value * result; one exact division restores the normalization
in which the unknot maps to 1 and a k-component unlink to (loop value)^(k-1).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .cutorder import Cutting, exact_min_girth, greedy_cutting, improve_cutting, sqrt_bound_check
from .laurent import MIXED, LaurentPoly
from .matchings import Matching, catalan
from .planar import DARK, LIGHT, Diagram, checkerboard, trace_faces, writhe
from .skein import BRACKET, PKBP, Birth, Cap, Cross, SkeinState, loop_value


class NotClosed(ValueError):
    """Raised when a closed-diagram computation receives a tangle."""


class EmptyDiagram(ValueError):
    """Raised on a diagram with no components at all."""


@dataclass
class BracketResult:
    polynomial: LaurentPoly
    raw_polynomial: LaurentPoly
    mode: str
    girth_used: int
    peak_state_size: int
    diagnostics: dict
    cutting: Cutting = field(repr=False, default=None)

    @property
    def ok(self) -> bool:
        return all(check.get("ok", True) for check in self.diagnostics.values()
                   if isinstance(check, dict))

    def to_json(self) -> dict:
        return {
            "polynomial": self.polynomial.to_json(),
            "polynomial_text": str(self.polynomial),
            "mode": self.mode,
            "girth": self.girth_used,
            "peak_state_size": self.peak_state_size,
            "checks": {k: v for k, v in self.diagnostics.items() if k != "timings"},
            "timings": self.diagnostics.get("timings", {}),
        }


@dataclass
class TangleExpansion:
    coeffs: dict[Matching, LaurentPoly]
    girth_used: int
    peak_state_size: int
    diagnostics: dict
    mode: str = BRACKET


class _TangleTracker:
    """Crossing and component counts of the partial tangle along the fold.

    Components are tracked by a label per frontier position: a birth opens a
    new component, a crossing merges everything it touches, and a cap either
    fuses two components or closes one off.
    """

    def __init__(self):
        self.labels: list[int] = []
        self.next = 0
        self.closed = 0
        self.crossings = 0

    def _rotate(self, r: int) -> None:
        self.labels = self.labels[r:] + self.labels[:r]

    def component_count(self) -> int:
        return len(set(self.labels)) + self.closed

    def apply(self, ev) -> None:
        g = len(self.labels)
        if isinstance(ev, Birth):
            self.labels[ev.at:ev.at] = [self.next, self.next]
            self.next += 1
        elif isinstance(ev, Cap):
            at = ev.at
            if at == g - 1 and g >= 2:
                self._rotate(at)
                at = 0
            a, b = self.labels[at], self.labels[at + 1]
            del self.labels[at:at + 2]
            if a != b:
                self.labels = [a if x == b else x for x in self.labels]
            elif a not in self.labels:
                self.closed += 1
        elif isinstance(ev, Cross):
            self.crossings += 1
            at, k = ev.at, ev.absorb
            if k > 0 and at + k > g:
                self._rotate(at)
                at = 0
            absorbed = self.labels[at:at + k]
            label = min(absorbed) if absorbed else self.next
            if not absorbed:
                self.next += 1
            self.labels[at:at + k] = [label] * (4 - k)
            keep = set(absorbed) - {label}
            if keep:
                self.labels = [label if x in keep else x for x in self.labels]
            if k == 4 and label not in self.labels:
                self.closed += 1
        else:
            raise TypeError(f"unknown event {ev!r}")


def _check_state(state: SkeinState, tracker: _TangleTracker, report: dict) -> None:
    n, g = tracker.crossings, state.g
    c = tracker.component_count()
    span_bound = 4 * (n + c) - 2 * g
    term_bound = n + c - g // 2 + 1
    cat = catalan(g // 2)
    if state.size() > cat:
        report["storage"]["violations"].append(
            f"{state.size()} matchings exceed Catalan({g // 2}) = {cat}"
        )
    lo = hi = None
    for idx, poly in state.coeffs.items():
        sg = poly.span_and_grade()
        if sg.grade == MIXED:
            report["mod4"]["violations"].append(
                f"mixed exponent residues at n={n}, g={g}: {poly}"
            )
        if sg.span % 4:
            report["span"]["violations"].append(
                f"span {sg.span} not a multiple of 4 at n={n}, g={g}"
            )
        if sg.span > span_bound:
            report["span"]["violations"].append(
                f"span {sg.span} > 4(n+c)-2g = {span_bound} at n={n}, c={c}, g={g}"
            )
        if len(poly) > term_bound:
            report["storage"]["violations"].append(
                f"{len(poly)} terms > n+c-g/2+1 = {term_bound} at n={n}, c={c}, g={g}"
            )
        if state.mode == PKBP and any(v <= 0 for _, v in poly):
            report["positivity"]["violations"].append(
                f"nonpositive coefficient at n={n}, g={g}: {poly}"
            )
        mn, mx = poly.min_exp(), poly.max_exp()
        lo = mn if lo is None else min(lo, mn)
        hi = mx if hi is None else max(hi, mx)
    if lo is not None and hi - lo > 4 * (n + c):
        report["total_span"]["violations"].append(
            f"total span {hi - lo} > 4(n+c) = {4 * (n + c)} at n={n}, c={c}, g={g}"
        )


def _new_report() -> dict:
    return {
        "mod4": {"violations": []},
        "span": {"violations": []},
        "total_span": {"violations": []},
        "storage": {"violations": []},
        "positivity": {"violations": []},
    }


def fold_cutting(d: Diagram, cutting: Cutting, mode: str, trace_fn=None) -> tuple[SkeinState, dict, int]:
    """Replay a cutting's events, checking invariants after every event.
    Returns the final state, the diagnostics report, and the peak number of
    matchings held at once."""
    state = SkeinState.initial(mode)
    tracker = _TangleTracker()
    report = _new_report()
    peak = state.size()
    for ev in cutting.events:
        state = state.apply(ev)
        tracker.apply(ev)
        peak = max(peak, state.size())
        _check_state(state, tracker, report)
        if trace_fn is not None:
            trace_fn(ev, state)
    if cutting.final_rotation:
        state = state.rotated(cutting.final_rotation)
        if trace_fn is not None:
            trace_fn(f"rotate {cutting.final_rotation}", state)
    for key in list(report):
        report[key]["ok"] = not report[key]["violations"]
    return state, report, peak


def make_cutting(d: Diagram, order="greedy", seed: int = 0, exact_cap: int = 20) -> Cutting:
    if isinstance(order, Cutting):
        return order
    if order == "greedy":
        return greedy_cutting(d)
    if order == "anneal":
        return improve_cutting(d, greedy_cutting(d), seed=seed)
    if order == "exact":
        return exact_min_girth(d, max_n=exact_cap)
    raise ValueError(f"unknown order strategy {order!r}")


def _compute(d: Diagram, mode: str, order, seed: int) -> BracketResult:
    if not d.is_closed:
        raise NotClosed("bracket computation needs a closed diagram; use expand_tangle")
    if d.n == 0 and d.free_loops == 0:
        raise EmptyDiagram("the empty diagram has no components")
    t0 = time.perf_counter()
    cutting = make_cutting(d, order, seed)
    t1 = time.perf_counter()
    state, report, peak = fold_cutting(d, cutting, mode)
    t2 = time.perf_counter()
    raw = state.coeffs.get(0, LaurentPoly.zero())
    polynomial = raw.exact_div(loop_value(mode))
    report["sqrt_bound"] = sqrt_bound_check(d, cutting)
    report["storage"]["peak_matchings"] = peak
    report["storage"]["catalan_cap"] = catalan(cutting.girth // 2)
    if peak > report["storage"]["catalan_cap"]:
        report["storage"]["violations"].append(
            f"peak state {peak} exceeds Catalan(girth/2) = {report['storage']['catalan_cap']}"
        )
        report["storage"]["ok"] = False
    if mode == BRACKET:
        report["mod4_link"] = check_mod4_link(d, raw)
    report["timings"] = {
        "cutting_s": t1 - t0,
        "fold_s": t2 - t1,
    }
    return BracketResult(polynomial, raw, mode, cutting.girth, peak, report, cutting)


def compute_bracket(d: Diagram, order="greedy", seed: int = 0) -> BracketResult:
    """The bracket of a closed diagram, normalized so the unknot maps to 1."""
    return _compute(d, BRACKET, order, seed)


def compute_pkbp(d: Diagram, order="greedy", seed: int = 0) -> BracketResult:
    """The positive variant: same fold with loop value A^2 + A^-2; not a link
    invariant, but cancellation-free, which makes the span bounds sharp."""
    return _compute(d, PKBP, order, seed)


def expand_tangle(d: Diagram, order="greedy", seed: int = 0, mode: str = BRACKET) -> TangleExpansion:
    """Full skein expansion of a tangle over the matchings of its boundary,
    indexed so position i is boundary_arcs[i]."""
    if d.is_closed:
        raise ValueError("expand_tangle needs declared boundary arcs")
    cutting = make_cutting(d, order, seed)
    state, report, peak = fold_cutting(d, cutting, mode)
    if state.g != d.g:
        raise RuntimeError(f"fold ended with frontier {state.g}, expected {d.g}")
    return TangleExpansion(state.matching_dict(), cutting.girth, peak, report, mode)


def compute_jones(d: Diagram, orientation=None, order="greedy", seed: int = 0) -> BracketResult:
    """Writhe-normalized bracket (-A)^(-3w) * <L>, reported in the variable A.
    The usual single-variable form substitutes t = A^-4."""
    result = compute_bracket(d, order, seed)
    w = writhe(d, orientation)
    factor = LaurentPoly.monomial(-1 if w % 2 else 1, -3 * w)
    jones = result.polynomial * factor
    result.diagnostics["writhe"] = w
    return BracketResult(jones, result.raw_polynomial, "jones", result.girth_used,
                         result.peak_state_size, result.diagnostics, result.cutting)


def check_mod4_link(d: Diagram, raw) -> dict:
    """Verify every exponent of the raw (pre-division) bracket against the
    checkerboard residue w + 2e - 2e_base mod 4, under both colorings.
    e_base counts the dark disks of the empty closure: 1 when the outer face
    is dark, else 0.  Accepts a raw polynomial or a whole result object."""
    if isinstance(raw, BracketResult):
        raw = raw.raw_polynomial
    out = {"violations": [], "ok": True}
    if raw.is_zero():
        out["violations"].append("raw bracket is zero")
        out["ok"] = False
        return out
    ft = trace_faces(d)
    residues = {e % 4 for e, _ in raw}
    for outer_color in (LIGHT, DARK):
        cb = checkerboard(d, outer_color, trace=ft)
        e_base = 1 if outer_color == DARK else 0
        expected = (cb.w + 2 * cb.e - 2 * e_base) % 4
        out[outer_color] = {"w": cb.w, "e": cb.e, "expected_residue": expected}
        if residues != {expected}:
            out["violations"].append(
                f"raw exponents have residues {sorted(residues)} mod 4, expected "
                f"{expected} from w={cb.w}, e={cb.e} ({outer_color} outer face)"
            )
    out["ok"] = not out["violations"]
    return out
