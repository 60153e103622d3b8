import pytest

from skeinscan.construct import add_kink, braid_closure
from skeinscan.cutorder import Cutting
from skeinscan.engine import (
    EmptyDiagram, NotClosed, check_mod4_link, compute_bracket, compute_jones,
    compute_pkbp, expand_tangle,
)
from skeinscan.laurent import DELTA, DELTA_PLUS, LaurentPoly
from skeinscan.matchings import catalan
from skeinscan.oracle import brute_force_bracket, brute_force_tangle_expansion
from skeinscan.planar import Crossing, Diagram, MissingOrientation, parse_pd, validate
from skeinscan.skein import PKBP

UNKNOT = parse_pd("O")
HOPF = parse_pd("X[1,3,2,4] X[3,1,4,2]")
TREFOIL = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")
FIG8 = parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]")

# published single-variable polynomials for the corpus table knots, as
# exponent->coefficient maps in t; reported values use t = A^-4
JONES_TABLE = {
    "knot_3_1": {-4: -1, -3: 1, -1: 1},
    "knot_4_1": {2: 1, -2: 1, 1: -1, -1: -1, 0: 1},
    "knot_5_2": {-6: -1, -5: 1, -4: -1, -3: 2, -2: -1, -1: 1},
    "knot_6_3": {3: -1, 2: 2, 1: -2, 0: 3, -1: -2, -2: 2, -3: -1},
    "knot_7_6": {1: 1, 0: -2, -1: 3, -2: -3, -3: 4, -4: -3, -5: 2, -6: -1},
    "knot_8_10": {6: -1, 5: 2, 4: -4, 3: 5, 2: -4, 1: 5, 0: -3, -1: 2, -2: -1},
    "knot_9_14": {6: 1, 5: -2, 4: 3, 3: -5, 2: 6, 1: -6, 0: 6, -1: -4, -2: 3, -3: -1},
}


def in_a(t_poly: dict) -> LaurentPoly:
    return LaurentPoly({-4 * e: c for e, c in t_poly.items()})


def test_unknot_bracket_is_one():
    assert compute_bracket(UNKNOT).polynomial == LaurentPoly.one()


def test_unlink_brackets():
    assert compute_bracket(parse_pd("O O")).polynomial == DELTA
    assert compute_bracket(parse_pd("O O O")).polynomial == DELTA * DELTA


def test_hopf_and_trefoil():
    assert compute_bracket(HOPF).polynomial == LaurentPoly({4: -1, -4: -1})
    assert compute_bracket(TREFOIL.mirrored()).polynomial == LaurentPoly({5: -1, -3: -1, -7: 1})


def test_raw_is_loop_value_times_result():
    res = compute_bracket(TREFOIL)
    assert res.raw_polynomial == res.polynomial * DELTA


def test_pkbp_values():
    assert compute_pkbp(UNKNOT).polynomial == LaurentPoly.one()
    assert compute_pkbp(parse_pd("O O")).polynomial == DELTA_PLUS
    res = compute_pkbp(TREFOIL)
    assert res.polynomial == brute_force_bracket(TREFOIL, PKBP)
    assert all(c > 0 for _, c in res.polynomial)
    sg = res.polynomial.span_and_grade()
    assert sg.span <= 4 * (TREFOIL.n + 1)


def test_closed_only():
    with pytest.raises(NotClosed):
        compute_bracket(parse_pd("X[1,2,3,4]o1 B[1,2,3,4]"))
    with pytest.raises(EmptyDiagram):
        compute_bracket(Diagram(()))
    with pytest.raises(ValueError):
        expand_tangle(UNKNOT)


def test_expand_tangle_examples():
    single = expand_tangle(parse_pd("X[1,2,3,4]o1 B[1,2,3,4]"))
    assert single.coeffs == {
        (1, 0, 3, 2): LaurentPoly({1: 1}),
        (3, 2, 1, 0): LaurentPoly({-1: 1}),
    }
    arc = expand_tangle(parse_pd("B[1,1]"))
    assert arc.coeffs == {(1, 0): LaurentPoly.one()}
    r2 = expand_tangle(parse_pd("X[1,2,4,3]o0 X[3,4,6,5]o1 B[1,2,6,5]"))
    assert r2.coeffs == {(3, 2, 1, 0): LaurentPoly.one()}


def _smoothed(d, ci, which):
    """Replace crossing ci by one of its two crossingless reconnections,
    at the PD level (used to exercise the expansion identity)."""
    c = d.crossings[ci]
    p = c.over
    s = p if which == 0 else p + 1
    pairs = [(c.arcs[(s - 1) % 4], c.arcs[s % 4]), (c.arcs[(s + 1) % 4], c.arcs[(s + 2) % 4])]
    rest = [x for j, x in enumerate(d.crossings) if j != ci]
    free = d.free_loops
    relabel = {}
    for a, b in pairs:
        ra = relabel.get(a, a)
        rb = relabel.get(b, b)
        if ra == rb:
            free += 1  # the smoothing closed a loop
        else:
            lo, hi = min(ra, rb), max(ra, rb)
            for k, v in list(relabel.items()):
                if v == hi:
                    relabel[k] = lo
            relabel[hi] = lo
    out = Diagram(
        tuple(Crossing(tuple(relabel.get(a, a) for a in c2.arcs), c2.over) for c2 in rest),
        free,
        d.boundary_arcs,
    )
    validate(out)
    return out


@pytest.mark.parametrize("name", ["hopf", "trefoil", "fig8"])
def test_expansion_identity_at_one_crossing(name):
    d = {"hopf": HOPF, "trefoil": TREFOIL, "fig8": FIG8}[name]
    lhs = compute_bracket(d).raw_polynomial
    a_part = compute_bracket(_smoothed(d, 0, 0)).raw_polynomial
    b_part = compute_bracket(_smoothed(d, 0, 1)).raw_polynomial
    assert lhs == a_part.shifted(1) + b_part.shifted(-1)


def test_jones_matches_published_table(corpus):
    for name, t_poly in JONES_TABLE.items():
        res = compute_jones(corpus[name])
        assert res.polynomial == in_a(t_poly), name


def test_jones_unknot():
    assert compute_jones(UNKNOT).polynomial == LaurentPoly.one()


def test_jones_invariant_across_diagrams():
    trios = {
        "trefoil": [TREFOIL, add_kink(TREFOIL, 1, True), braid_closure([-1, -1, -1], 2)],
        "fig8": [FIG8, add_kink(FIG8, 4, False), braid_closure([1, -2, 1, -2], 3)],
    }
    for name, diagrams in trios.items():
        values = {str(compute_jones(x).polynomial) for x in diagrams}
        assert len(values) == 1, (name, values)


def test_jones_mirror_conjugates():
    j = compute_jones(TREFOIL).polynomial
    jm = compute_jones(TREFOIL.mirrored()).polynomial
    assert jm == j.mirror()


def test_jones_needs_orientation_for_links():
    with pytest.raises(MissingOrientation):
        compute_jones(HOPF)
    oriented = compute_jones(HOPF, orientation=[1, 1])
    assert oriented.diagnostics["writhe"] in (-2, 2)


def test_mirror_bracket_conjugates(corpus):
    for name, d in list(corpus.items())[:15]:
        if d.n > 8:
            continue
        assert compute_bracket(d.mirrored()).polynomial == compute_bracket(d).polynomial.mirror(), name


def test_disjoint_unknot_multiplies(corpus):
    for name, d in list(corpus.items())[:10]:
        if d.n > 8 or not d.is_closed:
            continue
        aug = Diagram(d.crossings, d.free_loops + 1, d.boundary_arcs)
        assert compute_bracket(aug).polynomial == compute_bracket(d).polynomial * DELTA, name


def test_mod4_link_report_unknot():
    res = compute_bracket(UNKNOT)
    info = res.diagnostics["mod4_link"]
    assert info["ok"]
    assert info["light"] == {"w": 0, "e": 1, "expected_residue": 2}
    assert info["dark"] == {"w": 0, "e": 0, "expected_residue": 2}


def test_mod4_link_accepts_result_or_raw():
    res = compute_bracket(TREFOIL)
    assert check_mod4_link(TREFOIL, res)["ok"]
    assert check_mod4_link(TREFOIL, res.raw_polynomial)["ok"]


def test_order_independence_strategies():
    base = compute_bracket(FIG8, order="greedy").polynomial
    for order in ("anneal", "exact"):
        assert compute_bracket(FIG8, order=order, seed=11).polynomial == base
    explicit = Cutting.from_json(compute_bracket(FIG8).cutting.to_json())
    assert compute_bracket(FIG8, order=explicit).polynomial == base


def test_storage_and_girth_diagnostics():
    res = compute_bracket(FIG8, order="exact")
    assert res.girth_used == 4
    assert res.peak_state_size <= catalan(res.girth_used // 2)
    assert res.diagnostics["storage"]["ok"]
    assert res.diagnostics["sqrt_bound"]["ok"]


def test_engine_matches_oracle_spot(corpus):
    for name in ("knot_6_3", "pretzel_2_3_3", "split_tref_hopf", "braid_3s_02"):
        d = corpus[name]
        assert compute_bracket(d).polynomial == brute_force_bracket(d), name


def test_tangle_diagnostics_and_oracle(corpus):
    d = parse_pd("X[1,2,4,3]o0 X[3,4,6,5]o0 B[1,2,6,5]")
    exp = expand_tangle(d)
    assert exp.coeffs == brute_force_tangle_expansion(d)
    assert all(v["ok"] for k, v in exp.diagnostics.items() if isinstance(v, dict) and "ok" in v)
