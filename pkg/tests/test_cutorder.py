import math

import pytest

from skeinscan.construct import braid_closure, torus_link
from skeinscan.cutorder import (
    SQRT_BOUND_CONST, Cutting, InvalidCutting, TooLarge, compile_order,
    exact_min_girth, greedy_cutting, improve_cutting, sqrt_bound_check,
    verify_cutting,
)
from skeinscan.planar import parse_pd
from skeinscan.skein import Birth, Cap

TREFOIL = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")
FIG8 = parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]")
HOPF = parse_pd("X[1,3,2,4] X[3,1,4,2]")


def test_unknot_cutting():
    c = greedy_cutting(parse_pd("O"))
    assert c.events == [Birth(0), Cap(0)]
    assert c.girth == 2


def test_figure_eight_exact_girth_four():
    assert exact_min_girth(FIG8).girth == 4


def test_figure_eight_greedy_reasonable():
    g = greedy_cutting(FIG8).girth
    assert 4 <= g <= 6


def test_trefoil_and_hopf_exact_girth():
    assert exact_min_girth(TREFOIL).girth == 4
    assert exact_min_girth(HOPF).girth == 4


@pytest.mark.parametrize("k", [2, 3, 5, 10, 30])
def test_torus_family_scans_at_girth_four(k):
    c = greedy_cutting(torus_link(k))
    assert c.girth == 4
    verify_cutting(torus_link(k), c)


def test_exact_cap():
    with pytest.raises(TooLarge):
        exact_min_girth(torus_link(21), max_n=20)


def test_exact_never_worse_than_greedy(corpus):
    for name, d in corpus.items():
        if not 0 < d.n <= 8:
            continue
        ex = exact_min_girth(d).girth
        gr = greedy_cutting(d).girth
        assert ex <= gr, name


def test_improve_never_worsens_and_is_seeded():
    start = greedy_cutting(FIG8)
    better = improve_cutting(FIG8, start, seed=3, iterations=200)
    assert better.girth <= start.girth
    again = improve_cutting(FIG8, start, seed=3, iterations=200)
    assert again.girth == better.girth
    assert again.source_order == better.source_order


def test_improve_reaches_exact_girth_on_figure_eight():
    start = greedy_cutting(FIG8)
    best = min(
        improve_cutting(FIG8, start, seed=s, iterations=300).girth for s in range(4)
    )
    assert best == exact_min_girth(FIG8).girth == 4


def test_sqrt_bound_values():
    c = greedy_cutting(FIG8)
    chk = sqrt_bound_check(FIG8, c)
    assert chk["ok"]
    assert chk["bound"] == pytest.approx(SQRT_BOUND_CONST * 2.0)
    assert SQRT_BOUND_CONST * math.sqrt(1) == pytest.approx(17.146, abs=1e-3)
    one = braid_closure([1], 2)
    assert sqrt_bound_check(one, greedy_cutting(one))["bound"] == pytest.approx(17.146, abs=1e-3)


def test_sqrt_bound_crossingless_exempt():
    d = parse_pd("O")
    chk = sqrt_bound_check(d, greedy_cutting(d))
    assert chk["ok"] and chk["bound"] == 0.0


def test_sqrt_bound_on_corpus(corpus):
    for name, d in corpus.items():
        c = greedy_cutting(d)
        assert sqrt_bound_check(d, c)["ok"], name


def test_cutting_json_roundtrip_and_replay(corpus):
    for name, d in list(corpus.items())[:20]:
        c = greedy_cutting(d)
        verify_cutting(d, c)
        back = Cutting.from_json(c.to_json())
        assert back == c
        verify_cutting(d, back)


def test_replay_rejects_wrong_diagram():
    c = greedy_cutting(TREFOIL)
    with pytest.raises(InvalidCutting):
        verify_cutting(TREFOIL.mirrored(), c)


def test_replay_rejects_tampered_girth():
    c = greedy_cutting(TREFOIL)
    tampered = Cutting(c.events, c.girth + 2, c.source_order, c.final_rotation)
    with pytest.raises(InvalidCutting):
        verify_cutting(TREFOIL, tampered)


def test_compile_explicit_orders():
    by_id = compile_order(TREFOIL, [0, 1, 2])
    assert by_id.girth >= 4
    verify_cutting(TREFOIL, by_id)


def test_exact_deterministic(corpus):
    sample = [d for d in corpus.values() if 0 < d.n <= 6][:5]
    for d in sample:
        a = exact_min_girth(d)
        b = exact_min_girth(d)
        assert a.events == b.events and a.girth == b.girth
