#!/usr/bin/env python3
"""Regenerate the corpus: PD files plus oracle-verified expected brackets.

Every diagram is produced by a first-principles construction (braid closure,
torus family, pretzel, connected sum, kink insertion, split union) or is a
published PD code whose Jones polynomial is cross-checked in the test suite.
Expected polynomials come from the brute-force state sum only; entries are
annotated with the oracle that produced them.

Usage: python tools/make_corpus.py [corpus_dir]
"""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from skeinscan.construct import (  # noqa: E402
    add_kink, braid_closure, connected_sum, disjoint_union, pretzel, torus_link,
)
from skeinscan.oracle import brute_force_bracket  # noqa: E402
from skeinscan.planar import Crossing, Diagram, render_pd, validate  # noqa: E402

# PD codes with independently published Jones polynomials (checked in tests).
TABLE_KNOTS = {
    "knot_3_1": [[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]],
    "knot_4_1": [[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]],
    "knot_5_2": [[1, 4, 2, 5], [3, 8, 4, 9], [5, 10, 6, 1], [9, 6, 10, 7], [7, 2, 8, 3]],
    "knot_6_3": [[4, 2, 5, 1], [8, 4, 9, 3], [12, 9, 1, 10], [10, 5, 11, 6],
                 [6, 11, 7, 12], [2, 8, 3, 7]],
    "knot_7_6": [[1, 4, 2, 5], [3, 8, 4, 9], [5, 12, 6, 13], [9, 1, 10, 14],
                 [13, 11, 14, 10], [11, 6, 12, 7], [7, 2, 8, 3]],
    "knot_8_10": [[1, 4, 2, 5], [3, 8, 4, 9], [9, 15, 10, 14], [5, 13, 6, 12],
                  [13, 7, 14, 6], [11, 1, 12, 16], [15, 11, 16, 10], [7, 2, 8, 3]],
    "knot_9_14": [[1, 4, 2, 5], [5, 12, 6, 13], [3, 11, 4, 10], [11, 3, 12, 2],
                  [13, 18, 14, 1], [9, 15, 10, 14], [7, 17, 8, 16], [15, 9, 16, 8],
                  [17, 7, 18, 6]],
}


def table_diagram(code) -> Diagram:
    d = Diagram(tuple(Crossing(tuple(x), 1) for x in code))
    validate(d)
    return d


def build_corpus() -> dict[str, Diagram]:
    corpus: dict[str, Diagram] = {}
    for name, code in TABLE_KNOTS.items():
        corpus[name] = table_diagram(code)

    corpus["unknot"] = Diagram((), free_loops=1)
    corpus["unlink_2"] = Diagram((), free_loops=2)
    corpus["unlink_3"] = Diagram((), free_loops=3)
    corpus["kink_plus"] = braid_closure([1], 2)
    corpus["kink_minus"] = braid_closure([-1], 2)

    for k in range(2, 10):
        corpus[f"torus_2_{k}"] = torus_link(k)
    for q in (2, 3, 4):
        corpus[f"torus_3_{q}"] = braid_closure([1, 2] * q, 3)
    for k in (3, 4):
        corpus[f"fig8_chain_{k}"] = braid_closure([1, -2] * k, 3)

    corpus["pretzel_2_2_2"] = pretzel([2, 2, 2])
    corpus["pretzel_2_3_3"] = pretzel([2, 3, 3])
    corpus["pretzel_3_3_3"] = pretzel([3, 3, 3])
    corpus["pretzel_m2_3_3"] = pretzel([-2, 3, 3])
    corpus["pretzel_2_3_5"] = pretzel([2, 3, 5])
    corpus["pretzel_m2_3_7"] = pretzel([-2, 3, 7])
    corpus["pretzel_2_m3_4"] = pretzel([2, -3, 4])

    trefoil = corpus["knot_3_1"]
    fig8 = corpus["knot_4_1"]
    corpus["granny"] = connected_sum(trefoil, trefoil)
    corpus["square_knot"] = connected_sum(trefoil, trefoil.mirrored())
    corpus["tref_fig8_sum"] = connected_sum(trefoil, fig8)
    corpus["trefoil_kinked"] = add_kink(trefoil, 1, True)
    corpus["fig8_kinked"] = add_kink(fig8, 4, False)
    corpus["trefoil_2kinks"] = add_kink(add_kink(trefoil, 1, True), 2, False)
    corpus["split_tref_hopf"] = disjoint_union(trefoil, torus_link(2))
    corpus["split_tref_unknot"] = Diagram(trefoil.crossings, free_loops=1)
    corpus["trefoil_mirror"] = trefoil.mirrored()
    corpus["fig8_table_mirror"] = fig8.mirrored()

    rng = random.Random(20120801)
    made = 0
    while made < 12:
        strands = rng.choice([2, 3, 3, 4])
        length = rng.randint(4, 12)
        word = [rng.choice([1, -1]) * rng.randint(1, strands - 1) for _ in range(length)]
        d = braid_closure(word, strands)
        if not 3 <= d.n <= 12:
            continue
        name = f"braid_{strands}s_{made:02d}"
        corpus[name] = d
        made += 1
    return corpus


def main() -> None:
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parents[1] / "corpus"
    out_dir.mkdir(parents=True, exist_ok=True)
    corpus = build_corpus()
    expected = {}
    for name, d in sorted(corpus.items()):
        (out_dir / f"{name}.pd").write_text(f"# {name}: n={d.n}\n{render_pd(d)}\n")
        bracket = brute_force_bracket(d)
        expected[name] = {
            "bracket": bracket.to_json(),
            "n": d.n,
            "oracle": "brute_force_bracket (2^n state sum, union-find loops)",
            "generator": "tools/make_corpus.py",
        }
        print(f"{name:22s} n={d.n:2d}  {bracket}")
    (out_dir / "expected.json").write_text(json.dumps(expected, indent=1, sort_keys=True))
    print(f"\n{len(corpus)} diagrams -> {out_dir}")


if __name__ == "__main__":
    main()
