"""Command-line front end.

Subcommands:

* ``compute`` -- bracket / positive-variant / Jones of one diagram
* ``girth``   -- cutting analysis: achieved girth, the sqrt bound, state cap
* ``verify``  -- run the verification suites against the corpus
* ``bench``   -- scaling table on torus and twist-chain families

Exit codes: 0 success, 1 input error, 2 failed checks under --strict (or a
failed verify), 3 internal invariant violation.  Environment variables are
never consulted; a seed flag pins every randomized choice.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .construct import braid_closure, torus_link
from .cutorder import Cutting, InvalidCutting, InvalidOrder, TooLarge, sqrt_bound_check, verify_cutting
from .engine import EmptyDiagram, NotClosed, compute_bracket, compute_jones, compute_pkbp, expand_tangle, fold_cutting, make_cutting
from .laurent import NotDivisible
from .matchings import catalan, format_matching
from .oracle import BRACKET_CAP, brute_force_bracket
from .oracle import TooLarge as OracleTooLarge
from .planar import ArcMultiplicityError, ColoringError, MissingOrientation, NonPlanarError, ParseError, parse_pd
from .skein import BRACKET, PKBP, InvariantViolation
from .verify import render_report, run_verify

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_STRICT = 2
EXIT_INTERNAL = 3

INPUT_ERRORS = (ParseError, ArcMultiplicityError, NonPlanarError, ColoringError,
                MissingOrientation, NotClosed, EmptyDiagram, InvalidOrder,
                InvalidCutting, TooLarge, OracleTooLarge, ValueError, OSError)
INTERNAL_ERRORS = (NotDivisible, InvariantViolation)


def _read_pd(value: str):
    text = Path(value[1:]).read_text() if value.startswith("@") else value
    return parse_pd(text)


def _read_order(value: str):
    if value in ("greedy", "anneal", "exact"):
        return value
    if value.startswith("@"):
        return Cutting.from_json(json.loads(Path(value[1:]).read_text()))
    raise ParseError(f"unknown order {value!r} (greedy|anneal|exact|@cutting.json)")


def _parse_orientation(text: str | None):
    if text is None:
        return None
    signs = []
    for ch in text:
        if ch == "+":
            signs.append(1)
        elif ch == "-":
            signs.append(-1)
        else:
            raise ParseError(f"orientation must be a string of + and -, got {text!r}")
    return signs


def cmd_compute(args) -> int:
    d = _read_pd(args.pd)
    order = _read_order(args.order)
    if isinstance(order, Cutting):
        verify_cutting(d, order)
    if args.trace:
        cutting = make_cutting(d, order, args.seed)

        def tracer(ev, state):
            print(f"-- {ev}", file=sys.stderr)
            for line in state.dump_lines():
                print("   " + line, file=sys.stderr)

        fold_cutting(d, cutting, BRACKET if args.mode != "pkbp" else PKBP, trace_fn=tracer)
    if not d.is_closed:
        expansion = expand_tangle(d, order=order, seed=args.seed,
                                  mode=PKBP if args.mode == "pkbp" else BRACKET)
        if args.json:
            payload = {
                "mode": expansion.mode,
                "girth": expansion.girth_used,
                "peak_state_size": expansion.peak_state_size,
                "expansion": {format_matching(m): str(p) for m, p in sorted(expansion.coeffs.items())},
                "checks": {k: v for k, v in expansion.diagnostics.items() if k != "timings"},
            }
            print(json.dumps(payload, indent=2, sort_keys=True))
        else:
            for m, p in sorted(expansion.coeffs.items()):
                print(f"{format_matching(m)} : {p}")
        bad = [k for k, v in expansion.diagnostics.items()
               if isinstance(v, dict) and not v.get("ok", True)]
        return EXIT_STRICT if args.strict and bad else EXIT_OK

    if args.mode == "bracket":
        result = compute_bracket(d, order=order, seed=args.seed)
    elif args.mode == "pkbp":
        result = compute_pkbp(d, order=order, seed=args.seed)
    elif args.mode == "jones":
        result = compute_jones(d, orientation=_parse_orientation(args.oriented),
                               order=order, seed=args.seed)
    else:
        raise ParseError(f"unknown mode {args.mode!r}")
    if args.json:
        print(json.dumps(result.to_json(), indent=2, sort_keys=True))
    else:
        print(result.polynomial)
        if not result.ok:
            print("failed checks:", file=sys.stderr)
            for key, info in result.diagnostics.items():
                if isinstance(info, dict) and not info.get("ok", True):
                    print(f"  {key}: {info.get('violations', [])[:3]}", file=sys.stderr)
    return EXIT_STRICT if args.strict and not result.ok else EXIT_OK


def cmd_girth(args) -> int:
    d = _read_pd(args.pd)
    order = _read_order(args.order)
    cutting = make_cutting(d, order, args.seed)
    bound = sqrt_bound_check(d, cutting)
    payload = {
        "n": d.n,
        "girth": cutting.girth,
        "sqrt_bound": bound["bound"],
        "within_bound": bound["ok"],
        "state_cap": str(catalan(cutting.girth // 2)),
        "events": len(cutting.events),
    }
    if args.json:
        payload["cutting"] = cutting.to_json()
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"n={d.n} girth={cutting.girth} bound={bound['bound']:.2f} "
              f"ok={bound['ok']} state_cap=Catalan({cutting.girth // 2})={payload['state_cap']}")
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_verify(corpus_dir=args.corpus, max_n=args.max_n, seed=args.seed)
    print(render_report(report, as_json=args.json))
    return EXIT_OK if report["ok"] else EXIT_STRICT


def _bench_families(kmax: int, seed: int):
    ks = [k for k in (10, 25, 50, 100, 200) if k <= kmax]
    for k in ks:
        yield f"torus(2,{k})", torus_link(k)
    import random

    rng = random.Random(seed)
    for length in (8, 12, 16, 20):
        word = []
        for _ in range(length):
            gen = rng.randint(1, 2)
            word.extend([gen if rng.random() < 0.5 else -gen] * rng.randint(1, 3))
        yield f"twist_chain_{length}", braid_closure(word[:length], 3)


def cmd_bench(args) -> int:
    rows = []
    for name, d in _bench_families(args.kmax, args.seed):
        t0 = time.perf_counter()
        result = compute_bracket(d, order="greedy")
        engine_ms = (time.perf_counter() - t0) * 1000
        oracle_ms = None
        if d.n <= min(args.oracle_max_n, BRACKET_CAP):
            t0 = time.perf_counter()
            brute_force_bracket(d)
            oracle_ms = (time.perf_counter() - t0) * 1000
        rows.append({
            "family": name, "n": d.n, "girth": result.girth_used,
            "peak_state": result.peak_state_size,
            "engine_ms": round(engine_ms, 3),
            "oracle_ms": round(oracle_ms, 3) if oracle_ms is not None else None,
        })
    if args.json:
        print(json.dumps(rows, indent=2, sort_keys=True))
    else:
        print(f"{'family':18s} {'n':>4s} {'girth':>5s} {'peak':>5s} {'engine_ms':>10s} {'oracle_ms':>10s}")
        for r in rows:
            o = f"{r['oracle_ms']:.2f}" if r["oracle_ms"] is not None else "-"
            print(f"{r['family']:18s} {r['n']:4d} {r['girth']:5d} {r['peak_state']:5d} "
                  f"{r['engine_ms']:10.2f} {o:>10s}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skeinscan",
        description="Bracket polynomials of knots and links by frontier scanning",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute a polynomial for one diagram")
    p.add_argument("--pd", required=True, help="inline PD text or @file")
    p.add_argument("--mode", default="bracket", choices=["bracket", "pkbp", "jones"])
    p.add_argument("--order", default="greedy", help="greedy|anneal|exact|@cutting.json")
    p.add_argument("--oriented", default=None, help="orientation signs per component, e.g. +-")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strict", action="store_true", help="exit 2 when any check fails")
    p.add_argument("--json", action="store_true")
    p.add_argument("--trace", action="store_true", help="dump the state after every event")
    p.set_defaults(fn=cmd_compute)

    p = sub.add_parser("girth", help="analyze the cutting of a diagram")
    p.add_argument("--pd", required=True)
    p.add_argument("--order", default="greedy")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_girth)

    p = sub.add_parser("verify", help="run the verification suites")
    p.add_argument("--corpus", default=None, help="corpus directory (default: bundled)")
    p.add_argument("--max-n", type=int, default=12, dest="max_n")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("bench", help="scaling benchmarks")
    p.add_argument("--kmax", type=int, default=200)
    p.add_argument("--oracle-max-n", type=int, default=18, dest="oracle_max_n")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except INTERNAL_ERRORS as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
