"""Command line entry point.

Exit codes: 0 success, 2 no witness (or a negative check), 3 invalid input,
4 internal precondition failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import pipeline as pl
from .cover import CoverError, describe_generator, elevations_of
from .curves import elevation_self_intersection
from .groups import GroupError, conjugating_element, is_almost_conjugate
from .hyperbolic import NonHyperbolic, length_of, parse_rep, rep_for_rose, self_intersection_oracle
from .ribbon import TWO_LETTER_ORDERS, RibbonError, RibbonGraph, self_intersection
from .traces import trace_polynomial
from .words import CyclicWord, WordError, parse_word

OK, NO_WITNESS, INVALID, INTERNAL = 0, 2, 3, 4


def _experiment_args(p: argparse.ArgumentParser):
    src = p.add_mutually_exclusive_group()
    src.add_argument("--config", help="JSON experiment config")
    src.add_argument("--example", type=int, choices=(1, 2, 3), help="built-in example config")
    p.add_argument("--convention", choices=("figure", "pants"), help="ribbon order at the base vertex")


def _config(args) -> dict:
    if args.config:
        cfg = pl.load_config(args.config)
    elif args.example:
        cfg = pl.builtin_config(args.example)
    else:
        raise pl.ConfigError("give --config PATH or --example N")
    if getattr(args, "convention", None):
        cfg["convention"] = args.convention
    return cfg


def _emit(args, text: str):
    print(text, end="" if text.endswith("\n") else "\n")


def _keys(args):
    return [args.subgroup] if getattr(args, "subgroup", None) else ["A", "B"]


# ---------------------------------------------------------------------------


def cmd_gassmann(args) -> int:
    exp = pl.resolve(_config(args))
    G, A, B = exp.group, exp.subgroups["A"], exp.subgroups["B"]
    almost = is_almost_conjugate(G, A, B)
    conj = conjugating_element(G, A, B)
    print(f"almost_conjugate: {almost}")
    print(f"conjugator: {'absent' if conj is None else pl.format_element(G, conj)}")
    return OK if almost else NO_WITNESS


def cmd_cover(args) -> int:
    cfg = _config(args)
    exp = pl.resolve(cfg)
    if args.format == "dot-bundle":
        files = pl.report_emit({"name": exp.name}, "dot-bundle", args.out, cfg)
        if args.out is None:
            for text in files.values():
                _emit(args, text)
        return OK
    for key in _keys(args):
        cv = exp.cover(key)
        print(f"{key}: index {cv.n_vertices}, cover genus = {pl.cover_genus(cv)}")
        for g in cv.quotient.support():
            print(f"  {cv.alphabet.names[g]}: {describe_generator(cv, g)}")
    return OK


def cmd_elevations(args) -> int:
    exp = pl.resolve(_config(args))
    w = exp.word(args.word)
    for key in _keys(args):
        for e in elevations_of(exp.cover(key), w):
            print(f"{key}\t{exp.coset_name(key, e.start_coset)}\tdegree {e.degree}")
    return OK


def cmd_simple(args) -> int:
    exp = pl.resolve(_config(args))
    w = exp.word(args.word)
    for key in _keys(args):
        cv = exp.cover(key)
        rows = [e for e in elevations_of(cv, w) if e.degree == args.degree]
        counts = [elevation_self_intersection(cv, e).count for e in rows]
        names = ", ".join(f"{exp.coset_name(key, e.start_coset)}:{c}" for e, c in zip(rows, counts))
        print(f"{key}: {sum(c == 0 for c in counts)} simple of {len(rows)} degree-{args.degree} [{names}]")
    return OK


def cmd_witness(args) -> int:
    cfg = _config(args)
    n = args.max_exponent or cfg.get("search", {}).get("max_exponent", 3)
    found = pl.witness_search(cfg, n, args.jobs)
    if args.format == "json":
        print(json.dumps(found, indent=2, sort_keys=True))
    else:
        for f in found:
            print(f"{f['word']}\tdegree {f['degree']}\tA {f['simple_counts']['A']}\tB {f['simple_counts']['B']}")
    return OK if found else NO_WITNESS


def cmd_isospectral(args) -> int:
    exp = pl.resolve(_config(args))
    rep = pl.combinatorial_isospectrality(exp.cover("A"), exp.cover("B"))
    print(f"cycle types agree on {len(rep.cycle_types)} elements: {'PASS' if rep.passed else 'FAIL'}")
    for g in rep.violations[:10]:
        ta, tb = rep.cycle_types[g]
        print(f"  {pl.format_element(exp.group, g)}: {ta} vs {tb}")
    return OK if rep.passed else NO_WITNESS


def cmd_trace(args) -> int:
    w = parse_word(args.word)
    poly = trace_polynomial(w)
    print(poly)
    if args.seed is not None:
        rng = np.random.default_rng(args.seed)
        worst = 0.0
        for _ in range(args.samples):
            mats = []
            for _ in range(2):
                m = rng.normal(size=(2, 2))
                d = np.linalg.det(m)
                if d < 0:
                    m[0] *= -1
                mats.append(m / np.sqrt(abs(d)))
            a, b = mats
            gens = {1: a, 2: b, -1: np.linalg.inv(a), -2: np.linalg.inv(b)}
            m = np.eye(2)
            for x in w.letters:
                m = m @ gens[x]
            exact = np.trace(m)
            val = poly(np.trace(a), np.trace(b), np.trace(a @ b))
            worst = max(worst, abs(val - exact) / max(1.0, abs(exact)))
        print(f"max relative error over {args.samples} random pairs: {worst:.3e}")
    return OK


def cmd_selfint(args) -> int:
    w = CyclicWord(parse_word(args.word))
    order = TWO_LETTER_ORDERS[args.rose]
    g = RibbonGraph.rose(order)
    count = self_intersection(g, g.path_from_letters(0, w.letters)).count
    print(f"combinatorial: {count}")
    if args.oracle_radius:
        rep = parse_rep(args.rep) if args.rep else rep_for_rose(order)
        o = self_intersection_oracle(rep, w.letters, radius=args.oracle_radius)
        print(f"oracle (radius {args.oracle_radius}, traces {rep.traces}): {o}")
        print(f"length: {length_of(rep, w.letters):.12f}")
        return OK if o == count else INTERNAL
    return OK


def cmd_report(args) -> int:
    cfg = _config(args)
    if args.oracle_radius:
        cfg.setdefault("oracle", {})["radius"] = args.oracle_radius
    report = pl.run_pipeline(cfg, search=args.search, max_exponent=args.max_exponent, jobs=args.jobs)
    files = pl.report_emit(report, args.format, args.out, cfg)
    if args.out is None:
        for text in files.values():
            _emit(args, text)
    if "witness" in cfg:
        return OK if report["witness"]["is_witness"] else NO_WITNESS
    return OK


def cmd_example(args) -> int:
    args.example, args.config = args.number, None
    return cmd_report(args)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sunada", description="Sunada covers and simple length spectra")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, experiment=True):
        s = sub.add_parser(name, help=help_)
        if experiment:
            _experiment_args(s)
        s.set_defaults(func=fn)
        return s

    add("gassmann", cmd_gassmann, "almost conjugacy and conjugacy of A and B")
    s = add("cover", cmd_cover, "coset actions and genus")
    s.add_argument("--subgroup", choices=("A", "B"))
    s.add_argument("--format", choices=("text", "dot-bundle"), default="text")
    s.add_argument("--out")
    s = add("elevations", cmd_elevations, "elevations of a word")
    s.add_argument("--word", required=True)
    s.add_argument("--subgroup", choices=("A", "B"))
    s = add("simple", cmd_simple, "self-intersection of each elevation of a given degree")
    s.add_argument("--word", required=True)
    s.add_argument("--degree", type=int, default=1)
    s.add_argument("--subgroup", choices=("A", "B"))
    s = add("witness", cmd_witness, "search x^j y^l for certified witnesses")
    s.add_argument("--max-exponent", type=int)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--format", choices=("text", "json"), default="text")
    add("isospectral", cmd_isospectral, "compare cycle types on both coset spaces")
    s = add("trace", cmd_trace, "trace polynomial of a two-letter word", experiment=False)
    s.add_argument("--word", required=True)
    s.add_argument("--seed", type=int, help="also check against random SL2(R) pairs")
    s.add_argument("--samples", type=int, default=1000)
    s = add("selfint", cmd_selfint, "self-intersection of a two-letter word on a rose", experiment=False)
    s.add_argument("--word", required=True)
    s.add_argument("--rose", choices=sorted(TWO_LETTER_ORDERS), default="pants")
    s.add_argument("--oracle-radius", type=int)
    s.add_argument("--rep", help="traces x,y,z for the oracle")
    for name, fn, help_ in (("report", cmd_report, "full witness report"),
                            ("example", cmd_example, "report for a built-in example")):
        s = add(name, fn, help_, experiment=(name == "report"))
        if name == "example":
            s.add_argument("number", type=int, choices=(1, 2, 3))
            s.add_argument("--convention", choices=("figure", "pants"))
        s.add_argument("--format", choices=("json", "text", "dot-bundle"), default="text")
        s.add_argument("--out")
        s.add_argument("--search", action="store_true", help="also run the witness search")
        s.add_argument("--max-exponent", type=int)
        s.add_argument("--jobs", type=int, default=1)
        s.add_argument("--oracle-radius", type=int)
    return p


INVALID_ERRORS = (pl.ConfigError, WordError, GroupError, CoverError, RibbonError, NonHyperbolic, ValueError)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except INVALID_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return INTERNAL


if __name__ == "__main__":
    sys.exit(main())
