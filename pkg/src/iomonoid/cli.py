"""Command line interface: ``iomonoid <command> --n N ...``.

Exit status: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import monoid
from .chain import generator, parse_generator
from .monoid import Variant
from .presentation import normal_forms, tietze, verify
from .presentation.trace import check_trace
from .presentation.words import (
    canonical_system_name,
    expected_size,
    format_word,
    parse_word,
    relations,
)
from . import rewriting

_PRESENTATION_CHOICES = ["R", "R-", "R+", "R'", "Rminus", "Rplus", "Rprime"]
_VARIANT_OF = {"R": Variant.IO, "Rprime": Variant.IO, "Rminus": Variant.IO_MINUS,
               "Rplus": Variant.IO_PLUS}
# tables above this size are printed as counts only
_ENUMERATE_LIMIT = 16


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, separators=(",", ":"), sort_keys=False))
    else:
        print(text)


def _variant(text: str) -> Variant:
    try:
        return Variant.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _cmd_gen(args) -> int:
    g = parse_generator(args.name)
    alpha = generator(g, args.n)
    _emit(args, {"n": args.n, "name": str(g), "images": list(alpha.images)}, str(alpha))
    return 0


def _cmd_enumerate(args) -> int:
    if args.n > _ENUMERATE_LIMIT:
        raise UsageError(f"enumeration is limited to n <= {_ENUMERATE_LIMIT}")
    table = monoid.enumerate_direct(args.n, args.variant)
    if args.json:
        print(table.to_json())
    else:
        for alpha in table:
            print(alpha)
        print(f"# {len(table)} elements")
    return 0


def _cmd_count(args) -> int:
    formula = monoid.cardinality_formula(args.n, args.variant)
    strata = monoid.count_by_image_size(args.n, args.variant)
    enumerated = (len(monoid.enumerate_direct(args.n, args.variant))
                  if args.n <= _ENUMERATE_LIMIT else None)
    payload = {"n": args.n, "variant": args.variant.value, "formula": formula,
               "enumerated": enumerated, "by_image_size": {str(k): c for k, c in strata.items()}}
    lines = [str(formula)]
    if enumerated is not None:
        lines.append(f"enumerated: {enumerated}")
    lines.append("by image size: " + " ".join(f"{k}:{c}" for k, c in strata.items()))
    _emit(args, payload, "\n".join(lines))
    return 0 if enumerated in (None, formula) else 1


def _cmd_rank(args) -> int:
    table = monoid.enumerate_direct(args.n, args.variant)
    try:
        gens = monoid.minimum_generating_set(table, args.budget)
    except monoid.RankSearchExhausted as exc:
        _emit(args, {"n": args.n, "variant": args.variant.value, "rank": None,
                     "lower_bound": exc.lower_bound},
              f"unknown (rank >= {exc.lower_bound}; budget exhausted)")
        return 1
    payload = {"n": args.n, "variant": args.variant.value, "rank": len(gens),
               "generators": [list(g.images) for g in gens]}
    text = f"{len(gens)}\ngenerators: " + " ".join(map(str, gens))
    _emit(args, payload, text)
    return 0


def _cmd_nf(args) -> int:
    w = parse_word(args.word, args.n)
    result, stratum, trace = normal_forms.canonical_form(w, args.n)
    ok = check_trace(trace, relations(args.n, "R"), result)
    payload = {"n": args.n, "word": format_word(w), "normal_form": format_word(result),
               "stratum": str(stratum), "trace_ok": ok}
    lines = [format_word(result), f"stratum: {stratum}"]
    if args.trace:
        payload["trace"] = trace.to_dict()
        lines.append(trace.pretty())
        lines.append(f"trace check: {'ok' if ok else 'FAILED'}")
    _emit(args, payload, "\n".join(lines))
    return 0 if ok else 1


def _cmd_verify(args) -> int:
    name = canonical_system_name(args.presentation)
    workers = verify.thread_count(args.threads)
    if name == "Rprime":
        report = verify.verify_by_rewriting(args.n, relations(args.n, name),
                                            max_word_len=args.max_word_len)
    else:
        report = verify.verify_presentation(args.n, relations(args.n, name),
                                            max_word_len=args.max_word_len, workers=workers)
    _emit(args, report.to_dict(), report.pretty())
    return 0 if report.verdict else 1


def _cmd_kb(args) -> int:
    name = canonical_system_name(args.presentation)
    completed = rewriting.complete(rewriting.orient(relations(args.n, name)), args.fuel)
    expected = len(monoid.enumerate_direct(args.n, _VARIANT_OF[name]))
    count = None
    if completed.status is rewriting.Status.COMPLETE:
        count = rewriting.count_irreducible(completed)
    payload = {"n": args.n, "presentation": name, "status": completed.status.value,
               "rules": len(completed.rules), "pairs_examined": completed.pairs_examined,
               "irreducible": count, "monoid_size": expected}
    if args.dump_rules:
        payload["rule_list"] = json.loads(completed.to_json())["rules"]
    lines = [f"status: {completed.status.value}",
             f"rules: {len(completed.rules)} (critical pairs examined: {completed.pairs_examined})",
             f"irreducible words: {count}",
             f"monoid size: {expected}"]
    if args.dump_rules and not args.json:
        lines.append(completed.to_json())
    _emit(args, payload, "\n".join(lines))
    return 0 if count == expected else 1


def _cmd_tietze(args) -> int:
    system = tietze.tietze_reduce(args.n)
    return _print_system(args, system)


def _cmd_relations(args) -> int:
    name = canonical_system_name(args.presentation)
    return _print_system(args, relations(args.n, name))


def _print_system(args, system) -> int:
    if args.json:
        print(system.to_json())
    else:
        for rel in system:
            print(f"{rel.label:5} {rel}")
        print(f"# {len(system)} relations (expected {expected_size(system.n, system.name)})")
    return 0


def _cmd_flip_check(args) -> int:
    results = monoid.flip_suite(args.n)
    text = "\n".join(f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok in results.items())
    _emit(args, {"n": args.n, "checks": results}, text)
    return 0 if all(results.values()) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iomonoid",
        description="Order-preserving interval-image transformations of a finite chain.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--n", type=int, required=True, help="chain size")
        p.add_argument("--json", action="store_true", help="machine readable output")
        p.add_argument("--threads", type=int, default=None,
                       help="worker processes (default: $IOMONOID_THREADS or 1)")
        p.set_defaults(func=func)
        return p

    p = add("gen", _cmd_gen, "print a generator a<i> or b<i>")
    p.add_argument("--name", required=True)
    for name, func, help_text in (("enumerate", _cmd_enumerate, "list the monoid elements"),
                                  ("count", _cmd_count, "cardinality by formula and enumeration"),
                                  ("rank", _cmd_rank, "exact rank by subset search")):
        p = add(name, func, help_text)
        p.add_argument("--variant", type=_variant, default=Variant.IO, help="io, io- or io+")
        if name == "rank":
            p.add_argument("--budget", type=int, default=100_000)
    p = add("nf", _cmd_nf, "normal form of a word")
    p.add_argument("--word", required=True, help='e.g. "b2 a2"; "e" is the empty word')
    p.add_argument("--trace", action="store_true")
    p = add("verify", _cmd_verify, "check a presentation")
    p.add_argument("--presentation", choices=_PRESENTATION_CHOICES, default="R")
    p.add_argument("--max-word-len", type=int, default=None)
    p = add("kb", _cmd_kb, "Knuth-Bendix completion and irreducible-word count")
    p.add_argument("--presentation", choices=_PRESENTATION_CHOICES, default="R")
    p.add_argument("--fuel", type=int, default=100_000)
    p.add_argument("--dump-rules", action="store_true")
    add("tietze", _cmd_tietze, "reduced presentation on a1..a(n-2), b(n-1)")
    add("flip-check", _cmd_flip_check, "flip automorphism property suite")
    p = add("relations", _cmd_relations, "list the relations of a presentation")
    p.add_argument("--presentation", choices=_PRESENTATION_CHOICES, default="R")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.n < 1:
        print("error: --n must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
