"""Verify that a relation system presents IO_n, IO_n^- or IO_n^+.

Four conditions are checked:

1. the generators satisfy every relation;
2. every word in an exhaustive sample rewrites, by a checked derivation,
   into the candidate set of normal forms, with its value preserved;
3. the candidate set is no larger than the monoid;
4. evaluation maps the candidate set bijectively onto the monoid.

Conditions 1-3 already suffice; 4 is the direct cross-check.
"""
from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

from ..monoid import Variant, enumerate_direct
from .normal_forms import (
    canonical_A,
    canonical_B,
    canonical_form,
    enumerate_W,
    enumerate_W_minus,
    enumerate_W_plus,
    in_W_minus,
    in_W_plus,
    stratum_of,
)
from .trace import DerivationTrace, check_trace
from .words import (
    Letter,
    RelationSystem,
    Word,
    alphabet,
    canonical_system_name,
    evaluate_word,
    format_word,
    relations,
)

__all__ = ["Canonicalizer", "VerificationReport", "canonicalizer_for", "verify_presentation",
           "verify_by_rewriting", "default_max_word_len", "thread_count"]


@dataclass(frozen=True)
class Canonicalizer:
    """Normal-form machinery matching one presentation."""

    name: str
    system_name: str
    variant: Variant
    rewrite: Callable[[Word, int], tuple[Word, DerivationTrace]]
    targets: Callable[[int], list[Word]]
    contains: Callable[[Word, int], bool]


def _rewrite_W(w, n):
    result, _, trace = canonical_form(w, n)
    return result, trace


def _targets_W(n):
    return [w for w, _ in enumerate_W(n)]


def _contains_W(w, n):
    return stratum_of(w, n) is not None


def _contains_W_minus(w, n):
    return in_W_minus(w)


def _contains_W_plus(w, n):
    return in_W_plus(w)


CANONICALIZERS = {
    "R": Canonicalizer("W", "R", Variant.IO, _rewrite_W, _targets_W, _contains_W),
    "Rminus": Canonicalizer("W-", "Rminus", Variant.IO_MINUS, canonical_A, enumerate_W_minus,
                            _contains_W_minus),
    "Rplus": Canonicalizer("W+", "Rplus", Variant.IO_PLUS, canonical_B, enumerate_W_plus,
                           _contains_W_plus),
}


def canonicalizer_for(name: str) -> Canonicalizer:
    name = canonical_system_name(name)
    try:
        return CANONICALIZERS[name]
    except KeyError:
        raise ValueError(f"no hand-built normal forms for {name}; use the rewriting oracle") from None


def default_max_word_len(n: int) -> int:
    return 6 if n <= 5 else 4


@dataclass
class VerificationReport:
    n: int
    presentation: str
    canonicalizer: str
    relation_count: int
    relations_hold: bool
    failing_relations: list[str] = field(default_factory=list)
    max_word_len: int = 0
    words_checked: int = 0
    closure_ok: bool = False
    closure_failures: list[dict] = field(default_factory=list)
    complete: bool = True
    W_size: int = 0
    M_size: int = 0
    size_ok: bool = False
    bijective: bool = False
    verdict: bool = False

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    def pretty(self) -> str:
        def mark(ok):
            return "ok" if ok else "FAILED"
        lines = [
            f"presentation {self.presentation} (n={self.n}, {self.relation_count} relations, "
            f"normal forms {self.canonicalizer})",
            f"  1. relations hold in the monoid:    {mark(self.relations_hold)}",
            f"  2. words up to length {self.max_word_len} rewritten: {self.words_checked} "
            f"{'' if self.complete else '(INCOMPLETE) '}{mark(self.closure_ok)}",
            f"  3. |W| = {self.W_size} <= |M| = {self.M_size}: {mark(self.size_ok)}",
            f"  4. evaluation W -> M bijective:     {mark(self.bijective)}",
            f"verdict: {'VERIFIED' if self.verdict else 'NOT VERIFIED'}",
        ]
        for rel in self.failing_relations[:5]:
            lines.append(f"  failing relation: {rel}")
        for fail in self.closure_failures[:5]:
            lines.append(f"  failing word: {fail['word']} ({fail['reason']})")
        return "\n".join(lines)


def _check_words(args) -> tuple[int, list[dict]]:
    n, system, canon, words = args
    failures = []
    for w in words:
        try:
            result, trace = canon.rewrite(w, n)
        except (AssertionError, ValueError) as exc:
            failures.append({"word": format_word(w), "reason": f"rewrite raised: {exc}"})
            continue
        if not canon.contains(result, n):
            reason = f"result {format_word(result)} outside the normal-form set"
        elif not check_trace(trace, system, result):
            outside = sorted(trace.labels() - set(system.families()))
            if outside:
                reason = "derivation uses relations outside the system: " + ",".join(outside)
            else:
                reason = "derivation does not replay"
        elif evaluate_word(result, n) != evaluate_word(w, n):
            reason = "value not preserved"
        else:
            continue
        failures.append({"word": format_word(w), "result": format_word(result), "reason": reason})
    return len(words), failures


def _word_sample(letters: Sequence[Letter], max_len: int, max_words: int | None):
    words, complete = [], True
    for length in range(max_len + 1):
        for w in itertools.product(letters, repeat=length):
            if max_words is not None and len(words) >= max_words:
                return words, False
            words.append(w)
    return words, complete


def verify_presentation(n: int, system: RelationSystem | str = "R",
                        canonicalizer: Canonicalizer | None = None, *,
                        max_word_len: int | None = None, max_words: int | None = None,
                        workers: int = 1) -> VerificationReport:
    if isinstance(system, str):
        system = relations(n, system)
    canon = canonicalizer or canonicalizer_for(system.name)
    max_len = default_max_word_len(n) if max_word_len is None else max_word_len

    failing = [f"{r.label}: {r}" for r in system
               if evaluate_word(r.lhs, n) != evaluate_word(r.rhs, n)]
    report = VerificationReport(n, system.name, canon.name, len(system),
                                relations_hold=not failing, failing_relations=failing,
                                max_word_len=max_len)

    words, report.complete = _word_sample(alphabet(n, canon.system_name), max_len, max_words)
    if workers > 1 and len(words) > 2000:
        chunk = -(-len(words) // (workers * 4))
        batches = [(n, system, canon, words[p:p + chunk])
                   for p in range(0, len(words), chunk)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_check_words, batches))
    else:
        results = [_check_words((n, system, canon, words))]
    report.words_checked = sum(count for count, _ in results)
    report.closure_failures = [f for _, fails in results for f in fails]
    report.closure_ok = report.complete and not report.closure_failures

    targets = canon.targets(n)
    monoid = enumerate_direct(n, canon.variant)
    report.W_size, report.M_size = len(set(targets)), len(monoid)
    report.size_ok = len(targets) == report.W_size and report.W_size <= report.M_size
    values = [evaluate_word(w, n) for w in targets]
    report.bijective = (len(set(values)) == len(values)
                        and set(values) == monoid.element_set)
    report.verdict = (report.relations_hold and report.closure_ok
                      and report.size_ok and report.bijective)
    return report


def thread_count(explicit: int | None = None) -> int:
    if explicit is not None:
        return max(1, explicit)
    return max(1, int(os.environ.get("IOMONOID_THREADS", "1")))


_VARIANT_OF = {"R": Variant.IO, "Rprime": Variant.IO, "Rminus": Variant.IO_MINUS,
               "Rplus": Variant.IO_PLUS}


def verify_by_rewriting(n: int, system: RelationSystem | str, *, fuel: int = 100_000,
                        max_word_len: int | None = None) -> VerificationReport:
    """Same four conditions, with shortlex irreducible words as the normal-form set.

    This is the route for R', which has no hand-built normal forms.  Words
    are rewritten by the completed system, whose rules are consequences of
    the relations but are not themselves relations of the system, so no
    per-step trace is checked here.
    """
    from ..rewriting import Status, complete, irreducible_words, normalize, orient

    if isinstance(system, str):
        system = relations(n, system)
    max_len = default_max_word_len(n) if max_word_len is None else max_word_len
    failing = [f"{r.label}: {r}" for r in system
               if evaluate_word(r.lhs, n) != evaluate_word(r.rhs, n)]
    report = VerificationReport(n, system.name, "shortlex irreducibles", len(system),
                                relations_hold=not failing, failing_relations=failing,
                                max_word_len=max_len)
    completed = complete(orient(system), fuel)
    monoid = enumerate_direct(n, _VARIANT_OF[system.name])
    report.M_size = len(monoid)
    if completed.status is not Status.COMPLETE:
        report.complete = False
        report.closure_failures = [{"word": "-", "reason": f"completion {completed.status.value}"}]
        return report
    targets = irreducible_words(completed, cap=4 * len(monoid))
    target_set = set(targets)
    words, _ = _word_sample(completed.alphabet, max_len, None)
    for w in words:
        result = normalize(w, completed)
        if result not in target_set:
            report.closure_failures.append({"word": format_word(w), "reason": "not irreducible"})
        elif evaluate_word(result, n) != evaluate_word(w, n):
            report.closure_failures.append({"word": format_word(w), "reason": "value not preserved"})
    report.words_checked = len(words)
    report.closure_ok = not report.closure_failures
    report.W_size = len(targets)
    report.size_ok = report.W_size <= report.M_size
    values = [evaluate_word(w, n) for w in targets]
    report.bijective = len(set(values)) == len(values) and set(values) == monoid.element_set
    report.verdict = (report.relations_hold and report.closure_ok
                      and report.size_ok and report.bijective)
    return report
