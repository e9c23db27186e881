"""Acceptance gate: one check per criterion, each held to its runtime bound.

Run with pytest (a PASS/FAIL line per criterion is printed in the terminal
summary) or directly: ``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import subprocess
import sys
import time
from math import comb

import pytest

from iomonoid.chain import GeneratorId, compose, flip, generator, identity
from iomonoid.monoid import (
    Variant,
    enumerate_closure,
    enumerate_direct,
    flip_suite,
    rank_exact,
)
from iomonoid.presentation.normal_forms import W_size, canonical_form, enumerate_W, stratum_count, stratum_of
from iomonoid.presentation.trace import check_trace
from iomonoid.presentation.verify import thread_count, verify_presentation
from iomonoid.presentation.words import alphabet, evaluate_word, relations, satisfies_relations
from iomonoid.rewriting import Status, complete, count_irreducible, orient

IO, MINUS, PLUS = Variant.IO, Variant.IO_MINUS, Variant.IO_PLUS
RESULTS: dict[int, tuple[bool, str]] = {}


def gen(family, i, n):
    return generator(GeneratorId(family, i), n)


def cardinality():
    for n in range(1, 13):
        if n >= 2 and len(enumerate_direct(n, IO)) != (n + 1) * 2 ** (n - 2):
            return f"|IO_{n}| wrong"
        for v in (MINUS, PLUS):
            if len(enumerate_direct(n, v)) != 2 ** (n - 1):
                return f"|{v.value}_{n}| wrong"
    return None


def generation():
    for n in range(3, 7):
        gens = [gen("a", i, n) for i in range(1, n - 1)] + [gen("b", n - 1, n)]
        if enumerate_closure(n, gens).element_set != enumerate_direct(n, IO).element_set:
            return f"rank-(n-1) set does not generate IO_{n}"
        a_letters = [gen("a", i, n) for i in range(1, n)]
        if enumerate_closure(n, a_letters).element_set != enumerate_direct(n, MINUS).element_set:
            return f"A does not generate IO_{n}^-"
    return None


def rank():
    expected = [(3, IO, 2), (4, IO, 3), (3, MINUS, 2), (4, MINUS, 3), (5, MINUS, 4),
                (2, IO, 2), (1, IO, 0)]
    for n, v, r in expected:
        got = rank_exact(enumerate_direct(n, v))
        if got != r:
            return f"rank {v.value}_{n} = {got}, expected {r}"
    return None


def relation_satisfaction():
    closed = {"R": lambda n: (3 * n * n - n - 2) // 2, "Rminus": lambda n: (n * n - n) // 2,
              "Rplus": lambda n: (n * n - n) // 2, "Rprime": lambda n: (3 * n * n - 7 * n + 4) // 2}
    for n in range(2, 9):
        for name, count in closed.items():
            if name == "Rprime" and n < 3:
                continue
            system = relations(n, name)
            if len(system) != count(n):
                return f"{name} at n={n} has {len(system)} relations"
            if not satisfies_relations(n, system):
                return f"{name} fails at n={n}"
    return None


def presentation_verification():
    for n in range(2, 6):
        for name in ("R", "Rminus", "Rplus"):
            report = verify_presentation(n, name, max_word_len=6, workers=thread_count())
            if not report.verdict:
                return f"{name} at n={n}: {report.pretty()}"
    return None


def kb_oracle():
    variant = {"R": IO, "Rminus": MINUS, "Rplus": PLUS, "Rprime": IO}
    for n in (3, 4, 5):
        for name, v in variant.items():
            result = complete(orient(relations(n, name)), 100_000)
            if result.status is not Status.COMPLETE:
                return f"{name} at n={n}: {result.status.value}"
            count, size = count_irreducible(result), len(enumerate_direct(n, v))
            if count != size:
                return f"{name} at n={n}: {count} irreducible words, monoid has {size}"
    return None


def canonical_form_soundness():
    import itertools
    for n in (3, 4):
        system = relations(n, "R")
        for length in range(7):
            for w in itertools.product(alphabet(n), repeat=length):
                result, stratum, trace = canonical_form(w, n)
                if (stratum_of(result, n) != stratum
                        or evaluate_word(result, n) != evaluate_word(w, n)
                        or not check_trace(trace, system, result)):
                    return f"counterexample at n={n}: {w}"
    return None


def summation_identity():
    for n in range(2, 17):
        total = sum(stratum_count(n, k, ell) for ell in range(n) for k in range(n))
        if total != (n + 1) * 2 ** (n - 2):
            return f"sum {total} at n={n}"
        # the W- row must agree with the plain binomial expansion
        if sum(comb(n - 1, k) for k in range(n)) != sum(stratum_count(n, k, 0) for k in range(n)):
            return f"W- row wrong at n={n}"
    for n in range(1, 9):
        words = [w for w, _ in enumerate_W(n)]
        if len(words) != len(set(words)) or len(words) != W_size(n):
            return f"enumerate_W({n}) has {len(words)} words ({len(set(words))} distinct)"
    return None


def flip_suite_check():
    for n in range(1, 6):
        failed = [name for name, ok in flip_suite(n).items() if not ok]
        if failed:
            return f"n={n}: {failed}"
        for i in range(1, n):
            if flip(gen("a", i, n)) != gen("b", n - i, n):
                return f"flip(a{i}) != b{n - i} at n={n}"
        if {flip(x) for x in enumerate_direct(n, MINUS)} != enumerate_direct(n, PLUS).element_set:
            return f"flip(IO^-) != IO^+ at n={n}"
    if flip(compose(gen("a", 1, 3), gen("b", 1, 3))) != compose(gen("b", 2, 3), gen("a", 2, 3)):
        return "flip is not multiplicative on a1 b1"
    if flip(identity(4)) != identity(4):
        return "flip moves the identity"
    return None


def mutation_sensitivity():
    for family in ("R6", "R7"):
        report = verify_presentation(3, relations(3, "R").without(family))
        if report.verdict:
            return f"deleting {family} went undetected"
    return None


CRITERIA = [
    (1, "cardinality of IO_n, IO_n^-, IO_n^+ for n <= 12", cardinality, 10),
    (2, "generator closures equal the monoids for 3 <= n <= 6", generation, 30),
    (3, "exact rank at small n", rank, 120),
    (4, "relation counts and satisfaction for n <= 8", relation_satisfaction, 5),
    (5, "R, R-, R+ verified for 2 <= n <= 5, words up to length 6", presentation_verification, 120),
    (6, "Knuth-Bendix irreducible counts match for n = 3, 4, 5", kb_oracle, 120),
    (7, "canonical forms sound for words up to length 6, n = 3, 4", canonical_form_soundness, 60),
    (8, "stratum summation identity and W enumeration", summation_identity, 1),
    (9, "flip automorphism suite for n <= 5", flip_suite_check, 5),
    (10, "deleting R6 or R7 is detected at n = 3", mutation_sensitivity, 10),
]


def evaluate(check, limit):
    start = time.perf_counter()
    problem = check()
    elapsed = time.perf_counter() - start
    if problem is None and elapsed >= limit:
        problem = f"took {elapsed:.2f}s, limit {limit}s"
    return problem, elapsed


@pytest.mark.slow
@pytest.mark.parametrize("number, title, check, limit", CRITERIA,
                         ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, check, limit):
    problem, elapsed = evaluate(check, limit)
    RESULTS[number] = (problem is None, f"{title} [{elapsed:.2f}s / {limit}s]"
                       + ("" if problem is None else f": {problem}"))
    assert problem is None, problem


CLI_SMOKE = [
    (1, ["count", "--n", "12", "--variant", "io"], "13312"),
    (3, ["rank", "--n", "4", "--variant", "io"], "3"),
    (4, ["relations", "--n", "8", "--presentation", "R'"], "# 70 relations (expected 70)"),
    (5, ["verify", "--n", "3", "--presentation", "R"], "verdict: VERIFIED"),
    (6, ["kb", "--n", "5", "--presentation", "R'"], "irreducible words: 48"),
    (7, ["nf", "--n", "3", "--word", "b2 a2", "--trace"], "trace check: ok"),
    (9, ["flip-check", "--n", "5"], "PASS  homomorphism"),
]


@pytest.mark.parametrize("number, argv, expected", CLI_SMOKE,
                         ids=[f"cli_criterion_{c[0]}" for c in CLI_SMOKE])
def test_cli_smoke(number, argv, expected):
    proc = subprocess.run([sys.executable, "-m", "iomonoid", *argv],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0, proc.stderr
    assert expected in proc.stdout.splitlines()


def report_lines(results=None):
    results = RESULTS if results is None else results
    return [f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
            for n, (ok, detail) in sorted(results.items())]


if __name__ == "__main__":
    for number, title, check, limit in CRITERIA:
        problem, elapsed = evaluate(check, limit)
        RESULTS[number] = (problem is None, f"{title} [{elapsed:.2f}s / {limit}s]"
                           + ("" if problem is None else f": {problem}"))
        print(report_lines({number: RESULTS[number]})[0], flush=True)
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
