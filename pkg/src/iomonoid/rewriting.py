"""Shortlex string rewriting and Knuth-Bendix completion.

Used as an oracle that knows nothing about the hand-built normal forms:
complete a presentation, then count its irreducible words.
"""
from __future__ import annotations

import enum
import json
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .presentation.words import Letter, RelationSystem, Word, format_word

log = logging.getLogger(__name__)

__all__ = [
    "Status",
    "RewriteRule",
    "RewriteSystem",
    "IrreducibleOverflow",
    "orient",
    "normalize",
    "complete",
    "irreducible_words",
    "count_irreducible",
]


class Status(enum.Enum):
    INCOMPLETE = "incomplete"
    COMPLETE = "complete"
    FUEL_EXHAUSTED = "fuel_exhausted"


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: Word

    def __str__(self) -> str:
        return f"{format_word(self.lhs)} -> {format_word(self.rhs)}"


@dataclass(frozen=True)
class RewriteSystem:
    alphabet: tuple[Letter, ...]
    rules: tuple[RewriteRule, ...]
    status: Status = Status.INCOMPLETE
    n: int | None = None
    pairs_examined: int = 0
    _first: dict = field(default=None, init=False, compare=False, repr=False)

    def __post_init__(self):
        by_first: dict[Letter, list[tuple[Word, Word]]] = {}
        for rule in self.rules:
            by_first.setdefault(rule.lhs[0], []).append((rule.lhs, rule.rhs))
        object.__setattr__(self, "_first", by_first)

    @property
    def rank(self) -> dict[Letter, int]:
        return {x: r for r, x in enumerate(self.alphabet)}

    def key(self, w: Sequence[Letter]):
        rank = self.rank
        return (len(w), tuple(rank[x] for x in w))

    def to_json(self) -> str:
        payload = {
            "alphabet": [str(x) for x in self.alphabet],
            "status": self.status.value,
            "rules": [{"lhs": format_word(r.lhs), "rhs": format_word(r.rhs)} for r in self.rules],
        }
        return json.dumps(payload, separators=(",", ":"))


def _shortlex(rank: dict[Letter, int]):
    def key(w):
        return (len(w), tuple(rank[x] for x in w))
    return key


def orient(system: RelationSystem, order: Sequence[Letter] | None = None) -> RewriteSystem:
    """Turn each relation into a shortlex-decreasing rule.

    The default letter order is a_1 < ... < a_{n-1} < b_1 < ... < b_{n-1},
    restricted to the letters of the system's alphabet.
    """
    letters = tuple(order) if order is not None else tuple(sorted(system.alphabet))
    key = _shortlex({x: r for r, x in enumerate(letters)})
    rules = []
    seen = set()
    for rel in system:
        if rel.lhs == rel.rhs:
            log.warning("dropping trivial relation %s (%s)", rel, rel.label)
            continue
        lhs, rhs = (rel.lhs, rel.rhs) if key(rel.lhs) > key(rel.rhs) else (rel.rhs, rel.lhs)
        if (lhs, rhs) not in seen:
            seen.add((lhs, rhs))
            rules.append(RewriteRule(lhs, rhs))
    return RewriteSystem(letters, tuple(rules), Status.INCOMPLETE, system.n)


def _reduce(w: Sequence[Letter], by_first: dict) -> Word:
    w = list(w)
    longest = max((len(lhs) for rules in by_first.values() for lhs, _ in rules), default=0)
    pos = 0
    while pos < len(w):
        for lhs, rhs in by_first.get(w[pos], ()):
            if tuple(w[pos:pos + len(lhs)]) == lhs:
                w[pos:pos + len(lhs)] = rhs
                # everything before pos was irreducible
                pos = max(0, pos - longest + 1)
                break
        else:
            pos += 1
    return tuple(w)


def normalize(w: Sequence[Letter], system: RewriteSystem) -> Word:
    """Reduce at the leftmost matching position, lowest rule index first, until irreducible."""
    return _reduce(w, system._first)


def _occurs(needle: Word, hay: Word) -> int:
    m = len(needle)
    for p in range(len(hay) - m + 1):
        if hay[p:p + m] == needle:
            return p
    return -1


def _critical_pairs(r1: RewriteRule, r2: RewriteRule, same: bool) -> Iterable[tuple[Word, Word]]:
    l1, l2 = r1.lhs, r2.lhs
    for k in range(1, min(len(l1), len(l2))):
        if l1[-k:] == l2[:k]:
            yield r1.rhs + l2[k:], l1[:-k] + r2.rhs
    if not same:
        p = _occurs(l2, l1)
        if p >= 0:
            yield r1.rhs, l1[:p] + r2.rhs + l1[p + len(l2):]


def complete(system: RewriteSystem, fuel: int = 100_000) -> RewriteSystem:
    """Knuth-Bendix completion with FIFO critical-pair processing.

    ``fuel`` bounds the number of rule pairs examined.  The result is
    flagged COMPLETE only when every critical pair has been resolved.
    """
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    key = _shortlex({x: r for r, x in enumerate(system.alphabet)})
    rules: list[RewriteRule | None] = []
    by_first: dict[Letter, list[tuple[Word, Word]]] = {}

    def rebuild():
        by_first.clear()
        for r in rules:
            if r is not None:
                by_first.setdefault(r.lhs[0], []).append((r.lhs, r.rhs))

    pending = deque((r.lhs, r.rhs) for r in system.rules)
    pairs: deque[tuple[int, int]] = deque()
    examined = 0

    while True:
        while pending:
            u, v = pending.popleft()
            u, v = _reduce(u, by_first), _reduce(v, by_first)
            if u == v:
                continue
            lhs, rhs = (u, v) if key(u) > key(v) else (v, u)
            new = RewriteRule(lhs, rhs)
            m = len(rules)
            rules.append(new)
            for q, old in enumerate(rules[:-1]):
                if old is None:
                    continue
                if _occurs(lhs, old.lhs) >= 0:
                    rules[q] = None
                    pending.append((old.lhs, old.rhs))
            rebuild()
            for q, old in enumerate(rules[:-1]):
                if old is not None and _occurs(lhs, old.rhs) >= 0:
                    rules[q] = RewriteRule(old.lhs, _reduce(old.rhs, by_first))
            rebuild()
            for q in range(m + 1):
                if rules[q] is not None:
                    pairs.append((m, q))
                    if q != m:
                        pairs.append((q, m))
        if not pairs:
            break
        p, q = pairs.popleft()
        if rules[p] is None or rules[q] is None:
            continue
        if examined >= fuel:
            return RewriteSystem(system.alphabet, tuple(r for r in rules if r is not None),
                                 Status.FUEL_EXHAUSTED, system.n, examined)
        examined += 1
        pending.extend(_critical_pairs(rules[p], rules[q], p == q))

    final = sorted((r for r in rules if r is not None), key=lambda r: key(r.lhs))
    return RewriteSystem(system.alphabet, tuple(final), Status.COMPLETE, system.n, examined)


class IrreducibleOverflow(RuntimeError):
    """More irreducible words than the cap: the normal-form language looks infinite."""


def _default_cap(system: RewriteSystem) -> int:
    n = system.n or 1
    return 4 * max(1, (n + 1) * 2 ** (n - 2) if n >= 2 else 1)


def irreducible_words(system: RewriteSystem, cap: int | None = None) -> list[Word]:
    """All irreducible words, by length then letter order."""
    if system.status is not Status.COMPLETE:
        raise ValueError(f"system is {system.status.value}, not complete")
    cap = _default_cap(system) if cap is None else cap
    lhs_by_len: dict[int, set[Word]] = {}
    for r in system.rules:
        lhs_by_len.setdefault(len(r.lhs), set()).add(r.lhs)
    out: list[Word] = [()]
    level: list[Word] = [()]
    while level:
        nxt = []
        for w in level:
            for x in system.alphabet:
                cand = w + (x,)
                if any(len(cand) >= m and cand[-m:] in lhss for m, lhss in lhs_by_len.items()):
                    continue
                nxt.append(cand)
        out.extend(nxt)
        if len(out) > cap:
            raise IrreducibleOverflow(
                f"more than {cap} irreducible words (reached length {len(nxt[0])}); "
                "the presentation does not define a monoid of the expected size")
        level = nxt
    return out


def count_irreducible(system: RewriteSystem, cap: int | None = None) -> int:
    return len(irreducible_words(system, cap))
