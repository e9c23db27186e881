"""Derivation traces: explicit chains of single-relation replacements."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .words import Letter, Relation, RelationSystem, Word, format_word


@dataclass(frozen=True)
class Step:
    position: int
    relation: Relation
    forward: bool  # True: lhs -> rhs
    result: Word

    @property
    def label(self) -> str:
        return self.relation.label

    def to_dict(self) -> dict:
        return {
            "position": self.position,
            "label": self.relation.label,
            "lhs": format_word(self.relation.lhs),
            "rhs": format_word(self.relation.rhs),
            "direction": "lhs->rhs" if self.forward else "rhs->lhs",
            "word": format_word(self.result),
        }


@dataclass(frozen=True)
class DerivationTrace:
    start: Word
    steps: tuple[Step, ...] = ()

    @property
    def end(self) -> Word:
        return self.steps[-1].result if self.steps else self.start

    def __len__(self) -> int:
        return len(self.steps)

    def labels(self) -> set[str]:
        return {s.label for s in self.steps}

    def __add__(self, other: DerivationTrace) -> DerivationTrace:
        if other.start != self.end:
            raise ValueError("traces do not chain: "
                             f"{format_word(self.end)} != {format_word(other.start)}")
        return DerivationTrace(self.start, self.steps + other.steps)

    def to_dict(self) -> dict:
        return {"start": format_word(self.start), "end": format_word(self.end),
                "steps": [s.to_dict() for s in self.steps]}

    def pretty(self) -> str:
        lines = [f"  {format_word(self.start)}"]
        for s in self.steps:
            arrow = "->" if s.forward else "<-"
            lines.append(f"~ {format_word(s.result)}    [{s.label} {arrow} @{s.position}: {s.relation}]")
        return "\n".join(lines)


@dataclass
class Rewriter:
    """Mutable word plus the log of every replacement made to it.

    ``apply`` refuses a replacement whose source side does not occur at the
    given position, so anything built through it is a valid derivation.
    """

    letters: list[Letter]
    start: Word = field(init=False)
    steps: list[Step] = field(default_factory=list, init=False)

    def __post_init__(self):
        self.letters = list(self.letters)
        self.start = tuple(self.letters)

    @property
    def word(self) -> Word:
        return tuple(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def apply(self, position: int, relation: Relation, forward: bool = True) -> None:
        src, dst = (relation.lhs, relation.rhs) if forward else (relation.rhs, relation.lhs)
        here = tuple(self.letters[position:position + len(src)])
        if position < 0 or here != src:
            raise AssertionError(f"{relation.label} {relation} does not apply at {position} "
                                 f"of {format_word(self.letters)}")
        self.letters[position:position + len(src)] = dst
        self.steps.append(Step(position, relation, forward, tuple(self.letters)))

    def trace(self) -> DerivationTrace:
        return DerivationTrace(self.start, tuple(self.steps))


def replay(start: Sequence[Letter], steps: Sequence[Step]) -> Word | None:
    """Word reached by replaying ``steps``, or None on an illegal step."""
    current = tuple(start)
    for s in steps:
        src, dst = (s.relation.lhs, s.relation.rhs) if s.forward else (s.relation.rhs, s.relation.lhs)
        p = s.position
        if p < 0 or current[p:p + len(src)] != src:
            return None
        current = current[:p] + dst + current[p + len(src):]
        if current != s.result:
            return None
    return current


def check_trace(trace: DerivationTrace, system: RelationSystem,
                end: Sequence[Letter] | None = None) -> bool:
    """Every step uses a relation of ``system`` at a matching factor; endpoints agree."""
    if any(s.relation not in system for s in trace.steps):
        return False
    final = replay(trace.start, trace.steps)
    if final is None:
        return False
    return end is None or final == tuple(end)
