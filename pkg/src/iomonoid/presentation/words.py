"""Words over {a_1..a_{n-1}, b_1..b_{n-1}} and the relation systems R, R-, R+, R'."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from ..chain import GeneratorId, Transformation, compose, generator, identity, parse_generator

Letter = GeneratorId
Word = tuple  # tuple[Letter, ...]

SYSTEM_NAMES = ("R", "Rminus", "Rplus", "Rprime")
_NAME_ALIASES = {
    "r": "R", "rminus": "Rminus", "r-": "Rminus", "rplus": "Rplus", "r+": "Rplus",
    "rprime": "Rprime", "r'": "Rprime",
}


@lru_cache(maxsize=None)
def a(i: int) -> Letter:
    return Letter("a", i)


@lru_cache(maxsize=None)
def b(i: int) -> Letter:
    return Letter("b", i)


def word(*letters: Letter) -> Word:
    return tuple(letters)


def parse_word(text: str, n: int | None = None) -> Word:
    """Parse whitespace separated ``a<i>``/``b<i>`` tokens; ``e`` or blank is the empty word."""
    tokens = text.split()
    if tokens == ["e"] or not tokens:
        return ()
    letters = tuple(parse_generator(tok) for tok in tokens)
    if n is not None:
        check_letters(letters, n)
    return letters


def format_word(w: Sequence[Letter]) -> str:
    return " ".join(map(str, w)) if w else "e"


def check_letters(w: Iterable[Letter], n: int) -> None:
    for letter in w:
        if not 1 <= letter.index <= n - 1:
            raise ValueError(f"letter {letter} out of range for n={n}")


def canonical_system_name(name: str) -> str:
    try:
        return _NAME_ALIASES[name.lower()]
    except KeyError:
        raise ValueError(f"unknown presentation {name!r}; expected one of R, R-, R+, R'") from None


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Word
    label: str

    def __str__(self) -> str:
        return f"{format_word(self.lhs)} = {format_word(self.rhs)}"

    def sides(self) -> frozenset:
        return frozenset((self.lhs, self.rhs))

    def to_dict(self) -> dict:
        return {"label": self.label, "lhs": format_word(self.lhs), "rhs": format_word(self.rhs)}


@dataclass(frozen=True)
class RelationSystem:
    name: str
    n: int
    relations: tuple[Relation, ...]

    def __len__(self) -> int:
        return len(self.relations)

    def __iter__(self):
        return iter(self.relations)

    def __contains__(self, rel) -> bool:
        return rel in self._index

    @cached_property
    def _index(self) -> frozenset:
        return frozenset(self.relations)

    @property
    def alphabet(self) -> tuple[Letter, ...]:
        return alphabet(self.n, self.name)

    def families(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(r.label for r in self.relations))

    def without(self, *labels: str) -> RelationSystem:
        kept = tuple(r for r in self.relations if r.label not in labels)
        return RelationSystem(self.name, self.n, kept)

    def to_json(self) -> str:
        payload = {"name": self.name, "n": self.n,
                   "relations": [r.to_dict() for r in self.relations]}
        return json.dumps(payload, separators=(",", ":"))


def alphabet(n: int, name: str = "R") -> tuple[Letter, ...]:
    name = canonical_system_name(name)
    if n < 2:
        return ()
    if name == "Rminus":
        return tuple(a(i) for i in range(1, n))
    if name == "Rplus":
        return tuple(b(i) for i in range(1, n))
    if name == "Rprime":
        return tuple(a(i) for i in range(1, n - 1)) + (b(n - 1),)
    return tuple(a(i) for i in range(1, n)) + tuple(b(i) for i in range(1, n))


# Each family builder returns the relation instances in index order.

def R1(n: int) -> list[Relation]:
    return [Relation((a(i), a(n - 1)), (a(i),), "R1") for i in range(1, n)]


def R2(n: int) -> list[Relation]:
    return [Relation((a(i), a(j)), (a(j + 1), a(i)), "R2")
            for i in range(1, n - 1) for j in range(i, n - 1)]


def R3(n: int) -> list[Relation]:
    return [Relation((b(i), b(1)), (b(i),), "R3") for i in range(1, n)]


def R4(n: int) -> list[Relation]:
    return [Relation((b(i), b(j + 1)), (b(j + 1), b(i + 1)), "R4")
            for i in range(1, n - 1) for j in range(i, n - 1)]


def R5(n: int) -> list[Relation]:
    return [Relation((b(i), a(j)), (a(j), b(i)), "R5")
            for i in range(1, n) for j in range(i + 1, n)]


def R6(n: int) -> list[Relation]:
    return [Relation((b(i), a(1)), (a(i),), "R6") for i in range(1, n)]


def R7(n: int) -> list[Relation]:
    return [Relation((a(i), b(n - 1)), (b(i),), "R7") for i in range(1, n)]


def rprime_catalog(n: int) -> list[Relation]:
    """The relations on a_1..a_{n-2}, b_{n-1} obtained after eliminating a_{n-1} and b_1..b_{n-2}."""
    if n < 3:
        raise ValueError(f"the reduced presentation needs n >= 3, got n={n}")
    z = b(n - 1)
    rels = []
    rels += [Relation((a(i), a(j)), (a(j + 1), a(i)), "R'2")
             for i in range(1, n - 2) for j in range(i, n - 2)]
    rels += [Relation((a(i), a(n - 2)), (z, a(1), a(i)), "R'2") for i in range(1, n - 1)]
    rels += [Relation((a(i), z, a(j + 1), z), (a(j + 1), z, a(i + 1), z), "R'4")
             for i in range(1, n - 2) for j in range(i, n - 2)]
    rels += [Relation((a(i), z, z), (z, a(i + 1), z), "R'4") for i in range(1, n - 2)]
    rels += [Relation((a(n - 2), z, z), (z, z), "R'4")]
    rels += [Relation((a(i), z, a(j)), (a(j), a(i), z), "R'5")
             for i in range(1, n - 1) for j in range(i + 1, n - 1)]
    rels += [Relation((a(i), z, z, a(1)), (z, a(1), a(i), z), "R'5") for i in range(1, n - 1)]
    rels += [Relation((a(i), z, a(1)), (a(i),), "R'6") for i in range(1, n - 1)]
    rels += [Relation((z, a(1), z), (z,), "R'7")]
    return rels


@lru_cache(maxsize=None)
def relations(n: int, name: str = "R") -> RelationSystem:
    name = canonical_system_name(name)
    if name == "Rprime" and n < 3:
        raise ValueError(f"the reduced presentation needs n >= 3, got n={n}")
    if n < 2:
        return RelationSystem(name, n, ())
    if name == "R":
        rels = R1(n) + R2(n) + R3(n) + R4(n) + R5(n) + R6(n) + R7(n)
    elif name == "Rminus":
        rels = R1(n) + R2(n)
    elif name == "Rplus":
        rels = R3(n) + R4(n)
    else:
        rels = rprime_catalog(n)
    return RelationSystem(name, n, tuple(rels))


def expected_size(n: int, name: str) -> int:
    name = canonical_system_name(name)
    if name == "R":
        return (3 * n * n - n - 2) // 2
    if name in ("Rminus", "Rplus"):
        return (n * n - n) // 2
    return (3 * n * n - 7 * n + 4) // 2


def evaluate_word(w: Sequence[Letter], n: int) -> Transformation:
    """Left-to-right product of the generators; the empty word is the identity."""
    result = identity(n)
    for letter in w:
        result = compose(result, _generator(letter, n))
    return result


@lru_cache(maxsize=None)
def _generator(letter: Letter, n: int) -> Transformation:
    return generator(letter, n)


def satisfies_relations(n: int, system: RelationSystem | Iterable[Relation]) -> bool:
    return all(evaluate_word(r.lhs, n) == evaluate_word(r.rhs, n) for r in system)


def flip_letter(letter: Letter, n: int) -> Letter:
    """a_i <-> b_{n-i}, the letter-level image of the flip automorphism."""
    return Letter("b" if letter.family == "a" else "a", n - letter.index)


def flip_word(w: Sequence[Letter], n: int) -> Word:
    return tuple(flip_letter(x, n) for x in w)
