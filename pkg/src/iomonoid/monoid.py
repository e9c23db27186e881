"""Enumeration of IO_n and its order-decreasing / order-increasing submonoids."""
from __future__ import annotations

import enum
import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from math import comb
from typing import Iterable

from .chain import (
    GeneratorId,
    Transformation,
    compose,
    flip,
    generator,
    has_interval_image,
    identity,
    is_decreasing,
    is_increasing,
    is_order_preserving,
)

__all__ = [
    "Variant",
    "MonoidTable",
    "RankSearchExhausted",
    "belongs_to",
    "enumerate_direct",
    "enumerate_closure",
    "cardinality_formula",
    "count_by_image_size",
    "undecomposables",
    "units",
    "minimum_generating_set",
    "rank_exact",
    "factor_through_larger_image",
    "standard_generators",
    "flip_suite",
]


class Variant(enum.Enum):
    IO = "io"
    IO_MINUS = "io-"
    IO_PLUS = "io+"

    @classmethod
    def parse(cls, text: str) -> Variant:
        aliases = {"io": cls.IO, "io-": cls.IO_MINUS, "io+": cls.IO_PLUS,
                   "io_minus": cls.IO_MINUS, "io_plus": cls.IO_PLUS}
        try:
            return aliases[text.lower()]
        except KeyError:
            raise ValueError(f"unknown variant {text!r}; expected io, io- or io+") from None


def belongs_to(alpha: Transformation, variant: Variant) -> bool:
    if not (is_order_preserving(alpha) and has_interval_image(alpha)):
        return False
    if variant is Variant.IO_MINUS:
        return is_decreasing(alpha)
    if variant is Variant.IO_PLUS:
        return is_increasing(alpha)
    return True


@dataclass(frozen=True)
class MonoidTable:
    """Elements of a finite transformation monoid, sorted by image vector.

    ``variant`` is ``None`` for a monoid obtained by closure.  ``edges`` maps
    ``(element, generator label)`` to the right product, when recorded.
    """

    n: int
    variant: Variant | None
    elements: tuple[Transformation, ...]
    edges: dict[tuple[Transformation, str], Transformation] | None = field(
        default=None, compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, alpha) -> bool:
        return alpha in self.element_set

    @property
    def element_set(self) -> frozenset[Transformation]:
        return frozenset(self.elements)

    def same_elements(self, other: MonoidTable) -> bool:
        return self.n == other.n and self.elements == other.elements

    def to_json(self) -> str:
        payload = {
            "n": self.n,
            "variant": self.variant.value if self.variant else "closure",
            "elements": [list(a.images) for a in self.elements],
        }
        return json.dumps(payload, separators=(",", ":"))


def _compositions(n: int, k: int) -> Iterable[tuple[int, ...]]:
    """Block sizes of the monotone surjections {1..n} -> {1..k}."""
    for cuts in itertools.combinations(range(1, n), k - 1):
        bounds = (0, *cuts, n)
        yield tuple(bounds[j + 1] - bounds[j] for j in range(k))


def enumerate_direct(n: int, variant: Variant = Variant.IO) -> MonoidTable:
    """All elements of the variant, generated as interval + monotone surjection."""
    if n < 1:
        raise ValueError(f"chain size must be positive, got {n}")
    out = []
    for k in range(1, n + 1):
        if variant is Variant.IO:
            starts = range(1, n - k + 2)
        elif variant is Variant.IO_MINUS:
            starts = (1,)
        else:
            starts = (n - k + 1,)
        for sizes in _compositions(n, k):
            for s in starts:
                images = []
                for offset, size in enumerate(sizes):
                    images.extend([s + offset] * size)
                out.append(Transformation(n, tuple(images)))
    out.sort()
    return MonoidTable(n, variant, tuple(out))


def enumerate_closure(n: int, generators: Iterable[Transformation], *,
                      record_edges: bool = False) -> MonoidTable:
    """Submonoid generated by ``generators``: breadth-first right multiplication from the identity."""
    gens = list(dict.fromkeys(generators))
    for g in gens:
        if g.n != n:
            raise ValueError(f"generator {g} acts on {g.n} points, expected {n}")
    one = identity(n)
    seen = {one}
    queue = deque([one])
    edges = {} if record_edges else None
    while queue:
        alpha = queue.popleft()
        for g in gens:
            beta = compose(alpha, g)
            if edges is not None:
                edges[(alpha, str(g))] = beta
            if beta not in seen:
                seen.add(beta)
                queue.append(beta)
    return MonoidTable(n, None, tuple(sorted(seen)), edges)


def standard_generators(n: int, variant: Variant = Variant.IO) -> list[Transformation]:
    """a_1..a_{n-2}, b_{n-1} for IO; A for IO-; B for IO+.  Empty for n = 1."""
    if n < 2:
        return []
    if variant is Variant.IO_MINUS:
        return [generator(GeneratorId("a", i), n) for i in range(1, n)]
    if variant is Variant.IO_PLUS:
        return [generator(GeneratorId("b", i), n) for i in range(1, n)]
    if n == 2:
        return [generator(GeneratorId("a", 1), 2), generator(GeneratorId("b", 1), 2)]
    return ([generator(GeneratorId("a", i), n) for i in range(1, n - 1)]
            + [generator(GeneratorId("b", n - 1), n)])


def cardinality_formula(n: int, variant: Variant = Variant.IO) -> int:
    if n < 1:
        raise ValueError(f"chain size must be positive, got {n}")
    if variant is Variant.IO:
        return 1 if n == 1 else (n + 1) * 2 ** (n - 2)
    return 2 ** (n - 1)


def count_by_image_size(n: int, variant: Variant = Variant.IO) -> dict[int, int]:
    if n < 1:
        raise ValueError(f"chain size must be positive, got {n}")
    if variant is Variant.IO:
        return {k: (n - k + 1) * comb(n - 1, k - 1) for k in range(1, n + 1)}
    return {k: comb(n - 1, k - 1) for k in range(1, n + 1)}


def undecomposables(table: MonoidTable) -> tuple[Transformation, ...]:
    """Elements m that are not p*q with both p != m and q != m."""
    decomposed = set()
    for p in table.elements:
        for q in table.elements:
            m = compose(p, q)
            if p != m and q != m:
                decomposed.add(m)
    return tuple(m for m in table.elements if m not in decomposed)


def units(table: MonoidTable) -> tuple[Transformation, ...]:
    one = identity(table.n)
    elems = table.elements
    return tuple(p for p in elems
                 if any(compose(p, q) == one and compose(q, p) == one for q in elems))


class RankSearchExhausted(RuntimeError):
    """The subset budget ran out before a generating set was found."""

    def __init__(self, lower_bound: int, tested: int):
        super().__init__(f"rank unknown: search budget exhausted after {tested} subsets; "
                         f"rank >= {lower_bound}")
        self.lower_bound = lower_bound
        self.tested = tested


def minimum_generating_set(table: MonoidTable, budget: int = 100_000) -> tuple[Transformation, ...]:
    """Smallest generating set, searched by increasing size in lexicographic order.

    Non-identity undecomposable elements lie in every generating set, so they
    are forced into each candidate.  The identity is the empty product and is
    never a generator.
    """
    one = identity(table.n)
    forced = [m for m in undecomposables(table) if m != one]
    rest = [m for m in table.elements if m != one and m not in set(forced)]
    target = table.elements
    tested = 0
    for extra in range(len(rest) + 1):
        for chosen in itertools.combinations(rest, extra):
            if tested >= budget:
                raise RankSearchExhausted(len(forced) + extra, tested)
            tested += 1
            candidate = (*forced, *chosen)
            if enumerate_closure(table.n, candidate).elements == target:
                return tuple(sorted(candidate))
    raise ValueError("table is not closed under composition")


def rank_exact(table: MonoidTable, budget: int = 100_000) -> int:
    return len(minimum_generating_set(table, budget))


def factor_through_larger_image(alpha: Transformation, variant: Variant = Variant.IO_MINUS
                                ) -> tuple[Transformation, Transformation] | None:
    """Find g1, g2 in the variant, both with image size one more than alpha's, with g1*g2 = alpha."""
    n = alpha.n
    k = alpha.rank
    if n < 3 or not belongs_to(alpha, variant):
        raise ValueError(f"{alpha} is not an element of {variant.value} with n >= 3")
    if k > n - 2:
        raise ValueError(f"image size {k} exceeds n-2 = {n - 2}")
    layer = [g for g in enumerate_direct(n, variant) if g.rank == k + 1]
    for g1 in layer:
        for g2 in layer:
            if compose(g1, g2) == alpha:
                return g1, g2
    return None


def flip_suite(n: int) -> dict[str, bool]:
    """Exhaustive checks that flip is an involutive automorphism swapping IO- and IO+."""
    io = enumerate_direct(n, Variant.IO)
    minus = enumerate_direct(n, Variant.IO_MINUS)
    plus = enumerate_direct(n, Variant.IO_PLUS)
    full = [Transformation(n, images)
            for images in itertools.product(range(1, n + 1), repeat=n)] if n <= 5 else list(io)
    pair_domain = full if n <= 4 else list(io)
    results = {
        "involution": all(flip(flip(x)) == x for x in full),
        "homomorphism": all(flip(compose(p, q)) == compose(flip(p), flip(q))
                            for p in pair_domain for q in pair_domain),
        "preserves IO": {flip(x) for x in io} == io.element_set,
        "flips generators": all(
            flip(generator(GeneratorId("a", i), n)) == generator(GeneratorId("b", n - i), n)
            and flip(generator(GeneratorId("b", i), n)) == generator(GeneratorId("a", n - i), n)
            for i in range(1, n)),
        "IO- onto IO+": sorted(flip(x) for x in minus) == list(plus.elements),
        "swaps decreasing and increasing": all(
            is_decreasing(x) == is_increasing(flip(x)) for x in io),
    }
    return results
