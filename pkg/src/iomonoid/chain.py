"""Full transformations of the chain 1 < 2 < ... < n.

Transformations act on the right and compose left to right: for
``compose(alpha, beta)`` the point ``x`` goes to ``(x alpha) beta``.  All
points and image values are 1-based.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "Transformation",
    "GeneratorId",
    "make_transformation",
    "identity",
    "compose",
    "is_order_preserving",
    "has_interval_image",
    "is_decreasing",
    "is_increasing",
    "generator",
    "flip",
    "parse_transformation",
    "parse_generator",
]


@dataclass(frozen=True, order=True)
class Transformation:
    n: int
    images: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: Transformation) -> Transformation:
        return compose(self, other)

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.images)

    @property
    def rank(self) -> int:
        """Size of the image."""
        return len(set(self.images))

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.images)) + "]"


class _GeneratorFields(NamedTuple):
    family: str
    index: int


class GeneratorId(_GeneratorFields):
    """A generator name ``a<i>`` or ``b<i>``; also used as a word letter.

    Ordered by family then index, so a_1 < ... < a_{n-1} < b_1 < ... < b_{n-1}.
    """

    __slots__ = ()

    def __new__(cls, family: str, index: int):
        if family not in ("a", "b"):
            raise ValueError(f"unknown generator family {family!r}")
        if index < 1:
            raise ValueError(f"generator index must be positive, got {index}")
        return super().__new__(cls, family, index)

    def __str__(self) -> str:
        return f"{self.family}{self.index}"

    __repr__ = __str__


def make_transformation(n: int, images: Sequence[int]) -> Transformation:
    if n < 1:
        raise ValueError(f"chain size must be positive, got {n}")
    images = tuple(int(y) for y in images)
    if len(images) != n:
        raise ValueError(f"expected {n} images, got {len(images)}")
    for x, y in enumerate(images, start=1):
        if not 1 <= y <= n:
            raise ValueError(f"image of {x} is {y}, outside 1..{n}")
    return Transformation(n, images)


def identity(n: int) -> Transformation:
    return make_transformation(n, range(1, n + 1))


def compose(alpha: Transformation, beta: Transformation) -> Transformation:
    if alpha.n != beta.n:
        raise ValueError(f"cannot compose maps on chains of size {alpha.n} and {beta.n}")
    b = beta.images
    return Transformation(alpha.n, tuple(b[y - 1] for y in alpha.images))


def is_order_preserving(alpha: Transformation) -> bool:
    im = alpha.images
    return all(im[x] <= im[x + 1] for x in range(alpha.n - 1))


def has_interval_image(alpha: Transformation) -> bool:
    values = set(alpha.images)
    return max(values) - min(values) + 1 == len(values)


def is_decreasing(alpha: Transformation) -> bool:
    return all(y <= x for x, y in enumerate(alpha.images, start=1))


def is_increasing(alpha: Transformation) -> bool:
    return all(x <= y for x, y in enumerate(alpha.images, start=1))


def generator(g: GeneratorId, n: int) -> Transformation:
    """The map ``a_i`` (fix 1..i, then x -> x-1) or ``b_i`` (x -> x+1 on 1..i, then fix)."""
    if n < 2:
        raise ValueError(f"generators are defined for n >= 2, got n={n}")
    i = g.index
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator index {i} outside 1..{n - 1}")
    if g.family == "a":
        images = [x if x <= i else x - 1 for x in range(1, n + 1)]
    else:
        images = [x + 1 if x <= i else x for x in range(1, n + 1)]
    return Transformation(n, tuple(images))


def flip(alpha: Transformation) -> Transformation:
    """Conjugate by the order-reversing involution x -> n+1-x."""
    n = alpha.n
    return Transformation(n, tuple(n + 1 - alpha.images[n - x] for x in range(1, n + 1)))


_TRANSFORMATION_RE = re.compile(r"^\s*\[\s*(\d+(?:\s*,\s*\d+)*)\s*\]\s*$")
_GENERATOR_RE = re.compile(r"^([ab])(\d+)$")


def parse_transformation(text: str, n: int | None = None) -> Transformation:
    """Parse ``[y1,y2,...,yn]``."""
    m = _TRANSFORMATION_RE.match(text)
    if not m:
        raise ValueError(f"malformed transformation {text!r}")
    images = [int(tok) for tok in m.group(1).split(",")]
    return make_transformation(len(images) if n is None else n, images)


def parse_generator(token: str) -> GeneratorId:
    m = _GENERATOR_RE.match(token.strip())
    if not m:
        raise ValueError(f"malformed generator name {token!r}")
    return GeneratorId(m.group(1), int(m.group(2)))


def image_sizes(elements: Iterable[Transformation]) -> dict[int, int]:
    counts: dict[int, int] = {}
    for alpha in elements:
        counts[alpha.rank] = counts.get(alpha.rank, 0) + 1
    return dict(sorted(counts.items()))
