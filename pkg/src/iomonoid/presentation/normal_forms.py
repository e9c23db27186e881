"""Constructive rewriting of words into the canonical sets W-, W+ and W.

Every procedure drives a :class:`Rewriter`, so the derivation it records
uses only primitive instances of R1..R7.  Shortcuts such as
``b_i a_j ~ a_{j-1} b_{i-1}`` are expanded into their primitive steps.

Conventions: an A-word ``a_{i_1} ... a_{i_k}`` is in W- when
``i_1 > ... > i_k``; a B-word ``b_{j_1} ... b_{j_l}`` is in W+ when
``j_1 < ... < j_l``; W_l holds ``a_{i_1} ... a_{i_k} b_{n-1}^l`` with
``i_1 > ... > i_k`` and ``i_1 <= n - l + k - 2``.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

from .trace import DerivationTrace, Rewriter
from .words import Letter, Relation, Word, a, b, check_letters, format_word

__all__ = [
    "CanonicalStratum",
    "canonical_A",
    "canonical_B",
    "separate",
    "factor_b_tail",
    "absorb_overflow",
    "canonical_form",
    "derive_ba_exchange",
    "derive_absorption",
    "stratum_of",
    "in_W_minus",
    "in_W_plus",
    "enumerate_W",
    "enumerate_W_minus",
    "enumerate_W_plus",
    "W_size",
    "stratum_count",
]


# Single relation instances; equal (as values) to the members of relations(n, "R").

@lru_cache(maxsize=None)
def _r1(n, i):
    return Relation((a(i), a(n - 1)), (a(i),), "R1")


@lru_cache(maxsize=None)
def _r2(i, j):
    return Relation((a(i), a(j)), (a(j + 1), a(i)), "R2")


@lru_cache(maxsize=None)
def _r3(i):
    return Relation((b(i), b(1)), (b(i),), "R3")


@lru_cache(maxsize=None)
def _r4(i, j):
    return Relation((b(i), b(j + 1)), (b(j + 1), b(i + 1)), "R4")


@lru_cache(maxsize=None)
def _r5(i, j):
    return Relation((b(i), a(j)), (a(j), b(i)), "R5")


@lru_cache(maxsize=None)
def _r6(i):
    return Relation((b(i), a(1)), (a(i),), "R6")


@lru_cache(maxsize=None)
def _r7(n, i):
    return Relation((a(i), b(n - 1)), (b(i),), "R7")


@dataclass(frozen=True)
class CanonicalStratum:
    kind: str  # "Wminus" or "W"
    k: int
    ell: int = 0

    def __str__(self) -> str:
        return "W-" if self.kind == "Wminus" else f"W_{self.ell}"


def _require_family(w: Sequence[Letter], family: str) -> None:
    for letter in w:
        if letter.family != family:
            raise ValueError(f"expected only {family}-letters, found {letter} in {format_word(w)}")


# -- in-place procedures on a rewriter span ---------------------------------

def _insert_a(rw: Rewriter, n: int, lo: int, end: int) -> int:
    """letters[lo:end] is in W-, letters[end] is an A-letter; restore W- on [lo, new_end)."""
    letters = rw.letters
    c = letters[end].index
    pos = end
    while pos > lo:
        left = letters[pos - 1].index
        if c == n - 1:
            rw.apply(pos - 1, _r1(n, left))
            return end
        if left > c:
            break
        rw.apply(pos - 1, _r2(left, c))
        c += 1
        pos -= 1
    return end + 1


def _canon_a(rw: Rewriter, n: int, lo: int, hi: int) -> int:
    end = lo
    for _ in range(hi - lo):
        end = _insert_a(rw, n, lo, end)
    return end


def _insert_b(rw: Rewriter, n: int, lo: int, end: int) -> int:
    """Mirror image of :func:`_insert_a` under a_i <-> b_{n-i}."""
    letters = rw.letters
    c = letters[end].index
    pos = end
    while pos > lo:
        left = letters[pos - 1].index
        if c == 1:
            rw.apply(pos - 1, _r3(left))
            return end
        if left < c:
            break
        rw.apply(pos - 1, _r4(c - 1, left - 1), forward=False)
        c -= 1
        pos -= 1
    return end + 1


def _canon_b(rw: Rewriter, n: int, lo: int, hi: int) -> int:
    end = lo
    for _ in range(hi - lo):
        end = _insert_b(rw, n, lo, end)
    return end


def _r5prime(rw: Rewriter, n: int, p: int) -> None:
    """b_i a_j -> a_{j-1} b_{i-1} at p, for 2 <= j <= i, in seven primitive steps."""
    i, j = rw.letters[p].index, rw.letters[p + 1].index
    rw.apply(p + 1, _r6(j), forward=False)            # b_i b_j a_1
    rw.apply(p, _r4(j - 1, i - 1), forward=False)     # b_{j-1} b_i a_1
    rw.apply(p + 1, _r6(i))                           # b_{j-1} a_i
    rw.apply(p, _r5(j - 1, i))                        # a_i b_{j-1}
    rw.apply(p + 1, _r7(n, j - 1), forward=False)     # a_i a_{j-1} b_{n-1}
    rw.apply(p, _r2(j - 1, i - 1), forward=False)     # a_{j-1} a_{i-1} b_{n-1}
    rw.apply(p + 1, _r7(n, i - 1))                    # a_{j-1} b_{i-1}


def _separate(rw: Rewriter, n: int, lo: int, hi: int) -> tuple[int, int]:
    """Push every A-letter of [lo, hi) left of every B-letter; return (split, hi)."""
    letters = rw.letters
    p = lo
    while p < hi - 1:
        if letters[p].family == "b" and letters[p + 1].family == "a":
            i, j = letters[p].index, letters[p + 1].index
            if i < j:
                rw.apply(p, _r5(i, j))
            elif j == 1:
                rw.apply(p, _r6(i))
                hi -= 1
            else:
                _r5prime(rw, n, p)
            p = max(lo, p - 1)
        else:
            p += 1
    split = lo
    while split < hi and letters[split].family == "a":
        split += 1
    return split, hi


def _b_tail(rw: Rewriter, n: int, lo: int, hi: int) -> tuple[int, int]:
    """B-word on [lo, hi) -> a_{j_1} a_{j_2 - 1} ... b_{n-1}^l; return (split, new_hi)."""
    end = _canon_b(rw, n, lo, hi)
    ell = end - lo
    letters = rw.letters
    for s in range(ell):
        p = lo + s
        rw.apply(p, _r7(n, letters[p].index), forward=False)
        q = p + 1
        for _ in range(ell - s - 1):
            y = letters[q + 1].index
            rw.apply(q, _r4(y - 1, n - 2), forward=False)
            q += 1
    return lo + ell, lo + 2 * ell


def _absorb_one(rw: Rewriter, n: int, p: int) -> None:
    """a_x b_{n-1}^l -> b_{n-1}^l at p (needs x >= n - l)."""
    x = rw.letters[p].index
    rw.apply(p, _r7(n, x))
    while x < n - 1:
        rw.apply(p, _r4(x, n - 2))
        p += 1
        x += 1


def _overflow_depth(indices: Sequence[int], n: int, ell: int) -> int:
    """Largest t with i_s > n - l + k - s - 1 for s = 1..t."""
    k = len(indices)
    t = 0
    while t < k and indices[t] > n - ell + k - (t + 1) - 1:
        t += 1
    if t == 0:
        raise AssertionError("no overflow to absorb")
    nxt = indices[t] if t < k else -1
    if not indices[t - 1] > n - ell + k - t - 1 > nxt:
        raise AssertionError(f"overflow split index not found for {indices}, l={ell}")
    return t


def _absorb(rw: Rewriter, n: int, lo: int, split: int, ell: int) -> int:
    """A-word on [lo, split) followed by b_{n-1}^l; bring into W_l, return the new A/B split."""
    end = _canon_a(rw, n, lo, split)
    letters = rw.letters
    k = end - lo
    indices = [x.index for x in letters[lo:end]]
    if k == 0 or indices[0] <= n - ell + k - 2:
        return end
    t = _overflow_depth(indices, n, ell)
    for s in range(1, t + 1):
        pos = lo
        for _ in range(k - s):
            hi_idx, lo_idx = letters[pos].index, letters[pos + 1].index
            rw.apply(pos, _r2(lo_idx, hi_idx - 1), forward=False)
            pos += 1
    for p in range(end - 1, end - 1 - t, -1):
        _absorb_one(rw, n, p)
    return end - t


# -- public API ---------------------------------------------------------------

def canonical_A(w: Sequence[Letter], n: int) -> tuple[Word, DerivationTrace]:
    """Rewrite an A-word into W- by R1/R2, one letter at a time."""
    _require_family(w, "a")
    check_letters(w, n)
    rw = Rewriter(list(w))
    end = _canon_a(rw, n, 0, len(w))
    assert end == len(rw)
    return rw.word, rw.trace()


def canonical_B(w: Sequence[Letter], n: int) -> tuple[Word, DerivationTrace]:
    """Rewrite a B-word into W+ by R3/R4."""
    _require_family(w, "b")
    check_letters(w, n)
    rw = Rewriter(list(w))
    _canon_b(rw, n, 0, len(w))
    return rw.word, rw.trace()


def separate(w: Sequence[Letter], n: int) -> tuple[Word, Word, DerivationTrace]:
    """w ~ u v with u over A and v over B."""
    check_letters(w, n)
    rw = Rewriter(list(w))
    split, hi = _separate(rw, n, 0, len(w))
    assert hi == len(rw)
    return rw.word[:split], rw.word[split:], rw.trace()


def factor_b_tail(v: Sequence[Letter], n: int) -> tuple[Word, int, DerivationTrace]:
    """Nonempty B-word v ~ u' b_{n-1}^l with u' over A and l the length of its W+ form."""
    if not v:
        raise ValueError("factor_b_tail needs a nonempty B-word")
    _require_family(v, "b")
    check_letters(v, n)
    rw = Rewriter(list(v))
    split, hi = _b_tail(rw, n, 0, len(v))
    return rw.word[:split], hi - split, rw.trace()


def absorb_overflow(u: Sequence[Letter], ell: int, n: int) -> tuple[Word, DerivationTrace]:
    """u b_{n-1}^l ~ a word of W_l."""
    if not 1 <= ell <= n - 1:
        raise ValueError(f"exponent l={ell} outside 1..{n - 1}")
    _require_family(u, "a")
    check_letters(u, n)
    rw = Rewriter(list(u) + [b(n - 1)] * ell)
    _absorb(rw, n, 0, len(u), ell)
    return rw.word, rw.trace()


def canonical_form(w: Sequence[Letter], n: int) -> tuple[Word, CanonicalStratum, DerivationTrace]:
    """Rewrite any word over A and B into W, recording an R-derivation."""
    check_letters(w, n)
    rw = Rewriter(list(w))
    split, hi = _separate(rw, n, 0, len(w))
    if split == hi:
        end = _canon_a(rw, n, 0, split)
        result = rw.word
        return result, CanonicalStratum("Wminus", end), rw.trace()
    b_split, hi = _b_tail(rw, n, split, hi)
    ell = hi - b_split
    # the A-prefix is now letters[0:b_split]
    k = _absorb(rw, n, 0, b_split, ell)
    result = rw.word
    stratum = CanonicalStratum("W", k, ell)
    assert stratum_of(result, n) == stratum, (format_word(w), format_word(result))
    return result, stratum, rw.trace()


def derive_ba_exchange(n: int, i: int, j: int) -> DerivationTrace:
    """Derivation of b_i a_j ~ a_{j-1} b_{i-1} for 2 <= j <= i <= n-1."""
    if not 2 <= j <= i <= n - 1:
        raise ValueError(f"need 2 <= j <= i <= n-1, got i={i}, j={j}, n={n}")
    rw = Rewriter([b(i), a(j)])
    _r5prime(rw, n, 0)
    return rw.trace()


def derive_absorption(n: int, i: int, ell: int) -> DerivationTrace:
    """Derivation of a_i b_{n-1}^l ~ b_{n-1}^l for n - l <= i <= n-1."""
    if not (1 <= ell <= n - 1 and n - ell <= i <= n - 1):
        raise ValueError(f"need 1 <= l <= n-1 and n-l <= i <= n-1, got i={i}, l={ell}")
    rw = Rewriter([a(i)] + [b(n - 1)] * ell)
    _absorb_one(rw, n, 0)
    return rw.trace()


# -- the canonical sets -------------------------------------------------------

def in_W_minus(w: Sequence[Letter]) -> bool:
    return (all(x.family == "a" for x in w)
            and all(w[t].index > w[t + 1].index for t in range(len(w) - 1)))


def in_W_plus(w: Sequence[Letter]) -> bool:
    return (all(x.family == "b" for x in w)
            and all(w[t].index < w[t + 1].index for t in range(len(w) - 1)))


def stratum_of(w: Sequence[Letter], n: int) -> CanonicalStratum | None:
    """The stratum of W containing w, or None if w is not in W."""
    w = tuple(w)
    if in_W_minus(w):
        if any(not 1 <= x.index <= n - 1 for x in w):
            return None
        return CanonicalStratum("Wminus", len(w))
    k = 0
    while k < len(w) and w[k].family == "a":
        k += 1
    prefix, tail = w[:k], w[k:]
    ell = len(tail)
    if not 1 <= ell <= n - 1 or any(x != b(n - 1) for x in tail):
        return None
    if not in_W_minus(prefix):
        return None
    if prefix and prefix[0].index > min(n - ell + k - 2, n - 1):
        return None
    return CanonicalStratum("W", k, ell)


def stratum_count(n: int, k: int, ell: int) -> int:
    """Number of words in W_l (l >= 1) or W- (l = 0) with k A-letters."""
    if ell == 0:
        return comb(n - 1, k) if 0 <= k <= n - 1 else 0
    if k == 0:
        return 1
    m = min(n - ell + k - 2, n - 1)
    return comb(m, k) if 0 <= k <= m else 0


def W_size(n: int) -> int:
    if n < 2:
        return 1
    return sum(stratum_count(n, k, ell) for ell in range(n) for k in range(n))


def _decreasing_words(top: int, k: int) -> Iterator[Word]:
    for combo in itertools.combinations(range(1, top + 1), k):
        yield tuple(a(i) for i in reversed(combo))


def enumerate_W_minus(n: int) -> list[Word]:
    if n < 2:
        return [()]
    return [w for k in range(n) for w in _decreasing_words(n - 1, k)]


def enumerate_W_plus(n: int) -> list[Word]:
    if n < 2:
        return [()]
    return [tuple(b(j) for j in combo)
            for k in range(n) for combo in itertools.combinations(range(1, n), k)]


def enumerate_W(n: int) -> list[tuple[Word, CanonicalStratum]]:
    out = [(w, CanonicalStratum("Wminus", len(w))) for w in enumerate_W_minus(n)]
    for ell in range(1, n):
        tail = (b(n - 1),) * ell
        for k in range(n):
            top = min(n - ell + k - 2, n - 1)
            if k > 0 and top < k:
                continue
            for prefix in _decreasing_words(max(top, 0), k):
                out.append((prefix + tail, CanonicalStratum("W", k, ell)))
    return out
