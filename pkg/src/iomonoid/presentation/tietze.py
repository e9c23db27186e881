"""Elimination of a_{n-1} and b_1..b_{n-2} from the presentation R."""
from __future__ import annotations

from typing import Sequence

from .words import Letter, Relation, RelationSystem, Word, a, b, relations, rprime_catalog, satisfies_relations


def substitution(n: int) -> dict[Letter, Word]:
    """a_{n-1} -> b_{n-1} a_1 and b_i -> a_i b_{n-1} for i <= n-2; other letters kept."""
    z = b(n - 1)
    subst = {a(n - 1): (z, a(1))}
    for i in range(1, n - 1):
        subst[b(i)] = (a(i), z)
    return subst


def substitute(w: Sequence[Letter], subst: dict[Letter, Word]) -> Word:
    out: list[Letter] = []
    for x in w:
        out.extend(subst.get(x, (x,)))
    return tuple(out)


def _one_step(u: Word, v: Word, rel: Relation) -> bool:
    """v arises from u by replacing one occurrence of a side of rel by the other side."""
    for src, dst in ((rel.lhs, rel.rhs), (rel.rhs, rel.lhs)):
        m = len(src)
        if len(u) - m + len(dst) != len(v):
            continue
        for p in range(len(u) - m + 1):
            if u[p:p + m] == src and u[:p] + dst + u[p + m:] == v:
                return True
    return False


def substituted_relations(n: int) -> list[Relation]:
    """R after substitution, with trivial relations and repeats removed."""
    subst = substitution(n)
    out: list[Relation] = []
    seen: set[frozenset] = set()
    for rel in relations(n, "R"):
        lhs, rhs = substitute(rel.lhs, subst), substitute(rel.rhs, subst)
        if lhs == rhs:
            continue
        sides = frozenset((lhs, rhs))
        if sides in seen:
            continue
        seen.add(sides)
        out.append(Relation(lhs, rhs, "R'" + rel.label[1:]))
    return out


def mechanical_reduction(n: int) -> list[Relation]:
    """Substitute, then drop each relation that follows in one step from another one still kept."""
    kept = substituted_relations(n)
    changed = True
    while changed:
        changed = False
        for rel in kept:
            others = [r for r in kept if r is not rel]
            if any(_one_step(rel.lhs, rel.rhs, o) for o in others):
                kept = others
                changed = True
                break
    return kept


def same_relations(xs: Sequence[Relation], ys: Sequence[Relation]) -> bool:
    """Equality as sets of unordered side pairs; labels ignored."""
    return ({r.sides() for r in xs} == {r.sides() for r in ys}
            and len(xs) == len(ys))


def tietze_reduce(n: int) -> RelationSystem:
    """The presentation on a_1..a_{n-2}, b_{n-1}.

    The reduction is carried out mechanically and checked against the
    catalogued family before the catalogue is returned.
    """
    if n < 3:
        raise ValueError(f"the reduced presentation needs n >= 3, got n={n}")
    derived = mechanical_reduction(n)
    catalog = rprime_catalog(n)
    if not same_relations(derived, catalog):
        extra = {r.sides() for r in derived} - {r.sides() for r in catalog}
        missing = {r.sides() for r in catalog} - {r.sides() for r in derived}
        raise AssertionError(f"reduction mismatch at n={n}: extra={extra}, missing={missing}")
    system = RelationSystem("Rprime", n, tuple(catalog))
    if not satisfies_relations(n, system):
        raise AssertionError(f"reduced relations fail in IO_{n}")
    return system
