"""Finite limits and colimits of right acts, with the induced maps of their universal properties."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Sequence

from networkx.utils import UnionFind

from src.core.acts import require_same_monoid, subact
from src.errors import MonoidMismatch, NotParallel, TargetMismatch
from src.models import ActHom, Monoid, RightAct

logger = logging.getLogger(__name__)


def _monoid_of(acts: Sequence[RightAct], monoid: Monoid | None) -> Monoid:
    if acts:
        require_same_monoid(*acts)
        if monoid is not None and acts[0].monoid != monoid:
            raise MonoidMismatch()
        return acts[0].monoid
    if monoid is None:
        raise ValueError("an empty family needs an explicit monoid")
    return monoid


# --- Colimits (余极限) ---


def coproduct(
    acts: Sequence[RightAct], monoid: Monoid | None = None
) -> tuple[RightAct, list[ActHom]]:
    """Disjoint union: block i occupies indices offset_i .. offset_i + |acts[i]| - 1."""
    base = _monoid_of(acts, monoid)
    rows: list[tuple[int, ...]] = []
    offsets: list[int] = []
    for act in acts:
        offset = len(rows)
        offsets.append(offset)
        for x in range(act.size):
            rows.append(tuple(offset + y for y in act.action[x]))
    total = RightAct(monoid=base, action=tuple(rows))
    injections = [
        ActHom(source=act, target=total, map=tuple(offset + x for x in range(act.size)))
        for act, offset in zip(acts, offsets)
    ]
    return total, injections


def copower(act: RightAct, copies: int) -> RightAct:
    """act ⊔ ... ⊔ act (copies times)."""
    return coproduct([act] * copies, act.monoid)[0]


def copair(source: RightAct, homs: Sequence[ActHom], target: RightAct) -> ActHom:
    """[h_0, ..., h_k]: coproduct → target, for a coproduct built by `coproduct`."""
    values = tuple(itertools.chain.from_iterable(h.map for h in homs))
    if len(values) != source.size or any(h.target != target for h in homs):
        raise TargetMismatch()
    return ActHom(source=source, target=target, map=values)


def congruence_classes(act: RightAct, pairs: Iterable[tuple[int, int]]) -> list[list[int]]:
    """
    最小同余 (Smallest congruence containing `pairs`).

    Uses disjoint sets over the carrier, seeded with (p·m, q·m) for every pair and
    every m; the equivalence generated by a set closed under the action is a
    congruence. Classes are ordered by least element.
    """
    uf = UnionFind(range(act.size))
    for p, q in pairs:
        for m in range(act.monoid.size):
            uf.union(act.action[p][m], act.action[q][m])
    classes = [sorted(block) for block in uf.to_sets()]
    classes.sort(key=lambda block: block[0])
    return classes


def quotient_by_classes(act: RightAct, classes: Sequence[Sequence[int]]) -> tuple[RightAct, ActHom]:
    """Quotient act and projection; `classes` must be a congruence partition."""
    class_of = [0] * act.size
    for c, block in enumerate(classes):
        for x in block:
            class_of[x] = c
    rows = tuple(
        tuple(class_of[act.action[block[0]][m]] for m in range(act.monoid.size))
        for block in classes
    )
    quotient = RightAct(monoid=act.monoid, action=rows)
    return quotient, ActHom(source=act, target=quotient, map=tuple(class_of))


def congruence_quotient(
    act: RightAct, pairs: Iterable[tuple[int, int]]
) -> tuple[RightAct, ActHom]:
    return quotient_by_classes(act, congruence_classes(act, pairs))


def coequalizer(f: ActHom, g: ActHom) -> tuple[RightAct, ActHom]:
    """Quotient of the common target by the congruence generated by f(x) ~ g(x)."""
    if f.source != g.source or f.target != g.target:
        raise NotParallel()
    return congruence_quotient(f.target, zip(f.map, g.map))


def factor_through_quotient(projection: ActHom, h: ActHom) -> ActHom:
    """The unique q with q ∘ projection = h; h must be constant on fibres."""
    if projection.source != h.source:
        raise NotParallel()
    values = [-1] * projection.target.size
    for x, c in enumerate(projection.map):
        if values[c] == -1:
            values[c] = h.map[x]
        elif values[c] != h.map[x]:
            raise ValueError(f"map does not factor: fibre {c} is sent to two elements")
    return ActHom(source=projection.target, target=h.target, map=tuple(values))


# --- Limits (极限) ---


def product(
    acts: Sequence[RightAct], monoid: Monoid | None = None
) -> tuple[RightAct, list[ActHom]]:
    """Cartesian product, tuples in lexicographic order; product([]) is the terminal act."""
    base = _monoid_of(acts, monoid)
    sizes = [act.size for act in acts]
    tuples = list(itertools.product(*(range(size) for size in sizes)))
    index = {t: i for i, t in enumerate(tuples)}
    rows = tuple(
        tuple(
            index[tuple(act.action[c][m] for act, c in zip(acts, t))] for m in range(base.size)
        )
        for t in tuples
    )
    total = RightAct(monoid=base, action=rows)
    projections = [
        ActHom(source=total, target=act, map=tuple(t[i] for t in tuples))
        for i, act in enumerate(acts)
    ]
    return total, projections


def product_index(sizes: Sequence[int], coordinates: Sequence[int]) -> int:
    """Position of a tuple in the lexicographic carrier built by `product`."""
    position = 0
    for size, c in zip(sizes, coordinates):
        position = position * size + c
    return position


def pair_into_product(source: RightAct, homs: Sequence[ActHom], target: RightAct) -> ActHom:
    """⟨h_0, ..., h_k⟩: source → product of the codomains."""
    sizes = [h.target.size for h in homs]
    values = tuple(
        product_index(sizes, [h.map[x] for h in homs]) for x in range(source.size)
    )
    return ActHom(source=source, target=target, map=values)


def equalizer(f: ActHom, g: ActHom) -> tuple[RightAct, ActHom]:
    """Subact {x | f(x) = g(x)} with its inclusion."""
    if f.source != g.source or f.target != g.target:
        raise NotParallel()
    agree = [x for x in range(f.source.size) if f.map[x] == g.map[x]]
    return subact(f.source, agree)


def pullback(f: ActHom, g: ActHom) -> tuple[RightAct, ActHom, ActHom]:
    """{(x, y) | f(x) = g(y)} with componentwise action, pairs in lexicographic order."""
    if f.target != g.target:
        raise TargetMismatch()
    pairs = [
        (x, y)
        for x in range(f.source.size)
        for y in range(g.source.size)
        if f.map[x] == g.map[y]
    ]
    index = {pair: i for i, pair in enumerate(pairs)}
    monoid = f.source.monoid
    rows = tuple(
        tuple(
            index[(f.source.action[x][m], g.source.action[y][m])] for m in range(monoid.size)
        )
        for x, y in pairs
    )
    apex = RightAct(monoid=monoid, action=rows)
    first = ActHom(source=apex, target=f.source, map=tuple(x for x, _ in pairs))
    second = ActHom(source=apex, target=g.source, map=tuple(y for _, y in pairs))
    return apex, first, second


def factor_through_mono(mono: ActHom, h: ActHom) -> ActHom:
    """The unique u with mono ∘ u = h; h must land in the image of mono."""
    if mono.target != h.target:
        raise TargetMismatch()
    position = {value: i for i, value in enumerate(mono.map)}
    try:
        values = tuple(position[y] for y in h.map)
    except KeyError as exc:
        raise ValueError(f"map leaves the image of the mono at {exc.args[0]}") from None
    return ActHom(source=h.source, target=mono.source, map=values)
