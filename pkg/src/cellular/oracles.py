"""
Brute-force oracles for the cellular approximation of X at a bound:
  - colimit over every map U → X from a certified-colocal representative U;
  - limit over every H_A-equivalence U → X from a representative U;
and the initiality/terminality check of a candidate approximation.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

from src.adjunction.functors import hom_on_morphism
from src.classify.catalog import equivalences_into
from src.classify.verdicts import bounded_colocal
from src.core.acts import compose, enumerate_homs, identity_hom, is_iso
from src.core.limits import coequalizer, copair, coproduct, factor_through_quotient
from src.core.universe import enumerate_universe
from src.models import ActHom, Approximation, ApproximationKind, Context, RightAct, Verdict

logger = logging.getLogger(__name__)


def _comma_morphisms(objects: Sequence[ActHom]) -> list[tuple[int, int, ActHom]]:
    """(i, j, k) for every k: U_i → U_j with objects[j] ∘ k = objects[i]."""
    morphisms = []
    for i, source in enumerate(objects):
        for j, target in enumerate(objects):
            for k in enumerate_homs(source.source, target.source):
                if tuple(target.map[v] for v in k.map) == source.map:
                    morphisms.append((i, j, k))
    return morphisms


def colocal_maps_into(ctx: Context, X: RightAct, bound: int) -> list[ActHom]:
    """Every h: U → X with U a certified-colocal M-side representative at bound."""
    return [
        h
        for U in enumerate_universe(ctx.M, bound)
        if bounded_colocal(ctx, U, bound).is_yes
        for h in enumerate_homs(U, X)
    ]


def bousfield_colimit_oracle(ctx: Context, X: RightAct, bound: int) -> Approximation:
    """
    colim of the comma diagram of certified-colocal U → X.

    Realized as the coequalizer of source/target maps from the coproduct
    indexed by diagram morphisms into the coproduct indexed by objects.
    """
    objects = colocal_maps_into(ctx, X, bound)
    morphisms = _comma_morphisms(objects)
    total, injections = coproduct([h.source for h in objects], ctx.M)
    arrows, _ = coproduct([k.source for _, _, k in morphisms], ctx.M)
    source_map = copair(arrows, [injections[i] for i, _, _ in morphisms], total)
    target_map = copair(arrows, [compose(injections[j], k) for _, j, k in morphisms], total)
    colimit, projection = coequalizer(source_map, target_map)
    induced = factor_through_quotient(projection, copair(total, objects, X))
    logger.debug(
        "[CELLULAR] colimit oracle: %s objects, %s morphisms, |C|=%s",
        len(objects),
        len(morphisms),
        colimit.size,
    )
    return Approximation(
        target=X,
        obj=colimit,
        map=induced,
        kind=ApproximationKind.BOUSFIELD_COLIMIT,
        is_equivalence=is_iso(hom_on_morphism(ctx, induced)),
        colocality=bounded_colocal(ctx, colimit, bound),
    )


def _compatible_families(
    objects: Sequence[ActHom], morphisms: Sequence[tuple[int, int, ActHom]]
) -> list[tuple[int, ...]]:
    """Elements of the product of the U_i that every diagram morphism respects."""
    # each constraint is checked once both of its ends are chosen
    checks: dict[int, list[tuple[int, int, ActHom]]] = {}
    for i, j, k in morphisms:
        checks.setdefault(max(i, j), []).append((i, j, k))
    families: list[tuple[int, ...]] = []
    chosen: list[int] = []

    def consistent(position: int) -> bool:
        return all(k.map[chosen[i]] == chosen[j] for i, j, k in checks.get(position, ()))

    def search(position: int) -> None:
        if position == len(objects):
            families.append(tuple(chosen))
            return
        for value in range(objects[position].source.size):
            chosen.append(value)
            if consistent(position):
                search(position + 1)
            chosen.pop()

    search(0)
    return families


def bousfield_limit_oracle(ctx: Context, X: RightAct, bound: int) -> Approximation:
    """
    lim of the diagram of H_A-equivalences U → X, with (X, id) included.
    Compatible families are found by a pruned search over the product; the
    map to X is the projection onto the (X, id) component.
    """
    identity = identity_hom(X)
    objects = equivalences_into(ctx, X, bound)
    if identity not in objects:
        objects = [identity, *objects]
    anchor = objects.index(identity)
    morphisms = _comma_morphisms(objects)
    families = _compatible_families(objects, morphisms)
    position = {family: n for n, family in enumerate(families)}
    rows = tuple(
        tuple(
            position[tuple(h.source.action[family[i]][m] for i, h in enumerate(objects))]
            for m in range(ctx.M.size)
        )
        for family in families
    )
    limit = RightAct(monoid=ctx.M, action=rows)
    projection = ActHom(
        source=limit, target=X, map=tuple(family[anchor] for family in families)
    )
    logger.debug(
        "[CELLULAR] limit oracle: %s objects, %s morphisms, |C|=%s",
        len(objects),
        len(morphisms),
        limit.size,
    )
    return Approximation(
        target=X,
        obj=limit,
        map=projection,
        kind=ApproximationKind.BOUSFIELD_LIMIT,
        is_equivalence=is_iso(hom_on_morphism(ctx, projection)),
        colocality=bounded_colocal(ctx, limit, bound),
    )


def initiality_check(ctx: Context, approx: Approximation, bound: int) -> Verdict:
    """
    Initial among H_A-equivalences ending at X, terminal among maps from
    certified-colocal representatives. No carries the map that fails to factor
    uniquely.
    """
    if not approx.is_equivalence:
        raise ValueError("initiality is only defined for H_A-equivalences")
    C, f = approx.obj, approx.map
    for eps in equivalences_into(ctx, approx.target, bound):
        lifts = [u for u in enumerate_homs(C, eps.source) if compose(eps, u).map == f.map]
        if len(lifts) != 1:
            return Verdict.no(bound, eps, reason="not-initial")
    for h in colocal_maps_into(ctx, approx.target, bound):
        lifts = [v for v in enumerate_homs(h.source, C) if compose(f, v).map == h.map]
        if len(lifts) != 1:
            return Verdict.no(bound, h, reason="not-terminal")
    return Verdict.unknown(bound)
