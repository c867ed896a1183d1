"""Bounded catalogs of H_A- and T_A-equivalences between universe representatives."""

from __future__ import annotations

import logging
from functools import lru_cache

from src.adjunction.functors import hom_on_morphism, tensor_on_morphism
from src.core.acts import enumerate_homs, is_iso
from src.core.universe import enumerate_universe
from src.models import ActHom, Context, EquivalenceCatalog, RightAct

logger = logging.getLogger(__name__)


@lru_cache(maxsize=64)
def equivalence_catalog(ctx: Context, bound: int) -> EquivalenceCatalog:
    """
    Eq(H) at bound: every ε between M-side representatives with H_A(ε) iso.
    Targets are enumerated before sources, sources before maps.
    """
    universe = enumerate_universe(ctx.M, bound)
    entries = [
        hom
        for target in universe
        for source in universe
        for hom in enumerate_homs(source, target)
        if is_iso(hom_on_morphism(ctx, hom))
    ]
    logger.info("[CLASSIFY] Eq(H) at bound %s: %s entries", bound, len(entries))
    return EquivalenceCatalog(side="M", bound=bound, entries=tuple(entries))


@lru_cache(maxsize=64)
def tensor_equivalence_catalog(ctx: Context, bound: int) -> EquivalenceCatalog:
    """Eq(T) at bound, over E-side representatives."""
    universe = enumerate_universe(ctx.E, bound)
    entries = [
        hom
        for target in universe
        for source in universe
        for hom in enumerate_homs(source, target)
        if is_iso(tensor_on_morphism(ctx, hom))
    ]
    logger.info("[CLASSIFY] Eq(T) at bound %s: %s entries", bound, len(entries))
    return EquivalenceCatalog(side="E", bound=bound, entries=tuple(entries))


def equivalences_into(ctx: Context, X: RightAct, bound: int) -> list[ActHom]:
    """H_A-equivalences U→X with U a representative at bound (X need not be one)."""
    return [
        hom
        for source in enumerate_universe(ctx.M, bound)
        for hom in enumerate_homs(source, X)
        if is_iso(hom_on_morphism(ctx, hom))
    ]
