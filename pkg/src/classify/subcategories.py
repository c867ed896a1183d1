"""
子范畴成员判定 (Subcategory membership)
S_H / S^T (δ-, η-reflexive), G_A / G^A (A-generated, A-cogenerated) and the
indecomposability test that is checked against η-reflexivity of E⊔E.
"""

from __future__ import annotations

import logging

from src.adjunction.functors import counit, unit
from src.core.acts import enumerate_homs, is_epi, is_indecomposable, is_iso, is_mono, regular_act
from src.core.limits import copower
from src.errors import DegenerateEmptyAct, TheoremViolation
from src.models import ActHom, Context, RightAct

logger = logging.getLogger(__name__)


def is_delta_reflexive(ctx: Context, X: RightAct) -> bool:
    return is_iso(counit(ctx, X))


def is_eta_reflexive(ctx: Context, Y: RightAct) -> bool:
    return is_iso(unit(ctx, Y))


def covering_homs(ctx: Context, X: RightAct) -> tuple[ActHom, ...] | None:
    """
    Homs A→X whose images jointly cover X, taken greedily in canonical order;
    together they give an epimorphism from a finite copower of A. None if the
    images of all homs A→X miss some element.
    """
    covered: set[int] = set()
    chosen: list[ActHom] = []
    for hom in enumerate_homs(ctx.A, X):
        image = set(hom.map)
        if not image <= covered:
            chosen.append(hom)
            covered |= image
        if len(covered) == X.size:
            break
    if len(covered) != X.size:
        return None
    return tuple(chosen)


def is_a_generated(ctx: Context, X: RightAct) -> bool:
    """δ_X is epi; cross-checked against an explicit cover by copies of A."""
    epi = is_epi(counit(ctx, X))
    covered = covering_homs(ctx, X) is not None
    if epi != covered:
        raise TheoremViolation("δ_X is epi iff X is a quotient of a copower of A", X)
    return epi


def is_a_cogenerated(ctx: Context, Y: RightAct) -> bool:
    return is_mono(unit(ctx, Y))


def is_indecomposable_small(ctx: Context) -> bool:
    """
    可分解性 (Indecomposability of A)
    One connected component, which must agree with η-reflexivity of E⊔E.
    """
    if ctx.A.size == 0:
        raise DegenerateEmptyAct()
    indecomposable = is_indecomposable(ctx.A)
    free_pair = copower(regular_act(ctx.E), 2)
    if indecomposable != is_eta_reflexive(ctx, free_pair):
        raise TheoremViolation("A indecomposable iff E⊔E is η-reflexive", ctx.A)
    return indecomposable
