"""
H_A = [A, -] and T_A = - ⊗_E A, their action on morphisms, unit η and counit δ.
H_A 与 T_A 函子、单位 η 与余单位 δ。
"""

from __future__ import annotations

import logging
from functools import lru_cache

from src.core.acts import (
    compose,
    enumerate_homs,
    identity_hom,
    is_cyclic,
    is_generator,
    is_iso,
    is_projective,
)
from src.core.limits import congruence_classes, quotient_by_classes
from src.core.universe import enumerate_universe
from src.errors import MonoidMismatch, TheoremViolation
from src.models import (
    ActHom,
    AdjunctionBijection,
    Context,
    HomAct,
    RightAct,
    TensorAct,
    Verdict,
)

logger = logging.getLogger(__name__)


def _require_m_side(ctx: Context, act: RightAct) -> None:
    if act.monoid != ctx.M:
        raise MonoidMismatch("expected an act over M")


def _require_e_side(ctx: Context, act: RightAct) -> None:
    if act.monoid != ctx.E:
        raise MonoidMismatch("expected an act over E = End(A)")


@lru_cache(maxsize=8192)
def hom_act(ctx: Context, X: RightAct) -> HomAct:
    """H_A(X): carrier in canonical hom order, right E-action g·e = g ∘ endos[e]."""
    _require_m_side(ctx, X)
    homs = tuple(enumerate_homs(ctx.A, X))
    index = {hom.map: i for i, hom in enumerate(homs)}
    rows = tuple(
        tuple(index[tuple(hom.map[v] for v in endo.map)] for endo in ctx.endos) for hom in homs
    )
    return HomAct(underlying=RightAct(monoid=ctx.E, action=rows), homs=homs)


@lru_cache(maxsize=8192)
def tensor_act(ctx: Context, Y: RightAct) -> TensorAct:
    """
    T_A(Y) = Y ⊗_E A.

    Pairs (y, a) are indexed y·|A| + a and acted on by (y, a)·m = (y, a·m); the
    classes are the smallest congruence with (y·e, a) ~ (y, e·a).
    """
    _require_e_side(ctx, Y)
    n = ctx.A.size
    monoid_size = ctx.M.size
    rows = tuple(
        tuple(y * n + ctx.A.action[a][m] for m in range(monoid_size))
        for y in range(Y.size)
        for a in range(n)
    )
    pairs = RightAct(monoid=ctx.M, action=rows)
    relations = [
        (Y.action[y][e] * n + a, y * n + ctx.biact.left_action[e][a])
        for y in range(Y.size)
        for e in range(ctx.E.size)
        for a in range(n)
    ]
    classes = congruence_classes(pairs, relations)
    quotient, projection = quotient_by_classes(pairs, classes)
    representatives = tuple(divmod(block[0], n) for block in classes)
    return TensorAct(
        underlying=quotient,
        factor_size=n,
        class_of=projection.map,
        representatives=representatives,
    )


def hom_on_morphism(ctx: Context, f: ActHom) -> ActHom:
    """H_A(f): postcomposition with f."""
    _require_m_side(ctx, f.source)
    source = hom_act(ctx, f.source)
    target = hom_act(ctx, f.target)
    values = tuple(target.index_of(tuple(f.map[v] for v in hom.map)) for hom in source.homs)
    return ActHom(source=source.underlying, target=target.underlying, map=values)


def tensor_on_morphism(ctx: Context, g: ActHom) -> ActHom:
    """T_A(g): [y, a] ↦ [g(y), a]."""
    _require_e_side(ctx, g.source)
    source = tensor_act(ctx, g.source)
    target = tensor_act(ctx, g.target)
    values = tuple(target.class_of_pair(g.map[y], a) for y, a in source.representatives)
    return ActHom(source=source.underlying, target=target.underlying, map=values)


def unit(ctx: Context, Y: RightAct) -> ActHom:
    """η_Y: Y → (H∘T)(Y), y ↦ (a ↦ [y, a])."""
    _require_e_side(ctx, Y)
    tensor = tensor_act(ctx, Y)
    homs = hom_act(ctx, tensor.underlying)
    values = tuple(
        homs.index_of(tuple(tensor.class_of_pair(y, a) for a in range(ctx.A.size)))
        for y in range(Y.size)
    )
    return ActHom(source=Y, target=homs.underlying, map=values)


def counit(ctx: Context, X: RightAct) -> ActHom:
    """δ_X: (T∘H)(X) → X, [g, a] ↦ g(a)."""
    _require_m_side(ctx, X)
    homs = hom_act(ctx, X)
    tensor = tensor_act(ctx, homs.underlying)
    values = tuple(homs.homs[g].map[a] for g, a in tensor.representatives)
    return ActHom(source=tensor.underlying, target=X, map=values)


def check_triangles(ctx: Context, X: RightAct, Y: RightAct) -> bool:
    """H(δ_X) ∘ η_{H(X)} = id and δ_{T(Y)} ∘ T(η_Y) = id."""
    hx = hom_act(ctx, X).underlying
    first = compose(hom_on_morphism(ctx, counit(ctx, X)), unit(ctx, hx))
    ty = tensor_act(ctx, Y).underlying
    second = compose(counit(ctx, ty), tensor_on_morphism(ctx, unit(ctx, Y)))
    return first == identity_hom(hx) and second == identity_hom(ty)


def adjunction_bijection(ctx: Context, Y: RightAct, X: RightAct) -> AdjunctionBijection:
    """
    Hom_M(T_A(Y), X) ≅ Hom_E(Y, H_A(X)) via g ↦ H(g) ∘ η_Y, inverse f ↦ δ_X ∘ T(f).
    Raises TheoremViolation when the two maps are not mutually inverse.
    """
    tensor = tensor_act(ctx, Y).underlying
    homs = hom_act(ctx, X).underlying
    left = tuple(enumerate_homs(tensor, X))
    right = tuple(enumerate_homs(Y, homs))
    left_index = {g.map: i for i, g in enumerate(left)}
    right_index = {f.map: j for j, f in enumerate(right)}
    eta = unit(ctx, Y)
    delta = counit(ctx, X)
    forward = tuple(right_index[compose(hom_on_morphism(ctx, g), eta).map] for g in left)
    backward = tuple(left_index[compose(delta, tensor_on_morphism(ctx, f)).map] for f in right)
    for i, j in enumerate(forward):
        if backward[j] != i:
            raise TheoremViolation("adjunction maps are mutually inverse", left[i])
    if len(left) != len(right):
        raise TheoremViolation("adjunction hom-sets have equal size", (len(left), len(right)))
    return AdjunctionBijection(left=left, right=right, forward=forward, backward=backward)


def is_tensor_fully_faithful(ctx: Context, bound: int) -> Verdict:
    """T_A fully faithful ⟺ every unit η_Y is an isomorphism."""
    for Y in enumerate_universe(ctx.E, bound):
        if not is_iso(unit(ctx, Y)):
            return Verdict.no(bound, Y, reason="unit-not-iso")
    if is_cyclic(ctx.A) and is_projective(ctx.A) and is_generator(ctx.A):
        return Verdict.yes(bound, "generator+projective+cyclic")
    return Verdict.unknown(bound)
