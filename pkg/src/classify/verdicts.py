"""
有界判定 (Bounded verdicts)

Properties quantified over all acts are settled at a universe bound: a
Certified-No always carries a replayable counterexample, a Certified-Yes only
comes from a named closure rule, everything else is Unknown-at-bound.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from typing import Any

from src.adjunction.context import left_act
from src.adjunction.functors import (
    counit,
    hom_act,
    hom_on_morphism,
    tensor_act,
    tensor_on_morphism,
    unit,
)
from src.classify.catalog import equivalence_catalog, tensor_equivalence_catalog
from src.classify.subcategories import is_delta_reflexive, is_eta_reflexive
from src.core.acts import (
    are_isomorphic,
    enumerate_homs,
    image_factorize,
    is_epi,
    is_iso,
    is_projective,
    left_as_right,
    regular_act,
)
from src.core.limits import copower, pullback
from src.core.monoids import opposite_monoid
from src.core.universe import enumerate_universe
from src.errors import TheoremViolation
from src.models import ActHom, Context, RightAct, Verdict

logger = logging.getLogger(__name__)


def _postcomposition_bijective(X: RightAct, eps: ActHom) -> bool:
    """𝒜(X, ε): Hom(X, U) → Hom(X, V) is a bijection."""
    into_source = enumerate_homs(X, eps.source)
    into_target = enumerate_homs(X, eps.target)
    if len(into_source) != len(into_target):
        return False
    images = {tuple(eps.map[v] for v in h.map) for h in into_source}
    return len(images) == len(into_target)


def _precomposition_bijective(Y: RightAct, eps: ActHom) -> bool:
    """ℬ(ε, Y): Hom(V, Y) → Hom(U, Y) is a bijection."""
    from_target = enumerate_homs(eps.target, Y)
    from_source = enumerate_homs(eps.source, Y)
    if len(from_target) != len(from_source):
        return False
    images = {tuple(h.map[v] for v in eps.map) for h in from_target}
    return len(images) == len(from_source)


# --- Colocal / local (余局部与局部) ---


def is_tensor_image(ctx: Context, X: RightAct, bound: int) -> bool:
    """X ≅ T_A(Y) for some E-side representative Y at bound."""
    return any(
        are_isomorphic(X, tensor_act(ctx, Y).underlying) is not None
        for Y in enumerate_universe(ctx.E, bound)
    )


def is_hom_image(ctx: Context, Y: RightAct, bound: int) -> bool:
    """Y ≅ H_A(X) for some M-side representative X at bound."""
    return any(
        are_isomorphic(Y, hom_act(ctx, X).underlying) is not None
        for X in enumerate_universe(ctx.M, bound)
    )


def colocality_counterexample(ctx: Context, X: RightAct, bound: int) -> ActHom | None:
    """First catalog entry ε for which 𝒜(X, ε) is not bijective."""
    for eps in equivalence_catalog(ctx, bound).entries:
        if not _postcomposition_bijective(X, eps):
            return eps
    return None


def locality_counterexample(ctx: Context, Y: RightAct, bound: int) -> ActHom | None:
    for eps in tensor_equivalence_catalog(ctx, bound).entries:
        if not _precomposition_bijective(Y, eps):
            return eps
    return None


def bounded_colocal(ctx: Context, X: RightAct, bound: int) -> Verdict:
    """H_A-colocality of X: S_H ⊆ Im T ⊆ C_H certifies, the catalog falsifies."""
    if is_delta_reflexive(ctx, X):
        return Verdict.yes(bound, "delta-reflexive")
    if is_tensor_image(ctx, X, bound):
        return Verdict.yes(bound, "tensor-image")
    eps = colocality_counterexample(ctx, X, bound)
    if eps is not None:
        return Verdict.no(bound, eps, reason="postcomposition-not-bijective")
    return Verdict.unknown(bound)


def bounded_local(ctx: Context, Y: RightAct, bound: int) -> Verdict:
    """T_A-locality of Y: S^T ⊆ Im H ⊆ C^T certifies, the E-side catalog falsifies."""
    if is_eta_reflexive(ctx, Y):
        return Verdict.yes(bound, "eta-reflexive")
    if is_hom_image(ctx, Y, bound):
        return Verdict.yes(bound, "hom-image")
    eps = locality_counterexample(ctx, Y, bound)
    if eps is not None:
        return Verdict.no(bound, eps, reason="precomposition-not-bijective")
    return Verdict.unknown(bound)


# --- Weak self-projectivity and flatness (弱自投射与平坦性) ---


def _composite_ht(ctx: Context, g: ActHom) -> ActHom:
    return hom_on_morphism(ctx, tensor_on_morphism(ctx, g))


def weak_projectivity_counterexample(ctx: Context, bound: int) -> dict[str, Any] | None:
    """
    First epi g: U→Y with U η-reflexive and (H∘T)(g) not epi.

    Two families are scanned: U and Y among E-side representatives, then free
    covers E^(k) → Y for k <= bound. The witness names its family.
    """
    universe = enumerate_universe(ctx.E, bound)
    sources = [U for U in universe if is_eta_reflexive(ctx, U)]
    for U in sources:
        for Y in universe:
            for g in enumerate_homs(U, Y):
                if is_epi(g) and not is_epi(_composite_ht(ctx, g)):
                    return {"family": "eta-reflexive-source", "hom": g}
    free = regular_act(ctx.E)
    for k in range(1, bound + 1):
        cover = copower(free, k)
        if not is_eta_reflexive(ctx, cover):
            continue
        for Y in universe:
            for g in enumerate_homs(cover, Y):
                if is_epi(g) and not is_epi(_composite_ht(ctx, g)):
                    return {"family": "free-cover", "hom": g}
    return None


def weak_self_projective(ctx: Context, bound: int) -> Verdict:
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound}")
    witness = weak_projectivity_counterexample(ctx, bound)
    projective = is_projective(ctx.A)
    if witness is not None:
        if projective:
            raise TheoremViolation("projective acts are weak self-projective", witness)
        logger.info("[CLASSIFY] weak self-projectivity fails (%s)", witness["family"])
        return Verdict.no(bound, witness, reason=witness["family"])
    if projective:
        return Verdict.yes(bound, "projective-act")
    return Verdict.unknown(bound)


def tensor_preserves_pullback(ctx: Context, f: ActHom, g: ActHom) -> bool:
    """The canonical map T(U ×_Z V) → T(U) ×_{T(Z)} T(V) is an isomorphism."""
    _, first, second = pullback(f, g)
    _, tf_first, tf_second = pullback(tensor_on_morphism(ctx, f), tensor_on_morphism(ctx, g))
    position = {pair: i for i, pair in enumerate(zip(tf_first.map, tf_second.map))}
    t_first = tensor_on_morphism(ctx, first)
    t_second = tensor_on_morphism(ctx, second)
    values = [position[pair] for pair in zip(t_first.map, t_second.map)]
    return len(values) == len(position) and len(set(values)) == len(values)


def pullback_flat(ctx: Context, bound: int) -> Verdict:
    """T_A = - ⊗_E A commutes with pullbacks of E-side cospans at bound."""
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound}")
    left = left_as_right(left_act(ctx), opposite_monoid(ctx.E))
    if is_projective(left):
        return Verdict.yes(bound, "projective⇒strongly-flat")
    universe = enumerate_universe(ctx.E, bound)
    for Z in universe:
        for U in universe:
            for f in enumerate_homs(U, Z):
                for V in universe:
                    for g in enumerate_homs(V, Z):
                        if not tensor_preserves_pullback(ctx, f, g):
                            return Verdict.no(bound, (f, g), reason="pullback-not-preserved")
    return Verdict.unknown(bound)


# --- Spot checks (抽查) ---


def smallest_check(ctx: Context, X: RightAct, bound: int) -> bool:
    """
    When im δ_X ↪ X is an H-equivalence and X is certified colocal, the
    inclusion must be an isomorphism. Vacuously true otherwise.
    """
    _, _, mono = image_factorize(counit(ctx, X))
    if not is_iso(hom_on_morphism(ctx, mono)):
        return True
    if not bounded_colocal(ctx, X, bound).is_yes:
        return True
    return is_iso(mono)


def sisc_spot_check(ctx: Context, bound: int) -> Verdict:
    """
    If every E-side representative and every H_A(X) at bound is η-reflexive,
    δ-reflexivity and certified colocality pick out the same M-side classes.
    """
    universe = enumerate_universe(ctx.M, bound)
    premise = all(is_eta_reflexive(ctx, Y) for Y in enumerate_universe(ctx.E, bound)) and all(
        is_eta_reflexive(ctx, hom_act(ctx, X).underlying) for X in universe
    )
    if not premise:
        return Verdict.unknown(bound, reason="premise-not-met")
    for X in universe:
        if is_delta_reflexive(ctx, X) != bounded_colocal(ctx, X, bound).is_yes:
            return Verdict.no(bound, X, reason="reflexive-colocal-disagree")
    return Verdict.yes(bound, "agrees-at-bound")


def unit_failure(
    ctx: Context, bound: int, check: Callable[[ActHom], bool] = is_epi
) -> RightAct | None:
    """First E-side representative whose unit fails `check`."""
    for Y in enumerate_universe(ctx.E, bound):
        if not check(unit(ctx, Y)):
            return Y
    return None


def counit_failure(
    ctx: Context, bound: int, check: Callable[[ActHom], bool] = is_epi
) -> RightAct | None:
    """First M-side representative whose counit fails `check`."""
    for X in enumerate_universe(ctx.M, bound):
        if not check(counit(ctx, X)):
            return X
    return None
