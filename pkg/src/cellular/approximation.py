"""
胞腔逼近 (A-generated coreflection and colocalization candidate)
"""

from __future__ import annotations

import logging

from config import DEFAULT_BOUND
from src.adjunction.functors import counit, hom_act, hom_on_morphism, tensor_act
from src.classify.subcategories import is_a_generated
from src.classify.verdicts import bounded_colocal
from src.core.acts import image_factorize, is_iso
from src.core.limits import factor_through_mono
from src.errors import TheoremViolation
from src.models import ActHom, Approximation, ApproximationKind, Context, RightAct, Verdict

logger = logging.getLogger(__name__)


def generated_coreflection(
    ctx: Context, X: RightAct, bound: int = DEFAULT_BOUND
) -> Approximation:
    """im δ_X ↪ X, the coreflection of X onto A-generated acts."""
    _, image, mono = image_factorize(counit(ctx, X))
    equivalence = is_iso(hom_on_morphism(ctx, mono))
    if not equivalence:
        raise TheoremViolation("im δ_X → X is an H_A-equivalence", X)
    return Approximation(
        target=X,
        obj=image,
        map=mono,
        kind=ApproximationKind.COREFLECTION,
        is_equivalence=equivalence,
        colocality=bounded_colocal(ctx, image, bound),
    )


def coreflection_factor(ctx: Context, X: RightAct, alpha: ActHom) -> ActHom:
    """The unique u: X' → im δ_X with (im δ_X ↪ X) ∘ u = α, for A-generated X'."""
    if alpha.target != X:
        raise ValueError("alpha must end at X")
    if not is_a_generated(ctx, alpha.source):
        raise ValueError("source of alpha is not A-generated")
    _, _, mono = image_factorize(counit(ctx, X))
    try:
        return factor_through_mono(mono, alpha)
    except ValueError:
        raise TheoremViolation("maps from A-generated acts land in im δ_X", alpha) from None


def colocalization_candidate(
    ctx: Context, X: RightAct, bound: int = DEFAULT_BOUND
) -> Approximation:
    """δ_X: (T∘H)(X) → X. The source lies in Im T, hence is colocal."""
    delta = counit(ctx, X)
    obj = tensor_act(ctx, hom_act(ctx, X).underlying).underlying
    equivalence = is_iso(hom_on_morphism(ctx, delta))
    logger.debug(
        "[CELLULAR] candidate |X|=%s |C|=%s equivalence=%s", X.size, obj.size, equivalence
    )
    return Approximation(
        target=X,
        obj=obj,
        map=delta,
        kind=ApproximationKind.COLOCALIZATION,
        is_equivalence=equivalence,
        colocality=Verdict.yes(bound, "tensor-image"),
    )
