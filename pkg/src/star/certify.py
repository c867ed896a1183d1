"""
(弱) *-作用认证 ((Weak) *-act certification)

Premise verdicts are computed by the classify package; this module only
propagates them. A Certified-Yes conclusion that meets a Certified-No from a
necessary condition raises TheoremViolation.
"""

from __future__ import annotations

import logging

from src.adjunction.functors import counit, hom_act, unit
from src.classify.subcategories import is_a_cogenerated, is_a_generated, is_indecomposable_small
from src.classify.verdicts import (
    bounded_colocal,
    colocality_counterexample,
    counit_failure,
    pullback_flat,
    unit_failure,
    weak_self_projective,
)
from src.core.acts import is_epi, is_generator, is_iso, is_mono
from src.core.universe import enumerate_universe
from src.errors import DegenerateEmptyAct, TheoremViolation
from src.models import Context, RightAct, StarReport, Verdict

logger = logging.getLogger(__name__)


def compare_colocal_generated(ctx: Context, bound: int) -> Verdict:
    """
    C_A = G_A at bound.
    Yes when A is a generator, after checking that every X at bound is
    A-generated with no colocality counterexample; No with an A-generated X
    that has a colocality counterexample.
    """
    universe = enumerate_universe(ctx.M, bound)
    if is_generator(ctx.A):
        for X in universe:
            if not is_a_generated(ctx, X):
                raise TheoremViolation("every act is generated by a generator", X)
            if colocality_counterexample(ctx, X, bound) is not None:
                raise TheoremViolation("every act is colocal for a generator", X)
        return Verdict.yes(bound, "generator")
    for X in universe:
        generated = is_a_generated(ctx, X)
        colocal = bounded_colocal(ctx, X, bound)
        if colocal.is_yes and not generated:
            raise TheoremViolation("colocal acts are A-generated", X)
        if generated and colocal.is_no:
            return Verdict.no(bound, X, reason="generated-not-colocal")
    return Verdict.unknown(bound)


def cogeneration_failure(
    ctx: Context, bound: int, indecomposable: bool, wsp: Verdict, flat: Verdict
) -> RightAct | None:
    """
    First Y at bound that is not A-cogenerated although A is indecomposable,
    weak self-projective at bound and pullback-flat. None when the premise fails.
    """
    if not indecomposable or wsp.is_no or not flat.is_yes:
        return None
    return unit_failure(ctx, bound, is_mono)


def check_wstarob(ctx: Context, bound: int) -> Verdict:
    """η_Y epi for every E-side Y at bound."""
    Y = unit_failure(ctx, bound, is_epi)
    if Y is not None:
        return Verdict.no(bound, Y, reason="unit-not-epi")
    return Verdict.unknown(bound)


def equivalence_on_generated(ctx: Context, bound: int) -> bool:
    """H_A and T_A are mutually inverse between G_A and G^A on representatives at bound."""
    for X in enumerate_universe(ctx.M, bound):
        if is_a_generated(ctx, X) and not is_iso(counit(ctx, X)):
            return False
        if not is_a_cogenerated(ctx, hom_act(ctx, X).underlying):
            return False
    for Y in enumerate_universe(ctx.E, bound):
        if is_a_cogenerated(ctx, Y) and not is_iso(unit(ctx, Y)):
            return False
    return True


def check_starob(ctx: Context, bound: int) -> Verdict:
    """δ_X mono for every X and η_Y epi for every Y at bound."""
    X = counit_failure(ctx, bound, is_mono)
    if X is not None:
        return Verdict.no(bound, X, reason="counit-not-mono")
    Y = unit_failure(ctx, bound, is_epi)
    if Y is not None:
        return Verdict.no(bound, Y, reason="unit-not-epi")
    if not equivalence_on_generated(ctx, bound):
        raise TheoremViolation("mono counits and epi units give G_A ≃ G^A", ctx.A)
    return Verdict.unknown(bound)


def star_report(ctx: Context, bound: int) -> StarReport:
    if ctx.A.size == 0:
        raise DegenerateEmptyAct()
    indecomposable = is_indecomposable_small(ctx)
    wsp = weak_self_projective(ctx, bound)
    flat = pullback_flat(ctx, bound)
    c_equals_g = compare_colocal_generated(ctx, bound)
    wstarob = check_wstarob(ctx, bound)
    starob = check_starob(ctx, bound)
    uncogenerated = cogeneration_failure(ctx, bound, indecomposable, wsp, flat)
    if uncogenerated is not None:
        raise TheoremViolation("flat weak self-projective acts cogenerate", uncogenerated)

    # --- weak *-act ---
    if indecomposable and wsp.is_yes:
        if wstarob.is_no:
            raise TheoremViolation("weak *-acts have epimorphic units", wstarob.witness)
        weak_star = Verdict.yes(bound, "indecomposable+weak-self-projective")
    elif wsp.is_no:
        weak_star = Verdict.no(bound, wsp.witness, reason="not-weak-self-projective")
    elif wstarob.is_no:
        weak_star = Verdict.no(bound, wstarob.witness, reason="unit-not-epi")
    else:
        weak_star = Verdict.unknown(bound)

    # --- *-act ---
    if weak_star.is_yes and c_equals_g.is_yes:
        if starob.is_no:
            raise TheoremViolation("*-acts have mono counits and epi units", starob.witness)
        star = Verdict.yes(bound, "weak-star+C=G")
    elif wsp.is_no:
        star = Verdict.no(bound, wsp.witness, reason="not-weak-self-projective")
    elif c_equals_g.is_no:
        star = Verdict.no(bound, c_equals_g.witness, reason="generated-not-colocal")
    elif starob.is_no:
        star = Verdict.no(bound, starob.witness, reason=starob.reason)
    else:
        star = Verdict.unknown(bound)

    logger.info(
        "[STAR] |A|=%s indecomposable=%s weak_star=%s star=%s",
        ctx.A.size,
        indecomposable,
        weak_star.status.value,
        star.status.value,
    )
    return StarReport(
        context=ctx,
        indecomposable=indecomposable,
        weak_self_projective=wsp,
        pullback_flat=flat,
        c_equals_g=c_equals_g,
        wstarob=wstarob,
        starob=starob,
        weak_star=weak_star,
        star=star,
    )
