"""
Morita 程序 (Morita program)
Cyclic projective generators A of M-acts and the equivalence H_A ⊣ T_A they induce.
"""

from __future__ import annotations

import logging

from src.adjunction.context import make_context
from src.adjunction.functors import counit, unit
from src.core.acts import is_cyclic, is_generator, is_iso, is_projective
from src.core.universe import enumerate_universe
from src.errors import TheoremViolation
from src.models import MoritaCandidate, MoritaCertificate, Monoid, RightAct

logger = logging.getLogger(__name__)


def is_morita_generator(A: RightAct) -> bool:
    return is_cyclic(A) and is_projective(A) and is_generator(A)


def morita_candidates(M: Monoid) -> list[MoritaCandidate]:
    """
    Every cyclic projective generator up to isomorphism, with End(A).
    A cyclic act is a·M, so the universe at bound |M| is exhaustive.
    """
    candidates = [
        MoritaCandidate(A=A, E=make_context(M, A).E)
        for A in enumerate_universe(M, M.size)
        if is_morita_generator(A)
    ]
    logger.info("[MORITA] |M|=%s: %s candidate(s)", M.size, len(candidates))
    return candidates


def verify_morita(M: Monoid, A: RightAct, bound: int) -> MoritaCertificate:
    """
    δ_X iso for every M-side X and η_Y iso for every E-side Y at bound.
    Any failure raises TheoremViolation.
    """
    if not is_morita_generator(A):
        raise ValueError("A must be a cyclic projective generator")
    ctx = make_context(M, A)
    checked_x = 0
    for X in enumerate_universe(M, bound):
        if not is_iso(counit(ctx, X)):
            raise TheoremViolation("δ_X is an isomorphism for a cyclic projective generator", X)
        checked_x += 1
    checked_y = 0
    for Y in enumerate_universe(ctx.E, bound):
        if not is_iso(unit(ctx, Y)):
            raise TheoremViolation("η_Y is an isomorphism for a cyclic projective generator", Y)
        checked_y += 1
    logger.info(
        "[MORITA] certified |A|=%s |E|=%s at bound %s (X=%s, Y=%s)",
        A.size,
        ctx.E.size,
        bound,
        checked_x,
        checked_y,
    )
    return MoritaCertificate(
        M=M, A=A, E=ctx.E, bound=bound, checked_x=checked_x, checked_y=checked_y
    )
