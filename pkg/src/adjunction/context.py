"""
伴随上下文 (Context of the adjoint pair H_A ⊣ T_A)

Composition convention, fixed here and nowhere else:
  - E-multiplication is e·f = endos[e] ∘ endos[f];
  - the left E-action on A is e·a = endos[e](a);
  - the right E-action on [A, X] is g·e = g ∘ endos[e].
"""

from __future__ import annotations

import logging

from src.core.acts import (
    compose,
    enumerate_homs,
    identity_hom,
    validate_act,
    validate_left_act,
)
from src.core.monoids import validate_monoid
from src.errors import MonoidMismatch, TheoremViolation
from src.models import Biact, Context, LeftAct, Monoid, RightAct

logger = logging.getLogger(__name__)


def make_context(M: Monoid, A: RightAct) -> Context:
    """
    Build E = End(A) and the E-M biact structure on A.
    E-elements are numbered in canonical hom order.
    """
    if A.monoid != M:
        raise MonoidMismatch("A must be an act over M")
    validate_act(M, A.action)
    endos = tuple(enumerate_homs(A, A))
    index = {endo.map: e for e, endo in enumerate(endos)}
    table = tuple(
        tuple(index[compose(endos[e], endos[f]).map] for f in range(len(endos)))
        for e in range(len(endos))
    )
    identity = index[identity_hom(A).map]
    E = validate_monoid(table, identity)
    left_action = tuple(endo.map for endo in endos)
    biact = Biact(carrier=A, left_monoid=E, left_action=left_action)
    _check_biact(biact)
    logger.debug("[CONTEXT] |M|=%s |A|=%s |E|=%s", M.size, A.size, E.size)
    return Context(M=M, A=A, E=E, endos=endos, biact=biact)


def _check_biact(biact: Biact) -> None:
    A, E = biact.carrier, biact.left_monoid
    for e in range(E.size):
        for a in range(A.size):
            for m in range(A.monoid.size):
                if biact.left_action[e][A.action[a][m]] != A.action[biact.left_action[e][a]][m]:
                    raise TheoremViolation("endomorphisms commute with the M-action", (e, a, m))
            for f in range(E.size):
                if biact.left_action[e][biact.left_action[f][a]] != biact.left_action[
                    E.table[e][f]
                ][a]:
                    raise TheoremViolation("left action realizes E-multiplication", (e, f, a))


def left_act(ctx: Context) -> LeftAct:
    """A as a left E-act."""
    return validate_left_act(ctx.E, ctx.A.size, ctx.biact.left_action)
