import itertools
import unittest

import pytest

from src.adjunction.context import make_context
from src.cellular.approximation import (
    colocalization_candidate,
    coreflection_factor,
    generated_coreflection,
)
from src.cellular.oracles import (
    bousfield_colimit_oracle,
    bousfield_limit_oracle,
    colocal_maps_into,
    initiality_check,
)
from src.classify.subcategories import is_a_generated
from src.classify.verdicts import bounded_colocal
from src.core.acts import compose, enumerate_homs, identity_hom, make_hom
from src.core.monoids import monoid_inventory
from src.core.universe import enumerate_universe
from src.models import Approximation, ApproximationKind, Monoid, RightAct, Verdict

SEMILATTICE = Monoid(table=((0, 1), (1, 1)), identity=0)
POINT = RightAct(SEMILATTICE, ((0, 0),))
REGULAR = RightAct(SEMILATTICE, ((0, 1), (1, 1)))


def _point_ctx():
    return make_context(SEMILATTICE, POINT)


class TestCoreflection(unittest.TestCase):
    def test_regular_act_retracts_to_its_fixed_point(self) -> None:
        approx = generated_coreflection(_point_ctx(), REGULAR, 2)
        self.assertEqual(approx.kind, ApproximationKind.COREFLECTION)
        self.assertEqual(approx.obj, POINT)
        self.assertEqual(approx.map.map, (1,))
        self.assertTrue(approx.is_certified)
        self.assertEqual(approx.colocality.reason, "delta-reflexive")

    def test_factor_through_coreflection(self) -> None:
        ctx = _point_ctx()
        alpha = make_hom(POINT, REGULAR, [1])
        self.assertEqual(coreflection_factor(ctx, REGULAR, alpha).map, (0,))

    def test_factor_rejects_non_generated_source(self) -> None:
        with self.assertRaises(ValueError):
            coreflection_factor(_point_ctx(), REGULAR, identity_hom(REGULAR))

    def test_factor_rejects_wrong_target(self) -> None:
        with self.assertRaises(ValueError):
            coreflection_factor(_point_ctx(), POINT, make_hom(POINT, REGULAR, [1]))


def test_colocalization_candidate_is_counit() -> None:
    approx = colocalization_candidate(_point_ctx(), REGULAR, 2)
    assert approx.kind == ApproximationKind.COLOCALIZATION
    assert approx.obj.size == 1
    assert approx.map.map == (1,)
    assert approx.is_equivalence
    assert approx.colocality.reason == "tensor-image"


def test_colocal_maps_skip_non_colocal_sources() -> None:
    maps = colocal_maps_into(_point_ctx(), REGULAR, 2)
    assert all(h.source.size != 2 or h.source.action == ((0, 0), (1, 1)) for h in maps)
    assert [h.map for h in maps if h.source == POINT] == [(1,)]


@pytest.mark.parametrize("oracle", [bousfield_colimit_oracle, bousfield_limit_oracle])
def test_oracles_agree_with_coreflection(oracle) -> None:
    ctx = _point_ctx()
    approx = oracle(ctx, REGULAR, 2)
    assert approx.obj.size == 1
    assert approx.map.map == (1,)
    assert approx.is_certified


@pytest.mark.parametrize("X", enumerate_universe(SEMILATTICE, 2).representatives)
def test_oracles_are_equivalences_on_small_acts(X: RightAct) -> None:
    ctx = _point_ctx()
    assert bousfield_colimit_oracle(ctx, X, 2).is_equivalence
    assert bousfield_limit_oracle(ctx, X, 2).is_equivalence


class TestInitiality(unittest.TestCase):
    def test_coreflection_survives_the_check(self) -> None:
        ctx = _point_ctx()
        approx = generated_coreflection(ctx, REGULAR, 2)
        self.assertTrue(initiality_check(ctx, approx, 2).is_unknown)

    def test_identity_is_not_initial(self) -> None:
        ctx = _point_ctx()
        supplied = Approximation(
            target=REGULAR,
            obj=REGULAR,
            map=identity_hom(REGULAR),
            kind=ApproximationKind.SUPPLIED,
            is_equivalence=True,
            colocality=bounded_colocal(ctx, REGULAR, 2),
        )
        verdict = initiality_check(ctx, supplied, 2)
        self.assertTrue(verdict.is_no)
        self.assertEqual(verdict.reason, "not-initial")
        self.assertEqual(verdict.witness.source, POINT)

    def test_non_equivalence_is_rejected(self) -> None:
        approx = Approximation(
            target=REGULAR,
            obj=RightAct(SEMILATTICE, ()),
            map=make_hom(RightAct(SEMILATTICE, ()), REGULAR, []),
            kind=ApproximationKind.SUPPLIED,
            is_equivalence=False,
            colocality=Verdict.unknown(2),
        )
        with self.assertRaises(ValueError):
            initiality_check(_point_ctx(), approx, 2)


def _small_contexts():
    return [
        make_context(M, A)
        for M in monoid_inventory(2)
        for A in enumerate_universe(M, 2)
        if A.size > 0
    ]


def _ctx_id(ctx) -> str:
    return f"M{ctx.M.table}-A{ctx.A.action}"


@pytest.mark.parametrize("ctx", _small_contexts(), ids=_ctx_id)
def test_coreflection_represents_maps_from_generated_acts(ctx) -> None:
    universe = enumerate_universe(ctx.M, 2)
    generated = [source for source in universe if is_a_generated(ctx, source)]
    for X in universe:
        approx = generated_coreflection(ctx, X, 2)
        for source in generated:
            through = sorted(
                compose(approx.map, u).map for u in enumerate_homs(source, approx.obj)
            )
            assert through == [alpha.map for alpha in enumerate_homs(source, X)]
            for alpha in enumerate_homs(source, X):
                u = coreflection_factor(ctx, X, alpha)
                assert compose(approx.map, u) == alpha
                for before in generated:
                    for h in enumerate_homs(before, source):
                        assert coreflection_factor(ctx, X, compose(alpha, h)) == compose(u, h)


@pytest.mark.parametrize("ctx", _small_contexts(), ids=_ctx_id)
def test_coreflection_is_functorial(ctx) -> None:
    universe = enumerate_universe(ctx.M, 2)
    approx = {X: generated_coreflection(ctx, X, 2) for X in universe}

    def on_map(f):
        return coreflection_factor(ctx, f.target, compose(f, approx[f.source].map))

    for X in universe:
        assert on_map(identity_hom(X)) == identity_hom(approx[X].obj)
    for X, Y, Z in itertools.product(universe, repeat=3):
        for f in enumerate_homs(X, Y):
            for g in enumerate_homs(Y, Z):
                assert on_map(compose(g, f)) == compose(on_map(g), on_map(f))
