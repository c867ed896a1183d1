import itertools

import pytest

from src.core.acts import (
    compose,
    enumerate_homs,
    identity_hom,
    image_factorize,
    is_epi,
    is_iso,
    is_mono,
    make_hom,
)
from src.core.limits import (
    coequalizer,
    coproduct,
    equalizer,
    factor_through_mono,
    product,
    pullback,
)
from src.core.monoids import monoid_inventory
from src.core.universe import enumerate_universe
from src.models import ActHom, Monoid, RightAct

# Universal properties are checked as hom-set bijections against every test act W.
MONOIDS = monoid_inventory(2)
DIAGRAM_BOUND = 3
TEST_BOUND = 2


def _ids(monoid: Monoid) -> str:
    return f"M{monoid.table}"


def _homs(source: RightAct, target: RightAct) -> list[ActHom]:
    return enumerate_homs(source, target)


def _parallel_pairs(monoid: Monoid):
    universe = enumerate_universe(monoid, DIAGRAM_BOUND)
    for X in universe:
        for Y in universe:
            homs = _homs(X, Y)
            for f, g in itertools.product(homs, repeat=2):
                yield f, g


@pytest.mark.parametrize("monoid", MONOIDS, ids=_ids)
def test_coproduct_represents_pairs_of_maps(monoid: Monoid) -> None:
    universe = enumerate_universe(monoid, DIAGRAM_BOUND)
    tests = enumerate_universe(monoid, TEST_BOUND)
    for X, Y in itertools.product(universe, repeat=2):
        total, (inl, inr) = coproduct([X, Y])
        assert total.size == X.size + Y.size
        for W in tests:
            restricted = [(compose(h, inl).map, compose(h, inr).map) for h in _homs(total, W)]
            expected = [(a.map, b.map) for a in _homs(X, W) for b in _homs(Y, W)]
            assert sorted(restricted) == sorted(expected)
            assert len(set(restricted)) == len(restricted)


@pytest.mark.parametrize("monoid", MONOIDS, ids=_ids)
def test_product_represents_pairs_of_maps(monoid: Monoid) -> None:
    universe = enumerate_universe(monoid, DIAGRAM_BOUND)
    tests = enumerate_universe(monoid, TEST_BOUND)
    for X, Y in itertools.product(universe, repeat=2):
        total, (first, second) = product([X, Y])
        make_hom(total, X, first.map)
        make_hom(total, Y, second.map)
        for W in tests:
            paired = [(compose(first, h).map, compose(second, h).map) for h in _homs(W, total)]
            expected = [(a.map, b.map) for a in _homs(W, X) for b in _homs(W, Y)]
            assert sorted(paired) == sorted(expected)
            assert len(set(paired)) == len(paired)


@pytest.mark.parametrize("monoid", MONOIDS, ids=_ids)
def test_equalizer_represents_equalizing_maps(monoid: Monoid) -> None:
    tests = enumerate_universe(monoid, TEST_BOUND)
    for f, g in _parallel_pairs(monoid):
        sub, inclusion = equalizer(f, g)
        assert is_mono(inclusion)
        assert compose(f, inclusion) == compose(g, inclusion)
        for W in tests:
            through = [compose(inclusion, u).map for u in _homs(W, sub)]
            expected = [h.map for h in _homs(W, f.source) if compose(f, h) == compose(g, h)]
            assert sorted(through) == sorted(expected)
            assert len(set(through)) == len(through)


@pytest.mark.parametrize("monoid", MONOIDS, ids=_ids)
def test_coequalizer_represents_coequalizing_maps(monoid: Monoid) -> None:
    tests = enumerate_universe(monoid, TEST_BOUND)
    for f, g in _parallel_pairs(monoid):
        quotient, projection = coequalizer(f, g)
        assert is_epi(projection)
        assert compose(projection, f) == compose(projection, g)
        for W in tests:
            through = [compose(u, projection).map for u in _homs(quotient, W)]
            expected = [h.map for h in _homs(f.target, W) if compose(h, f) == compose(h, g)]
            assert sorted(through) == sorted(expected)
            assert len(set(through)) == len(through)


@pytest.mark.parametrize("monoid", MONOIDS, ids=_ids)
def test_pullback_represents_commuting_pairs(monoid: Monoid) -> None:
    sources = enumerate_universe(monoid, TEST_BOUND)
    targets = enumerate_universe(monoid, DIAGRAM_BOUND)
    for Z in targets:
        for X, Y in itertools.product(sources, repeat=2):
            for f, g in itertools.product(_homs(X, Z), _homs(Y, Z)):
                apex, first, second = pullback(f, g)
                assert compose(f, first) == compose(g, second)
                for W in sources:
                    paired = [
                        (compose(first, h).map, compose(second, h).map) for h in _homs(W, apex)
                    ]
                    expected = [
                        (a.map, b.map)
                        for a in _homs(W, X)
                        for b in _homs(W, Y)
                        if compose(f, a) == compose(g, b)
                    ]
                    assert sorted(paired) == sorted(expected)
                    assert len(set(paired)) == len(paired)


def _all_homs(monoid: Monoid, bound: int):
    universe = enumerate_universe(monoid, bound)
    for X, Y in itertools.product(universe, repeat=2):
        yield from _homs(X, Y)


@pytest.mark.parametrize("monoid", MONOIDS, ids=_ids)
def test_image_factorization_is_unique_up_to_unique_iso(monoid: Monoid) -> None:
    tests = enumerate_universe(monoid, DIAGRAM_BOUND)
    for f in _all_homs(monoid, DIAGRAM_BOUND):
        epi, image, mono = image_factorize(f)
        assert is_epi(epi) and is_mono(mono)
        assert compose(mono, epi) == f
        make_hom(f.source, image, epi.map)
        for W in tests.of_size(image.size):
            for e in _homs(f.source, W):
                if not is_epi(e):
                    continue
                for m in _homs(W, f.target):
                    if not is_mono(m) or compose(m, e) != f:
                        continue
                    comparisons = [
                        u
                        for u in _homs(image, W)
                        if is_iso(u) and compose(u, epi) == e and compose(m, u) == mono
                    ]
                    assert len(comparisons) == 1


def _induced_on_images(f: ActHom, b: ActHom) -> ActHom:
    """The map im(f) → im(b ∘ f) induced by the square (id, b)."""
    _, _, mono = image_factorize(f)
    _, _, mono_after = image_factorize(compose(b, f))
    return factor_through_mono(mono_after, compose(b, mono))


@pytest.mark.parametrize("monoid", MONOIDS, ids=_ids)
def test_image_factorization_is_functorial(monoid: Monoid) -> None:
    for f in _all_homs(monoid, TEST_BOUND):
        Y = f.target
        epi, image, _ = image_factorize(f)
        assert _induced_on_images(f, identity_hom(Y)) == identity_hom(image)
        endos = _homs(Y, Y)
        for b1, b2 in itertools.product(endos, repeat=2):
            u1 = _induced_on_images(f, b1)
            epi_after, _, _ = image_factorize(compose(b1, f))
            assert compose(u1, epi) == epi_after
            u2 = _induced_on_images(compose(b1, f), b2)
            assert _induced_on_images(f, compose(b2, b1)) == compose(u2, u1)
