import unittest

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.core.monoids import (
    are_isomorphic_monoids,
    canonical_monoid,
    enumerate_monoids,
    idempotents,
    monoid_inventory,
    opposite_monoid,
    relabel_monoid,
    submonoid_generators,
    trivial_monoid,
    validate_monoid,
)
from src.errors import AssociativityViolation, IdentityViolation, MalformedTable
from src.models import Monoid

SEMILATTICE = Monoid(table=((0, 1), (1, 1)), identity=0)
Z2 = Monoid(table=((0, 1), (1, 0)), identity=0)


@pytest.mark.parametrize("order, expected", [(1, 1), (2, 2), (3, 7)])
def test_enumerate_monoids_counts_isomorphism_classes(order: int, expected: int) -> None:
    assert len(enumerate_monoids(order)) == expected


def test_order_two_classes_are_group_and_semilattice() -> None:
    assert list(enumerate_monoids(2)) == [Z2, SEMILATTICE]


def test_inventory_is_smallest_first() -> None:
    inventory = monoid_inventory(3)
    assert len(inventory) == 10
    assert [m.size for m in inventory] == sorted(m.size for m in inventory)
    assert inventory[0] == trivial_monoid()


class TestValidateMonoid(unittest.TestCase):
    def test_accepts_semilattice(self) -> None:
        self.assertEqual(validate_monoid([[0, 1], [1, 1]], 0), SEMILATTICE)

    def test_reports_associativity_triple(self) -> None:
        table = [[0, 1, 2], [1, 2, 2], [2, 2, 1]]
        with self.assertRaises(AssociativityViolation) as caught:
            validate_monoid(table, 0)
        self.assertEqual((caught.exception.a, caught.exception.b, caught.exception.c), (1, 1, 2))
        self.assertIn("a=1, b=1, c=2", str(caught.exception))

    def test_reports_identity_failure(self) -> None:
        with self.assertRaises(IdentityViolation) as caught:
            validate_monoid([[0, 0], [0, 1]], 0)
        self.assertEqual(caught.exception.a, 1)

    def test_rejects_ragged_and_empty_tables(self) -> None:
        with self.assertRaises(MalformedTable):
            validate_monoid([[0, 1], [1]], 0)
        with self.assertRaises(MalformedTable):
            validate_monoid([], 0)
        with self.assertRaises(MalformedTable):
            validate_monoid([[0, 2], [1, 1]], 0)


def test_opposite_of_commutative_monoid_is_itself() -> None:
    assert opposite_monoid(SEMILATTICE) == SEMILATTICE


def test_idempotents_of_semilattice_and_group() -> None:
    assert idempotents(SEMILATTICE) == [0, 1]
    assert idempotents(Z2) == [0]


def test_relabelled_monoid_is_isomorphic() -> None:
    moved = relabel_monoid(SEMILATTICE, [1, 0])
    assert moved.identity == 1
    assert moved != SEMILATTICE
    assert are_isomorphic_monoids(moved, SEMILATTICE)
    assert canonical_monoid(moved) == SEMILATTICE
    assert not are_isomorphic_monoids(SEMILATTICE, Z2)


@given(st.sampled_from(monoid_inventory(3)))
def test_inventory_members_are_canonical_and_valid(monoid: Monoid) -> None:
    assert canonical_monoid(monoid) == monoid
    assert validate_monoid(monoid.table, monoid.identity) == monoid
    assert opposite_monoid(opposite_monoid(monoid)) == monoid


@given(st.sampled_from(monoid_inventory(3)))
def test_generators_reach_every_element(monoid: Monoid) -> None:
    reached = {monoid.identity}
    frontier = [monoid.identity]
    generators = submonoid_generators(monoid)
    while frontier:
        x = frontier.pop()
        for g in generators:
            y = monoid.table[x][g]
            if y not in reached:
                reached.add(y)
                frontier.append(y)
    assert reached == set(range(monoid.size))
