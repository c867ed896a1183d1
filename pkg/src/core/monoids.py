"""Finite monoids: validation, canonical forms and the small-order inventory."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from functools import lru_cache

from src.errors import AssociativityViolation, IdentityViolation, MalformedTable
from src.models import Monoid, Table

logger = logging.getLogger(__name__)


def validate_monoid(table: Sequence[Sequence[int]], identity: int) -> Monoid:
    """
    校验乘法表 (Validate a multiplication table).

    Raises:
        MalformedTable: table not square or entries out of range
        IdentityViolation: `identity` is not a two-sided identity
        AssociativityViolation: (a·b)·c != a·(b·c) for the reported triple
    """
    n = len(table)
    if n == 0:
        raise MalformedTable("a monoid needs at least one element")
    rows: Table = tuple(tuple(int(v) for v in row) for row in table)
    for a, row in enumerate(rows):
        if len(row) != n:
            raise MalformedTable(f"row {a} has {len(row)} entries, expected {n}")
        for b, value in enumerate(row):
            if not 0 <= value < n:
                raise MalformedTable(f"entry ({a},{b})={value} outside 0..{n - 1}")
    if not 0 <= identity < n:
        raise MalformedTable(f"identity {identity} outside 0..{n - 1}")

    for a in range(n):
        if rows[identity][a] != a or rows[a][identity] != a:
            raise IdentityViolation(a, identity)

    for a, b, c in itertools.product(range(n), repeat=3):
        if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
            raise AssociativityViolation(a, b, c)

    return Monoid(table=rows, identity=identity)


def trivial_monoid() -> Monoid:
    return Monoid(table=((0,),), identity=0)


def idempotents(monoid: Monoid) -> list[int]:
    return [e for e in range(monoid.size) if monoid.table[e][e] == e]


def opposite_monoid(monoid: Monoid) -> Monoid:
    """M^op: a ∗ b = b·a. Left M-acts are right M^op-acts."""
    n = monoid.size
    table = tuple(tuple(monoid.table[b][a] for b in range(n)) for a in range(n))
    return Monoid(table=table, identity=monoid.identity)


def relabel_monoid(monoid: Monoid, perm: Sequence[int]) -> Monoid:
    """Transport the table along the bijection old index -> perm[old]."""
    n = monoid.size
    inverse = [0] * n
    for old, new in enumerate(perm):
        inverse[new] = old
    table = tuple(
        tuple(perm[monoid.table[inverse[a]][inverse[b]]] for b in range(n)) for a in range(n)
    )
    return Monoid(table=table, identity=perm[monoid.identity])


def canonical_monoid(monoid: Monoid) -> Monoid:
    """Least relabelled table with the identity moved to 0."""
    n = monoid.size
    others = [a for a in range(n) if a != monoid.identity]
    best: Monoid | None = None
    for arrangement in itertools.permutations(range(1, n)):
        perm = [0] * n
        perm[monoid.identity] = 0
        for old, new in zip(others, arrangement):
            perm[old] = new
        candidate = relabel_monoid(monoid, perm)
        if best is None or candidate.table < best.table:
            best = candidate
    assert best is not None
    return best


def are_isomorphic_monoids(left: Monoid, right: Monoid) -> bool:
    if left.size != right.size:
        return False
    return canonical_monoid(left) == canonical_monoid(right)


@lru_cache(maxsize=None)
def enumerate_monoids(order: int) -> tuple[Monoid, ...]:
    """
    枚举同构类 (One monoid per isomorphism class of the given order).

    Exhaustive over tables with identity 0, deduplicated by canonical form;
    returned in increasing canonical-table order.
    """
    if order < 1:
        return ()
    n = order
    free_cells = [(a, b) for a in range(1, n) for b in range(1, n)]
    seen: set[Table] = set()
    found: list[Monoid] = []
    for values in itertools.product(range(n), repeat=len(free_cells)):
        grid = [[0] * n for _ in range(n)]
        for k in range(n):
            grid[0][k] = k
            grid[k][0] = k
        for (a, b), value in zip(free_cells, values):
            grid[a][b] = value
        if not _is_associative(grid):
            continue
        canonical = canonical_monoid(Monoid(tuple(tuple(row) for row in grid), 0))
        if canonical.table in seen:
            continue
        seen.add(canonical.table)
        found.append(canonical)
    found.sort(key=lambda m: m.table)
    logger.debug("[UNIVERSE] monoids of order %s: %s classes", order, len(found))
    return tuple(found)


def _is_associative(grid: list[list[int]]) -> bool:
    n = len(grid)
    for a in range(n):
        row_a = grid[a]
        for b in range(n):
            ab = row_a[b]
            for c in range(n):
                if grid[ab][c] != row_a[grid[b][c]]:
                    return False
    return True


def monoid_inventory(max_order: int) -> list[Monoid]:
    """All monoids of order 1..max_order, smallest first."""
    inventory: list[Monoid] = []
    for order in range(1, max_order + 1):
        inventory.extend(enumerate_monoids(order))
    return inventory


def submonoid_generators(monoid: Monoid) -> list[int]:
    """Greedy generating set in index order: an element is added when not yet reachable."""
    reached = {monoid.identity}
    generators: list[int] = []
    for m in range(monoid.size):
        if m in reached:
            continue
        generators.append(m)
        reached = multiplicative_closure(monoid, reached | {m})
    return generators


def multiplicative_closure(monoid: Monoid, elements: set[int]) -> set[int]:
    closed = set(elements)
    frontier = list(closed)
    while frontier:
        nxt: list[int] = []
        for x in frontier:
            for y in list(closed):
                for product in (monoid.table[x][y], monoid.table[y][x]):
                    if product not in closed:
                        closed.add(product)
                        nxt.append(product)
        frontier = nxt
    return closed
