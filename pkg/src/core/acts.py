"""Right acts over finite monoids, their homomorphisms and structural predicates."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence

import networkx as nx

from src.core.monoids import idempotents
from src.errors import (
    ActAxiomViolation,
    MalformedTable,
    MonoidMismatch,
    NotComposable,
    NotEquivariant,
)
from src.models import ActHom, LeftAct, Monoid, RightAct, Table

logger = logging.getLogger(__name__)


# --- Construction & validation (构造与校验) ---


def validate_act(monoid: Monoid, action: Sequence[Sequence[int]]) -> RightAct:
    """Check the unit and associativity laws of a right action table."""
    size = len(action)
    rows: Table = tuple(tuple(int(v) for v in row) for row in action)
    for x, row in enumerate(rows):
        if len(row) != monoid.size:
            raise MalformedTable(f"act row {x} has {len(row)} entries, expected {monoid.size}")
        for m, value in enumerate(row):
            if not 0 <= value < size:
                raise MalformedTable(f"act entry ({x},{m})={value} outside 0..{size - 1}")
    for x in range(size):
        if rows[x][monoid.identity] != x:
            raise ActAxiomViolation(x, monoid.identity)
    for x, m, n in itertools.product(range(size), range(monoid.size), range(monoid.size)):
        if rows[rows[x][m]][n] != rows[x][monoid.table[m][n]]:
            raise ActAxiomViolation(x, m, n)
    return RightAct(monoid=monoid, action=rows)


def validate_left_act(monoid: Monoid, size: int, action: Sequence[Sequence[int]]) -> LeftAct:
    rows: Table = tuple(tuple(int(v) for v in row) for row in action)
    if len(rows) != monoid.size or any(len(row) != size for row in rows):
        raise MalformedTable(f"left act table must be {monoid.size}x{size}")
    for x in range(size):
        if rows[monoid.identity][x] != x:
            raise ActAxiomViolation(x, monoid.identity)
    for m, n, x in itertools.product(range(monoid.size), range(monoid.size), range(size)):
        if rows[m][rows[n][x]] != rows[monoid.table[m][n]][x]:
            raise ActAxiomViolation(x, m, n)
    return LeftAct(monoid=monoid, size=size, action=rows)


def left_as_right(left: LeftAct, opposite: Monoid) -> RightAct:
    """A left M-act read as a right M^op-act (x·m := m·x)."""
    action = tuple(
        tuple(left.action[m][x] for m in range(left.monoid.size)) for x in range(left.size)
    )
    return RightAct(monoid=opposite, action=action)


def point_act(monoid: Monoid) -> RightAct:
    """Terminal act: one element fixed by every m."""
    return RightAct(monoid=monoid, action=(tuple(0 for _ in range(monoid.size)),))


def regular_act(monoid: Monoid) -> RightAct:
    """M acting on itself by right multiplication."""
    return RightAct(monoid=monoid, action=monoid.table)


def principal_ideal(monoid: Monoid, a: int) -> RightAct:
    """aM as a subact of the regular act, elements relabelled in increasing order."""
    elements = sorted(set(monoid.table[a]))
    index = {value: i for i, value in enumerate(elements)}
    action = tuple(
        tuple(index[monoid.table[value][m]] for m in range(monoid.size)) for value in elements
    )
    return RightAct(monoid=monoid, action=action)


def relabel_act(act: RightAct, perm: Sequence[int]) -> RightAct:
    """Transport the action along old index -> perm[old]."""
    inverse = [0] * act.size
    for old, new in enumerate(perm):
        inverse[new] = old
    action = tuple(
        tuple(perm[act.action[inverse[i]][m]] for m in range(act.monoid.size))
        for i in range(act.size)
    )
    return RightAct(monoid=act.monoid, action=action)


def require_same_monoid(*acts: RightAct) -> None:
    if not acts:
        return
    first = acts[0].monoid
    for act in acts[1:]:
        if act.monoid != first:
            raise MonoidMismatch()


# --- Homomorphisms (同态) ---


def make_hom(source: RightAct, target: RightAct, mapping: Sequence[int]) -> ActHom:
    """Validated constructor: checks range and equivariance."""
    require_same_monoid(source, target)
    values = tuple(int(v) for v in mapping)
    if len(values) != source.size:
        raise MalformedTable(f"hom has {len(values)} entries, expected {source.size}")
    for x, y in enumerate(values):
        if not 0 <= y < target.size:
            raise MalformedTable(f"hom entry {x}->{y} outside 0..{target.size - 1}")
    for x, m in itertools.product(range(source.size), range(source.monoid.size)):
        if values[source.action[x][m]] != target.action[values[x]][m]:
            raise NotEquivariant(x, m)
    return ActHom(source=source, target=target, map=values)


def identity_hom(act: RightAct) -> ActHom:
    return ActHom(source=act, target=act, map=tuple(range(act.size)))


def compose(g: ActHom, f: ActHom) -> ActHom:
    """g ∘ f (apply f first)."""
    if f.target != g.source:
        raise NotComposable()
    return ActHom(source=f.source, target=g.target, map=tuple(g.map[y] for y in f.map))


def enumerate_homs(source: RightAct, target: RightAct) -> list[ActHom]:
    """
    枚举所有同态 (All equivariant maps source→target).

    Backtracking in index order; choosing the image of x fixes the image of its
    whole orbit x·M, so only orbit seeds branch. Output is lexicographic on the
    map array.
    """
    require_same_monoid(source, target)
    return [
        ActHom(source=source, target=target, map=mapping)
        for mapping in _search_maps(source, target, injective=False, limit=None)
    ]


def _search_maps(
    source: RightAct,
    target: RightAct,
    injective: bool,
    limit: int | None,
    allowed: Sequence[Sequence[int]] | None = None,
) -> list[tuple[int, ...]]:
    n, k = source.size, target.size
    monoid_size = source.monoid.size
    assignment = [-1] * n
    owner = [-1] * k
    found: list[tuple[int, ...]] = []

    def assign(x: int, y: int, trail: list[int]) -> bool:
        for m in range(monoid_size):
            xm = source.action[x][m]
            ym = target.action[y][m]
            current = assignment[xm]
            if current == -1:
                if injective and owner[ym] != -1:
                    return False
                assignment[xm] = ym
                if injective:
                    owner[ym] = xm
                trail.append(xm)
            elif current != ym:
                return False
        return True

    def search(x: int) -> bool:
        if x == n:
            found.append(tuple(assignment))
            return limit is not None and len(found) >= limit
        if assignment[x] != -1:
            return search(x + 1)
        candidates = range(k) if allowed is None else allowed[x]
        for y in candidates:
            trail: list[int] = []
            ok = assign(x, y, trail)
            stop = ok and search(x + 1)
            for z in trail:
                if injective:
                    owner[assignment[z]] = -1
                assignment[z] = -1
            if stop:
                return True
        return False

    search(0)
    return found


def is_epi(f: ActHom) -> bool:
    return len(set(f.map)) == f.target.size


def is_mono(f: ActHom) -> bool:
    return len(set(f.map)) == f.source.size


def is_iso(f: ActHom) -> bool:
    return f.source.size == f.target.size and is_mono(f)


def inverse(f: ActHom) -> ActHom:
    """Inverse of a bijective hom; equivariant because the category is balanced."""
    if not is_iso(f):
        raise ValueError("only isomorphisms have inverses")
    values = [0] * f.target.size
    for x, y in enumerate(f.map):
        values[y] = x
    return ActHom(source=f.target, target=f.source, map=tuple(values))


# --- Subacts, images, components (子作用与分解) ---


def subact(act: RightAct, elements: Sequence[int]) -> tuple[RightAct, ActHom]:
    """The subact on a closed subset, relabelled in increasing order, with its inclusion."""
    chosen = sorted(set(elements))
    index = {value: i for i, value in enumerate(chosen)}
    rows: list[tuple[int, ...]] = []
    for value in chosen:
        row = []
        for m in range(act.monoid.size):
            image = act.action[value][m]
            if image not in index:
                raise ValueError(f"subset is not closed: {value}·{m}={image} escapes")
            row.append(index[image])
        rows.append(tuple(row))
    sub = RightAct(monoid=act.monoid, action=tuple(rows))
    return sub, ActHom(source=sub, target=act, map=tuple(chosen))


def orbit(act: RightAct, x: int) -> set[int]:
    """x·M."""
    return set(act.action[x])


def image_factorize(f: ActHom) -> tuple[ActHom, RightAct, ActHom]:
    """f = mono ∘ epi through the set-image of f with the induced action."""
    image, mono = subact(f.target, f.map)
    position = {value: i for i, value in enumerate(mono.map)}
    epi = ActHom(source=f.source, target=image, map=tuple(position[y] for y in f.map))
    return epi, image, mono


def component_partition(act: RightAct) -> list[list[int]]:
    """Connected components of the graph with edges {x, x·m}, ordered by least element."""
    graph = nx.Graph()
    graph.add_nodes_from(range(act.size))
    for x in range(act.size):
        for y in act.action[x]:
            if y != x:
                graph.add_edge(x, y)
    parts = [sorted(component) for component in nx.connected_components(graph)]
    parts.sort(key=lambda part: part[0])
    return parts


def connected_components(act: RightAct) -> list[RightAct]:
    return [subact(act, part)[0] for part in component_partition(act)]


def is_indecomposable(act: RightAct) -> bool:
    """Exactly one component; the empty act has none and is not indecomposable."""
    return len(component_partition(act)) == 1


def is_cyclic(act: RightAct) -> bool:
    return any(len(orbit(act, a)) == act.size for a in range(act.size))


def is_projective(act: RightAct) -> bool:
    """Every component is isomorphic to eM for an idempotent e."""
    monoid = act.monoid
    ideals = [principal_ideal(monoid, e) for e in idempotents(monoid)]
    for component in connected_components(act):
        if not any(are_isomorphic(component, ideal) is not None for ideal in ideals):
            return False
    return True


def find_retraction(small: RightAct, big: RightAct) -> tuple[ActHom, ActHom] | None:
    """
    Maps α: small→big, β: big→small with β∘α = id_small, or None.
    First pair in canonical (α, β) order.
    """
    require_same_monoid(small, big)
    identity = tuple(range(small.size))
    for beta in enumerate_homs(big, small):
        if not is_epi(beta):
            continue
        for alpha in enumerate_homs(small, big):
            if tuple(beta.map[y] for y in alpha.map) == identity:
                return alpha, beta
    return None


def is_generator(act: RightAct) -> bool:
    """M is a retract of the act."""
    return generator_retraction(act) is not None


def generator_retraction(act: RightAct) -> tuple[ActHom, ActHom] | None:
    """
    α: M→A, β: A→M with β∘α = id_M.

    α is fixed by a = α(1), and β∘α = id exactly when β(a) = 1, so it suffices
    to find a hom β hitting the identity.
    """
    monoid = act.monoid
    regular = regular_act(monoid)
    for beta in enumerate_homs(act, regular):
        for a, value in enumerate(beta.map):
            if value == monoid.identity:
                alpha = ActHom(source=regular, target=act, map=tuple(act.action[a]))
                return alpha, beta
    return None


# --- Isomorphism (同构判定) ---


def orbit_profile(act: RightAct) -> list[int]:
    return sorted(len(orbit(act, x)) for x in range(act.size))


def are_isomorphic(left: RightAct, right: RightAct) -> ActHom | None:
    """
    First isomorphism left→right in canonical order, or None.
    Pruned by orbit-size multisets, then element-wise by orbit size.
    """
    if left.monoid != right.monoid or left.size != right.size:
        return None
    if orbit_profile(left) != orbit_profile(right):
        return None
    left_sizes = [len(orbit(left, x)) for x in range(left.size)]
    right_sizes = [len(orbit(right, y)) for y in range(right.size)]
    by_size: dict[int, list[int]] = {}
    for y, size in enumerate(right_sizes):
        by_size.setdefault(size, []).append(y)
    allowed = [by_size.get(size, []) for size in left_sizes]
    found = _search_maps(left, right, injective=True, limit=1, allowed=allowed)
    if not found:
        return None
    return ActHom(source=left, target=right, map=found[0])


def canonical_table(act: RightAct) -> Table:
    """Least action table over all relabellings; equal iff isomorphic."""
    best: Table | None = None
    for perm in itertools.permutations(range(act.size)):
        candidate = relabel_act(act, perm).action
        if best is None or candidate < best:
            best = candidate
    return best if best is not None else ()

