"""
有限 universe 枚举 (Bounded universes of acts)
Every act over M with at most `bound` elements, one per isomorphism class.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import logging
import os
import tempfile
from collections import deque
from functools import lru_cache

from config import CACHE_DIR
from src.core.acts import are_isomorphic, canonical_table, orbit_profile, validate_act
from src.core.monoids import submonoid_generators
from src.errors import ActKitError
from src.models import Monoid, RightAct, Table, Universe

logger = logging.getLogger(__name__)

Columns = dict[int, tuple[int, ...]]

# bump when the cache payload or canonical form changes
CACHE_FORMAT = 2


def enumerate_universe(monoid: Monoid, bound: int) -> Universe:
    """
    All acts of size <= bound up to isomorphism.
    Order: by size, then by canonical table.
    """
    if bound < 0:
        raise ValueError(f"bound must be >= 0, got {bound}")
    representatives: list[RightAct] = []
    for size in range(bound + 1):
        for table in _classes_of_size(monoid, size):
            representatives.append(RightAct(monoid=monoid, action=table))
    return Universe(monoid=monoid, bound=bound, representatives=tuple(representatives))


@lru_cache(maxsize=256)
def _classes_of_size(monoid: Monoid, size: int) -> tuple[Table, ...]:
    cached = _read_cache(monoid, size)
    if cached is not None:
        return cached
    # buckets by orbit-size profile; only same-profile acts can be isomorphic
    buckets: dict[tuple[int, ...], list[RightAct]] = {}
    for table in iter_act_tables(monoid, size):
        act = RightAct(monoid=monoid, action=table)
        bucket = buckets.setdefault(tuple(orbit_profile(act)), [])
        if all(are_isomorphic(act, kept) is None for kept in bucket):
            bucket.append(act)
    classes = tuple(sorted(canonical_table(act) for kept in buckets.values() for act in kept))
    logger.info(
        "[UNIVERSE] |M|=%s size=%s: %s isomorphism classes", monoid.size, size, len(classes)
    )
    _write_cache(monoid, size, classes)
    return classes


def clear_universe_cache() -> None:
    """Drop the in-process memo; the on-disk cache is left alone."""
    _classes_of_size.cache_clear()


def iter_act_tables(monoid: Monoid, size: int):
    """
    Every action table of the given size (not deduplicated).

    An act is a homomorphism from M into the transformations of the carrier;
    columns x ↦ x·g are chosen for a generating set g of M and the rest is
    forced by col[ab] = col[b] ∘ col[a], pruning on the first conflict.
    """
    if size == 0:
        yield ()
        return
    generators = submonoid_generators(monoid)
    functions = list(itertools.product(range(size), repeat=size))
    start: Columns = {monoid.identity: tuple(range(size))}

    def extend(columns: Columns, depth: int):
        if depth == len(generators):
            yield tuple(
                tuple(columns[m][x] for m in range(monoid.size)) for x in range(size)
            )
            return
        g = generators[depth]
        for function in functions:
            grown = _close_columns(monoid, columns, g, function)
            if grown is not None:
                yield from extend(grown, depth + 1)

    yield from extend(start, 0)


def _close_columns(
    monoid: Monoid, columns: Columns, element: int, column: tuple[int, ...]
) -> Columns | None:
    """Add one column and close under products; None on a conflict."""
    existing = columns.get(element)
    if existing is not None:
        return dict(columns) if existing == column else None
    grown = dict(columns)
    grown[element] = column
    queue = deque([element])
    while queue:
        a = queue.popleft()
        for b in list(grown):
            for left, right in ((a, b), (b, a)):
                ab = monoid.table[left][right]
                # x·(ab) = (x·a)·b
                composed = tuple(grown[right][v] for v in grown[left])
                current = grown.get(ab)
                if current is None:
                    grown[ab] = composed
                    queue.append(ab)
                elif current != composed:
                    return None
    return grown


# --- Disk cache (磁盘缓存) ---


def cache_key(monoid: Monoid, size: int) -> str:
    payload = json.dumps(
        {"format": CACHE_FORMAT, "table": monoid.table, "identity": monoid.identity, "size": size}
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def _cache_path(monoid: Monoid, size: int) -> str | None:
    if not CACHE_DIR:
        return None
    return os.path.join(CACHE_DIR, f"universe-{cache_key(monoid, size)}.json")


def _read_cache(monoid: Monoid, size: int) -> tuple[Table, ...] | None:
    path = _cache_path(monoid, size)
    if path is None or not os.path.exists(path):
        return None
    try:
        with open(path, encoding="utf-8") as handle:
            payload = json.load(handle)
        classes = tuple(tuple(tuple(row) for row in table) for table in payload["classes"])
    except (OSError, ValueError, KeyError, TypeError) as exc:
        logger.warning("[UNIVERSE] ignoring unreadable cache %s: %s", path, exc)
        return None
    problem = _cache_problem(monoid, size, payload, classes)
    if problem is not None:
        logger.warning("[UNIVERSE] ignoring stale cache %s: %s", path, problem)
        return None
    logger.debug("[UNIVERSE] cache hit %s", path)
    return classes


def _cache_problem(
    monoid: Monoid, size: int, payload: dict, classes: tuple[Table, ...]
) -> str | None:
    """Why a loaded cache entry cannot be trusted, or None."""
    if payload.get("format") != CACHE_FORMAT:
        return f"format {payload.get('format')!r}, expected {CACHE_FORMAT}"
    if payload.get("size") != size or payload.get("identity") != monoid.identity:
        return "header does not match the requested monoid and size"
    if payload.get("monoid") != [list(row) for row in monoid.table]:
        return "monoid table differs"
    for table in classes:
        if len(table) != size:
            return f"table of size {len(table)} in a size-{size} entry"
        try:
            act = validate_act(monoid, table)
        except (ActKitError, ValueError, TypeError) as exc:
            return str(exc)
        if canonical_table(act) != table:
            return "table is not in canonical form"
    if list(classes) != sorted(set(classes)):
        return "classes are not sorted and distinct"
    return None


def _write_cache(monoid: Monoid, size: int, classes: tuple[Table, ...]) -> None:
    path = _cache_path(monoid, size)
    if path is None:
        return
    try:
        os.makedirs(CACHE_DIR, exist_ok=True)
        fd, tmp_path = tempfile.mkstemp(dir=CACHE_DIR, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            json.dump(
                {
                    "format": CACHE_FORMAT,
                    "monoid": monoid.table,
                    "identity": monoid.identity,
                    "size": size,
                    "classes": classes,
                },
                handle,
            )
        os.replace(tmp_path, path)
    except OSError as exc:
        logger.warning("[UNIVERSE] could not write cache %s: %s", path, exc)
