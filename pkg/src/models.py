"""Value types shared across actkit.

All records are frozen: every operation is a pure function of its inputs, so
values can be cached, hashed and shared across threads.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Monoid:
    """
    有限幺半群 (Finite Monoid)
    table[a][b] = a·b, elements are 0-based indices.
    """
    table: Table
    identity: int

    @property
    def size(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]


@dataclass(frozen=True)
class RightAct:
    """
    右作用 (Right M-act)
    action[x][m] = x·m; the empty act (size 0) is a legal value.
    """
    monoid: Monoid
    action: Table

    @property
    def size(self) -> int:
        return len(self.action)

    def act(self, x: int, m: int) -> int:
        return self.action[x][m]


@dataclass(frozen=True)
class LeftAct:
    """Left act: action[m][x] = m·x."""
    monoid: Monoid
    size: int
    action: Table


@dataclass(frozen=True)
class ActHom:
    """Equivariant map between two right acts over the same monoid."""
    source: RightAct
    target: RightAct
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]


@dataclass(frozen=True)
class Biact:
    """
    双作用 (E-M biact)
    carrier is the right M-act; left_action[e][a] = e·a.
    """
    carrier: RightAct
    left_monoid: Monoid
    left_action: Table


@dataclass(frozen=True)
class Universe:
    """One representative per isomorphism class of acts with size <= bound."""
    monoid: Monoid
    bound: int
    representatives: tuple[RightAct, ...]

    def __iter__(self) -> Iterator[RightAct]:
        return iter(self.representatives)

    def __len__(self) -> int:
        return len(self.representatives)

    def of_size(self, size: int) -> list[RightAct]:
        return [rep for rep in self.representatives if rep.size == size]


class VerdictStatus(str, Enum):
    CERTIFIED_YES = "certified-yes"
    CERTIFIED_NO = "certified-no"
    UNKNOWN = "unknown-at-bound"


@dataclass(frozen=True)
class Verdict:
    """
    三态判定结果 (Tri-state verdict)
    Certified-No always carries a replayable witness; Certified-Yes carries the
    tag of the exact rule that produced it.
    """
    status: VerdictStatus
    bound: int
    reason: str = ""
    witness: Any = field(default=None, compare=False)

    @classmethod
    def yes(cls, bound: int, reason: str) -> Verdict:
        return cls(VerdictStatus.CERTIFIED_YES, bound, reason)

    @classmethod
    def no(cls, bound: int, witness: Any, reason: str = "counterexample") -> Verdict:
        return cls(VerdictStatus.CERTIFIED_NO, bound, reason, witness)

    @classmethod
    def unknown(cls, bound: int, reason: str = "exhaustive-at-bound") -> Verdict:
        return cls(VerdictStatus.UNKNOWN, bound, reason)

    @property
    def is_yes(self) -> bool:
        return self.status is VerdictStatus.CERTIFIED_YES

    @property
    def is_no(self) -> bool:
        return self.status is VerdictStatus.CERTIFIED_NO

    @property
    def is_unknown(self) -> bool:
        return self.status is VerdictStatus.UNKNOWN


# --- Adjunction data (伴随函子数据) ---


@dataclass(frozen=True)
class Context:
    """
    固定数据 (Fixed data of the adjoint pair H_A ⊣ T_A)
    E.table[e][f] indexes endos[e] ∘ endos[f].
    """
    M: Monoid
    A: RightAct
    E: Monoid
    endos: tuple[ActHom, ...]
    biact: Biact


@dataclass(frozen=True)
class HomAct:
    """H_A(X): the right E-act of all homs A→X, acted on by precomposition."""
    underlying: RightAct
    homs: tuple[ActHom, ...]

    @cached_property
    def _index(self) -> dict[tuple[int, ...], int]:
        return {hom.map: i for i, hom in enumerate(self.homs)}

    def index_of(self, hom_map: tuple[int, ...]) -> int:
        return self._index[hom_map]


@dataclass(frozen=True)
class TensorAct:
    """
    T_A(Y) = Y ⊗_E A
    class_of[y * factor_size + a] is the class of the pair (y, a);
    representatives[c] is the lexicographically least pair of class c.
    """
    underlying: RightAct
    factor_size: int
    class_of: tuple[int, ...]
    representatives: tuple[tuple[int, int], ...]

    def class_of_pair(self, y: int, a: int) -> int:
        return self.class_of[y * self.factor_size + a]


@dataclass(frozen=True)
class AdjunctionBijection:
    """Hom_M(T_A(Y), X) ≅ Hom_E(Y, H_A(X)); forward[i] indexes right, backward[j] indexes left."""
    left: tuple[ActHom, ...]
    right: tuple[ActHom, ...]
    forward: tuple[int, ...]
    backward: tuple[int, ...]


# --- Classification / star / cellular results ---


@dataclass(frozen=True)
class EquivalenceCatalog:
    """
    Bounded Eq(H) (side "M") or Eq(T) (side "E"): every hom between universe
    representatives that the functor sends to an isomorphism.
    """
    side: str
    bound: int
    entries: tuple[ActHom, ...]

    def ending_at(self, target: RightAct) -> list[ActHom]:
        return [entry for entry in self.entries if entry.target == target]

    def starting_at(self, source: RightAct) -> list[ActHom]:
        return [entry for entry in self.entries if entry.source == source]


@dataclass(frozen=True)
class StarReport:
    context: Context
    indecomposable: bool
    weak_self_projective: Verdict
    pullback_flat: Verdict
    c_equals_g: Verdict
    wstarob: Verdict
    starob: Verdict
    weak_star: Verdict
    star: Verdict


@dataclass(frozen=True)
class MoritaCandidate:
    A: RightAct
    E: Monoid


@dataclass(frozen=True)
class MoritaCertificate:
    M: Monoid
    A: RightAct
    E: Monoid
    bound: int
    checked_x: int
    checked_y: int


class ApproximationKind(str, Enum):
    COREFLECTION = "coreflection"
    COLOCALIZATION = "colocalization-candidate"
    BOUSFIELD_COLIMIT = "bousfield-colimit"
    BOUSFIELD_LIMIT = "bousfield-limit"
    SUPPLIED = "supplied"


@dataclass(frozen=True)
class Approximation:
    """
    胞腔逼近 (Cellular approximation candidate)
    map: obj → target; certified when is_equivalence and colocality is Certified-Yes.
    """
    target: RightAct
    obj: RightAct
    map: ActHom
    kind: ApproximationKind
    is_equivalence: bool
    colocality: Verdict

    @property
    def is_certified(self) -> bool:
        return self.is_equivalence and self.colocality.is_yes


# --- ACT/1 documents (输入文件) ---


@dataclass(frozen=True)
class ParsedAct:
    """An `act` block as read from a file; over_e marks an act over End(A)."""
    action: Table
    over_e: bool = False
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ParsedHom:
    """A `hom` row; source and target index the act blocks of the document."""
    map: tuple[int, ...]
    source: int
    target: int
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ActDocument:
    """One monoid, its acts in file order and the hom rows that follow them."""
    monoid: Monoid
    acts: tuple[ParsedAct, ...] = ()
    homs: tuple[ParsedHom, ...] = ()
    path: str = field(default="<memory>", compare=False)
