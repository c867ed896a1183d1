"""Exception hierarchy. Every error names the witnessing element indices."""

from __future__ import annotations

from typing import Any


class ActKitError(Exception):
    """Root of all actkit errors."""


# --- Validation (输入校验) ---


class ValidationError(ActKitError):
    """A table or map violates the axioms of its structure."""


class MalformedTable(ValidationError):
    def __init__(self, message: str) -> None:
        super().__init__(message)
        self.message = message


class AssociativityViolation(ValidationError):
    def __init__(self, a: int, b: int, c: int) -> None:
        super().__init__(f"multiplication is not associative at (a={a}, b={b}, c={c})")
        self.a, self.b, self.c = a, b, c


class IdentityViolation(ValidationError):
    def __init__(self, a: int, identity: int) -> None:
        super().__init__(f"element {identity} is not a two-sided identity: fails at a={a}")
        self.a = a
        self.identity = identity


class ActAxiomViolation(ValidationError):
    def __init__(self, x: int, m: int, n: int | None = None) -> None:
        if n is None:
            detail = f"unit law fails at x={x} (x·{m} != x)"
        else:
            detail = f"associativity fails at x={x}, m={m}, n={n}"
        super().__init__(f"action table is not an act: {detail}")
        self.x, self.m, self.n = x, m, n


class NotEquivariant(ValidationError):
    def __init__(self, x: int, m: int) -> None:
        super().__init__(f"map is not equivariant at x={x}, m={m}")
        self.x, self.m = x, m


# --- Shape errors (结构不匹配) ---


class MonoidMismatch(ActKitError):
    def __init__(self, detail: str = "acts are over different monoids") -> None:
        super().__init__(detail)


class NotParallel(ActKitError):
    def __init__(self) -> None:
        super().__init__("homomorphisms are not parallel (source or target differ)")


class TargetMismatch(ActKitError):
    def __init__(self) -> None:
        super().__init__("homomorphisms do not share a common target")


class NotComposable(ActKitError):
    def __init__(self) -> None:
        super().__init__("target of the first map is not the source of the second")


class DegenerateEmptyAct(ActKitError):
    def __init__(self) -> None:
        super().__init__("the empty act has no components; the property needs a nonempty act")


# --- Input / theorem errors ---


class ParseError(ActKitError):
    def __init__(self, path: str, line: int, message: str) -> None:
        super().__init__(f"{path}:{line}: {message}")
        self.path, self.line, self.message = path, line, message


class TheoremViolation(ActKitError):
    """A proven statement failed on a concrete instance: always an implementation defect."""

    def __init__(self, statement: str, witness: Any = None) -> None:
        super().__init__(f"theorem violated: {statement} (witness: {witness!r})")
        self.statement = statement
        self.witness = witness
