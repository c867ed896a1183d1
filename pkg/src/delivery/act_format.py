"""
ACT/1 文件格式 (ACT/1 text format and its JSON mirror)

    # comment
    monoid <n> <identity>
    <n rows of n integers>
    act <m>                 (optionally preceded by "# over E")
    <m rows of n integers>
    hom
    <one row of integers>   (omitted for the empty map)

Annotation comments (`# homIndex ...`, `# classOf ...`) are emitted after
hom-act and tensor-act blocks and ignored when parsing.
"""

from __future__ import annotations

import json
import logging
import os
from collections.abc import Iterable, Sequence
from typing import Any

from src.errors import ParseError
from src.models import (
    ActDocument,
    HomAct,
    Monoid,
    ParsedAct,
    ParsedHom,
    Table,
    TensorAct,
)

logger = logging.getLogger(__name__)

OVER_E_MARKER = "# over E"
KEYWORDS = ("monoid", "act", "hom")


def _ints(path: str, line_no: int, text: str) -> tuple[int, ...]:
    try:
        return tuple(int(token) for token in text.split())
    except ValueError:
        raise ParseError(path, line_no, f"expected integers, got {text!r}") from None


class _Lines:
    """Non-blank lines with their 1-based numbers; comments are kept for markers."""

    def __init__(self, text: str) -> None:
        self.items = [
            (number, line.strip())
            for number, line in enumerate(text.splitlines(), start=1)
            if line.strip()
        ]
        self.pos = 0

    def peek_content(self) -> tuple[int, str] | None:
        """Next non-comment line, without consuming it."""
        pos = self.pos
        while pos < len(self.items):
            number, line = self.items[pos]
            if not line.startswith("#"):
                return number, line
            pos += 1
        return None

    def next_content(self, path: str, what: str) -> tuple[int, str]:
        while self.pos < len(self.items):
            number, line = self.items[self.pos]
            self.pos += 1
            if not line.startswith("#"):
                return number, line
        last = self.items[-1][0] if self.items else 0
        raise ParseError(path, last, f"unexpected end of file, expected {what}")


def parse_act_text(text: str, path: str = "<memory>") -> ActDocument:
    lines = _Lines(text)
    monoid: Monoid | None = None
    acts: list[ParsedAct] = []
    homs: list[ParsedHom] = []
    over_e = False

    while lines.pos < len(lines.items):
        number, line = lines.items[lines.pos]
        lines.pos += 1
        if line.startswith("#"):
            if line == OVER_E_MARKER:
                over_e = True
            continue
        head, _, rest = line.partition(" ")
        if head == "monoid":
            if monoid is not None:
                raise ParseError(path, number, "a document holds exactly one monoid")
            header = _ints(path, number, rest)
            if len(header) != 2 or header[0] < 1:
                raise ParseError(path, number, "expected 'monoid <n> <identity>' with n >= 1")
            size, identity = header
            rows = [_row(lines, path, size, "monoid row") for _ in range(size)]
            monoid = Monoid(table=tuple(rows), identity=identity)
        elif head == "act":
            if monoid is None:
                raise ParseError(path, number, "'act' before 'monoid'")
            header = _ints(path, number, rest)
            if len(header) != 1 or header[0] < 0:
                raise ParseError(path, number, "expected 'act <m>' with m >= 0")
            width = None if over_e else monoid.size
            rows = [_row(lines, path, width, "act row") for _ in range(header[0])]
            acts.append(ParsedAct(action=tuple(rows), over_e=over_e, line=number))
            over_e = False
        elif head == "hom":
            if rest.strip():
                raise ParseError(path, number, "'hom' takes no arguments")
            if len(acts) < 2:
                raise ParseError(path, number, "'hom' needs two preceding act blocks")
            source, target = len(acts) - 2, len(acts) - 1
            upcoming = lines.peek_content()
            if upcoming is None or upcoming[1].partition(" ")[0] in KEYWORDS:
                mapping: tuple[int, ...] = ()
            else:
                row_number, row_text = lines.next_content(path, "hom row")
                mapping = _ints(path, row_number, row_text)
            homs.append(ParsedHom(map=mapping, source=source, target=target, line=number))
        else:
            raise ParseError(path, number, f"unknown keyword {head!r}")

    if monoid is None:
        raise ParseError(path, 1, "missing 'monoid' header")
    return ActDocument(monoid=monoid, acts=tuple(acts), homs=tuple(homs), path=path)


def _row(lines: _Lines, path: str, width: int | None, what: str) -> tuple[int, ...]:
    number, text = lines.next_content(path, what)
    if text.partition(" ")[0] in KEYWORDS:
        raise ParseError(path, number, f"expected {what}, got keyword line")
    row = _ints(path, number, text)
    if width is not None and len(row) != width:
        raise ParseError(path, number, f"{what} has {len(row)} entries, expected {width}")
    return row


# --- Emitting (输出) ---


def _format_rows(rows: Iterable[Sequence[int]]) -> list[str]:
    return [" ".join(str(v) for v in row) for row in rows]


def emit_monoid(monoid: Monoid) -> list[str]:
    return [f"monoid {monoid.size} {monoid.identity}", *_format_rows(monoid.table)]


def emit_act(action: Table, over_e: bool = False) -> list[str]:
    lines = [OVER_E_MARKER] if over_e else []
    return [*lines, f"act {len(action)}", *_format_rows(action)]


def emit_hom(mapping: Sequence[int]) -> list[str]:
    return ["hom", *_format_rows([mapping] if mapping else [])]


def emit_act_text(document: ActDocument) -> str:
    """
    Canonical text form. A hom row always maps the act block before the
    previous one to the previous one, so each hom is written right after its
    target block.
    """
    for hom in document.homs:
        if hom.source != hom.target - 1:
            raise ValueError(f"hom {hom.source}->{hom.target} cannot be written in ACT/1 text")
    lines = emit_monoid(document.monoid)
    for k, act in enumerate(document.acts):
        lines.extend(emit_act(act.action, act.over_e))
        for hom in document.homs:
            if hom.target == k:
                lines.extend(emit_hom(hom.map))
    return "\n".join(lines) + "\n"


def annotate_hom_act(hom_act: HomAct) -> list[str]:
    """`# homIndex i: <map>` for each carrier element of H_A(X)."""
    return [
        f"# homIndex {i}: {' '.join(str(v) for v in hom.map)}"
        for i, hom in enumerate(hom_act.homs)
    ]


def annotate_tensor_act(tensor: TensorAct) -> list[str]:
    """`# classOf y a -> c` for every pair of Y × A."""
    n = tensor.factor_size
    return [
        f"# classOf {index // n} {index % n} -> {c}" for index, c in enumerate(tensor.class_of)
    ]


# --- JSON mirror ---


def emit_act_json(document: ActDocument) -> str:
    payload: dict[str, Any] = {
        "monoid": {
            "size": document.monoid.size,
            "identity": document.monoid.identity,
            "table": [list(row) for row in document.monoid.table],
        },
        "acts": [
            {
                "size": len(act.action),
                "over": "E" if act.over_e else "M",
                "action": [list(row) for row in act.action],
            }
            for act in document.acts
        ],
        "homs": [
            {"source": hom.source, "target": hom.target, "map": list(hom.map)}
            for hom in document.homs
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def parse_act_json(text: str, path: str = "<memory>") -> ActDocument:
    try:
        payload = json.loads(text)
        raw_monoid = payload["monoid"]
        monoid = Monoid(
            table=tuple(tuple(int(v) for v in row) for row in raw_monoid["table"]),
            identity=int(raw_monoid["identity"]),
        )
        if int(raw_monoid.get("size", monoid.size)) != monoid.size:
            raise ValueError("monoid size does not match its table")
        acts = tuple(
            ParsedAct(
                action=tuple(tuple(int(v) for v in row) for row in raw["action"]),
                over_e=raw.get("over", "M") == "E",
            )
            for raw in payload.get("acts", [])
        )
        homs = tuple(
            ParsedHom(
                map=tuple(int(v) for v in raw["map"]),
                source=int(raw["source"]),
                target=int(raw["target"]),
            )
            for raw in payload.get("homs", [])
        )
    except json.JSONDecodeError as exc:
        raise ParseError(path, exc.lineno, exc.msg) from None
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(path, 1, f"malformed ACT/1 JSON: {exc}") from None
    return ActDocument(monoid=monoid, acts=acts, homs=homs, path=path)


def load_document(path: str) -> ActDocument:
    """Read an ACT/1 file; `.json` selects the JSON mirror."""
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ParseError(path, 0, f"cannot read file: {exc.strerror}") from None
    except UnicodeDecodeError as exc:
        line = exc.object[: exc.start].count(b"\n") + 1
        message = f"not UTF-8 text: byte 0x{exc.object[exc.start]:02x}"
        raise ParseError(path, line, message) from None
    if os.path.splitext(path)[1].lower() == ".json":
        document = parse_act_json(text, path)
    else:
        document = parse_act_text(text, path)
    logger.debug(
        "[PARSE] %s: |M|=%s acts=%s homs=%s",
        path,
        document.monoid.size,
        len(document.acts),
        len(document.homs),
    )
    return document
