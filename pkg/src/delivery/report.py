"""
报告渲染 (Report rendering)
Human-readable reports through jinja2 templates, plus the single-line machine
records (VERDICT / CERT / APPROX / CHECK / UNIVERSE) that stay byte-stable.
"""

from __future__ import annotations

import hashlib
import json
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from jinja2 import Template

from src.delivery.act_format import emit_act, emit_hom
from src.models import (
    ActHom,
    Approximation,
    Monoid,
    MoritaCertificate,
    RightAct,
    StarReport,
    Universe,
    Verdict,
)


@dataclass(frozen=True)
class CheckResult:
    """自检结果 (Outcome of one acceptance criterion)"""
    name: str
    passed: int
    failed: int
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.failed == 0


def monoid_hash(monoid: Monoid) -> str:
    payload = json.dumps({"table": monoid.table, "identity": monoid.identity})
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:12]


def _act_ref(act: RightAct) -> str:
    digest = hashlib.sha256(json.dumps(act.action).encode("utf-8")).hexdigest()[:8]
    return f"act{act.size}:{digest}"


def witness_ref(witness: Any) -> str:
    """Compact, deterministic reference to a counterexample."""
    if witness is None:
        return ""
    if isinstance(witness, ActHom):
        values = ",".join(str(v) for v in witness.map)
        return f"hom[{_act_ref(witness.source)}->{_act_ref(witness.target)}]({values})"
    if isinstance(witness, RightAct):
        return _act_ref(witness)
    if isinstance(witness, dict):
        family = witness.get("family", "")
        return f"{family}:{witness_ref(witness.get('hom'))}"
    if isinstance(witness, (tuple, list)):
        return "+".join(witness_ref(item) for item in witness)
    return str(witness)


# --- Machine lines (机器可读行) ---


def verdict_line(prop: str, verdict: Verdict) -> str:
    ref = witness_ref(verdict.witness)
    parts = ["VERDICT", prop, verdict.status.value, str(verdict.bound)]
    if ref:
        parts.append(ref)
    return " ".join(parts)


def cert_line(cert: MoritaCertificate) -> str:
    return (
        f"CERT morita M={monoid_hash(cert.M)} A={cert.A.size} E={cert.E.size} "
        f"bound={cert.bound} X={cert.checked_x} Y={cert.checked_y}"
    )


def approx_line(approx: Approximation) -> str:
    return (
        f"APPROX kind={approx.kind.value} equivalence={str(approx.is_equivalence).lower()} "
        f"colocal={approx.colocality.status.value}"
    )


def check_line(result: CheckResult) -> str:
    return f"CHECK {result.name} passed={result.passed} failed={result.failed}"


def universe_lines(universe: Universe) -> list[str]:
    sizes = range(universe.bound + 1)
    return [f"UNIVERSE size={k} classes={len(universe.of_size(k))}" for k in sizes]


def approximation_block(approx: Approximation) -> list[str]:
    """APPROX header followed by the object and the map as ACT/1 blocks."""
    return [approx_line(approx), *emit_act(approx.obj.action), *emit_hom(approx.map.map)]


# --- Text templates (文本模板) ---


VERDICT_TEMPLATE = Template(
    """\
{{ prop }}: {{ verdict.status.value }} (bound {{ verdict.bound }})
{%- if verdict.reason %}
  reason: {{ verdict.reason }}
{%- endif %}
{%- if ref %}
  witness: {{ ref }}
{%- endif %}
"""
)

STAR_TEMPLATE = Template(
    """\
*-act report for |A|={{ report.context.A.size }}, |E|={{ report.context.E.size }}
  indecomposable:        {{ report.indecomposable | lower }}
{%- for name, verdict in rows %}
  {{ "%-22s" | format(name ~ ":") }} {{ verdict.status.value }}{% if verdict.reason %} [{{ verdict.reason }}]{% endif %}
{%- endfor %}
"""
)

MORITA_TEMPLATE = Template(
    """\
Morita candidates for |M|={{ monoid.size }} ({{ certificates | length }} found)
{%- for cert in certificates %}
  - |A|={{ cert.A.size }} |E|={{ cert.E.size }}: δ iso on {{ cert.checked_x }} acts, η iso on {{ cert.checked_y }} acts (bound {{ cert.bound }})
{%- endfor %}
"""
)

APPROX_TEMPLATE = Template(
    """\
Approximations of X (|X|={{ target.size }})
{%- for approx in approximations %}
  - {{ approx.kind.value }}: |C|={{ approx.obj.size }} equivalence={{ approx.is_equivalence | lower }} colocal={{ approx.colocality.status.value }}{% if approx.is_certified %} (certified){% endif %}
{%- endfor %}
{%- if initiality %}
  initiality: {{ initiality.status.value }}{% if initiality.reason %} [{{ initiality.reason }}]{% endif %}
{%- endif %}
"""
)

SELFTEST_TEMPLATE = Template(
    """\
Selftest (bound {{ bound }})
{%- for result in results %}
  [{{ "PASS" if result.ok else "FAIL" }}] {{ "%-28s" | format(result.name) }} passed={{ result.passed }} failed={{ result.failed }}{% if result.detail %} ({{ result.detail }}){% endif %}
{%- endfor %}
"""
)

UNIVERSE_TEMPLATE = Template(
    """\
Universe of |M|={{ universe.monoid.size }} at bound {{ universe.bound }}: {{ universe | length }} classes
{%- for size, count in counts %}
  size {{ size }}: {{ count }}
{%- endfor %}
"""
)


def render_verdict(prop: str, verdict: Verdict) -> str:
    return VERDICT_TEMPLATE.render(prop=prop, verdict=verdict, ref=witness_ref(verdict.witness))


def star_rows(report: StarReport) -> list[tuple[str, Verdict]]:
    return [
        ("weak-self-projective", report.weak_self_projective),
        ("pullback-flat", report.pullback_flat),
        ("c-equals-g", report.c_equals_g),
        ("wstarob", report.wstarob),
        ("starob", report.starob),
        ("weak-star", report.weak_star),
        ("star", report.star),
    ]


def render_star(report: StarReport) -> str:
    return STAR_TEMPLATE.render(report=report, rows=star_rows(report))


def render_morita(monoid: Monoid, certificates: Sequence[MoritaCertificate]) -> str:
    return MORITA_TEMPLATE.render(monoid=monoid, certificates=certificates)


def render_approximations(
    target: RightAct, approximations: Sequence[Approximation], initiality: Verdict | None = None
) -> str:
    return APPROX_TEMPLATE.render(
        target=target, approximations=approximations, initiality=initiality
    )


def render_selftest(bound: int, results: Sequence[CheckResult]) -> str:
    return SELFTEST_TEMPLATE.render(bound=bound, results=results)


def render_universe(universe: Universe) -> str:
    counts = [(k, len(universe.of_size(k))) for k in range(universe.bound + 1)]
    return UNIVERSE_TEMPLATE.render(universe=universe, counts=counts)
