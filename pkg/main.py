#!/usr/bin/env python3
"""主流程控制器: 解析 -> 上下文 -> 判定 -> 报告 (Parse -> Context -> Decide -> Report)."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
import traceback
from collections.abc import Callable
from dataclasses import asdict, dataclass, field
from datetime import datetime
from typing import Any

from config import COMMANDS, DEFAULT_BOUND, DEFAULT_SEED, PROPERTIES, validate_config
from src.adjunction.context import make_context
from src.adjunction.functors import (
    counit,
    hom_act,
    hom_on_morphism,
    is_tensor_fully_faithful,
    tensor_act,
    unit,
)
from src.cellular.approximation import colocalization_candidate, generated_coreflection
from src.cellular.oracles import (
    bousfield_colimit_oracle,
    bousfield_limit_oracle,
    initiality_check,
)
from src.classify.subcategories import (
    is_a_cogenerated,
    is_a_generated,
    is_delta_reflexive,
    is_eta_reflexive,
    is_indecomposable_small,
)
from src.classify.verdicts import (
    bounded_colocal,
    bounded_local,
    pullback_flat,
    sisc_spot_check,
    weak_self_projective,
)
from src.core.acts import connected_components, is_iso, make_hom, validate_act
from src.core.monoids import validate_monoid
from src.core.universe import enumerate_universe
from src.delivery.act_format import (
    annotate_hom_act,
    annotate_tensor_act,
    emit_act,
    load_document,
)
from src.delivery.report import (
    approximation_block,
    cert_line,
    check_line,
    monoid_hash,
    render_approximations,
    render_morita,
    render_selftest,
    render_star,
    render_universe,
    render_verdict,
    star_rows,
    universe_lines,
    verdict_line,
)
from src.errors import ActKitError, MonoidMismatch, ParseError, TheoremViolation, ValidationError
from src.models import (
    ActDocument,
    ActHom,
    Approximation,
    ApproximationKind,
    Context,
    Monoid,
    RightAct,
    Verdict,
)
from src.selftest import run_selftest
from src.star.certify import check_starob, check_wstarob, star_report
from src.star.morita import morita_candidates, verify_morita

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NO = 1
EXIT_INPUT = 2
EXIT_THEOREM = 3


class JsonFormatter(logging.Formatter):
    """
    简单的 JSON 日志格式化器 (Simple JSON Log Formatter)
    每条日志一行 JSON，便于 CI 收集。
    """

    def format(self, record: logging.LogRecord) -> str:
        payload = {
            "timestamp": self.formatTime(record, self.datefmt),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        if hasattr(record, "event"):
            payload["event"] = getattr(record, "event")
        if hasattr(record, "stage"):
            payload["stage"] = getattr(record, "stage")
        return json.dumps(payload, ensure_ascii=False)


@dataclass
class RunFailure:
    """
    运行失败记录 (Run Failure Record)
    """
    stage: str          # 发生错误的阶段 (e.g. "parse", "classify")
    error_type: str     # 异常类名
    message: str        # 错误详情 (含文件、行号与元素下标)


@dataclass
class RunSummary:
    """
    运行摘要 (Run Summary)
    Written to --summary-dir as run-summary.json; error.json on failure.
    """
    run_id: str
    command: str
    bound: int
    output_format: str
    inputs: list[str] = field(default_factory=list)
    success: bool = False
    exit_code: int = EXIT_OK
    exit_reason: str = ""
    duration_seconds: float = 0.0
    results: int = 0            # 输出的结果条数 (VERDICT / CERT / APPROX / CHECK)
    failures: list[RunFailure] = field(default_factory=list)


@dataclass(frozen=True)
class CommandResult:
    exit_code: int
    output: str
    results: int
    reason: str


@dataclass(frozen=True)
class Workspace:
    """
    已验证的输入 (Validated input document)
    blocks[i] is the act of the i-th `act` block; the first M-act is A.
    """
    path: str
    monoid: Monoid
    blocks: tuple[RightAct, ...]
    over_e: tuple[bool, ...]
    homs: tuple[ActHom, ...]
    ctx: Context | None

    def m_acts(self) -> list[RightAct]:
        return [act for act, flag in zip(self.blocks, self.over_e) if not flag]

    def e_acts(self) -> list[RightAct]:
        return [act for act, flag in zip(self.blocks, self.over_e) if flag]

    def require_context(self) -> Context:
        if self.ctx is None:
            raise ParseError(self.path, 0, "this command needs an act block for A")
        return self.ctx

    def require_x(self) -> RightAct:
        acts = self.m_acts()
        if len(acts) < 2:
            raise ParseError(self.path, 0, "this property needs a second act block X over M")
        return acts[1]

    def require_y(self) -> RightAct:
        acts = self.e_acts()
        if not acts:
            raise ParseError(self.path, 0, "this property needs an act block Y marked '# over E'")
        return acts[0]


def configure_logging(log_format: str) -> None:
    """配置日志系统 (Configure Logging); logs go to stderr, reports to stdout."""
    handler = logging.StreamHandler(sys.stderr)
    if log_format == "json":
        handler.setFormatter(JsonFormatter(datefmt="%Y-%m-%dT%H:%M:%S"))
    else:
        handler.setFormatter(
            logging.Formatter(
                "%(asctime)s [%(levelname)s] %(message)s",
                datefmt="%H:%M:%S",
            )
        )
    root = logging.getLogger()
    root.handlers.clear()
    root.addHandler(handler)
    root.setLevel(logging.INFO)


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    """解析命令行参数 (Parse Command Line Arguments)"""
    parser = argparse.ArgumentParser(
        description="Bounded decision procedures for finite monoid acts and the H_A ⊣ T_A pair"
    )
    parser.add_argument("command", choices=COMMANDS, help="要执行的子命令 (Subcommand)")
    parser.add_argument("inputs", nargs="*", help="ACT/1 输入文件 (.act or .json)")
    parser.add_argument(
        "--bound",
        type=int,
        default=DEFAULT_BOUND,
        help=f"universe 大小上限 (Carrier-size bound, default: {DEFAULT_BOUND})",
    )
    parser.add_argument(
        "--format",
        dest="output_format",
        choices=["text", "machine"],
        default="text",
        help="报告格式: text (人读) 或 machine (逐行记录)",
    )
    parser.add_argument(
        "--property",
        choices=PROPERTIES,
        help="classify 要判定的性质 (Property queried by classify)",
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=DEFAULT_SEED,
        help=f"随机抽样种子 (Seed for randomized sweeps, default: {DEFAULT_SEED})",
    )
    parser.add_argument(
        "--log-format",
        choices=["text", "json"],
        default="text",
        help="日志格式 (text|json)",
    )
    parser.add_argument(
        "--summary-dir",
        default="",
        help="运行摘要输出目录 (Write run-summary.json / error.json here)",
    )
    parser.add_argument(
        "--show-functors",
        action="store_true",
        help="validate: 输出 H_A(X) 与 T_A(Y) 及其注释 (Print H_A(X) and T_A(Y) blocks)",
    )
    return parser.parse_args(argv)


# --- Input (输入) ---


def _located(path: str, line: int, build: Callable[..., Any], *args: Any) -> Any:
    try:
        return build(*args)
    except (ValidationError, MonoidMismatch) as exc:
        raise ParseError(path, line, str(exc)) from exc


def build_workspace(document: ActDocument) -> Workspace:
    """
    Validate a parsed document.
    M-acts are checked against M, `# over E` acts against End(A) where A is the
    first M-act, and hom rows against their source and target blocks.
    """
    path = document.path
    monoid = _located(path, 1, validate_monoid, document.monoid.table, document.monoid.identity)
    blocks: list[RightAct] = []
    ctx: Context | None = None
    for parsed in document.acts:
        if parsed.over_e:
            if ctx is None:
                raise ParseError(path, parsed.line, "'# over E' act needs a preceding act A")
            act = _located(path, parsed.line, validate_act, ctx.E, parsed.action)
        else:
            act = _located(path, parsed.line, validate_act, monoid, parsed.action)
            if ctx is None:
                ctx = make_context(monoid, act)
        blocks.append(act)
    homs: list[ActHom] = []
    for hom in document.homs:
        if not (0 <= hom.source < len(blocks) and 0 <= hom.target < len(blocks)):
            raise ParseError(path, hom.line, f"hom {hom.source}->{hom.target} names a missing act")
        source, target = blocks[hom.source], blocks[hom.target]
        homs.append(_located(path, hom.line, make_hom, source, target, hom.map))
    logger.info(
        "[PARSE] %s: |M|=%s acts=%s homs=%s |E|=%s",
        path,
        monoid.size,
        len(blocks),
        len(homs),
        ctx.E.size if ctx else "-",
    )
    return Workspace(
        path=path,
        monoid=monoid,
        blocks=tuple(blocks),
        over_e=tuple(parsed.over_e for parsed in document.acts),
        homs=tuple(homs),
        ctx=ctx,
    )


def _single_input(args: argparse.Namespace) -> Workspace:
    if len(args.inputs) != 1:
        raise ParseError("<cli>", 0, f"{args.command} takes exactly one input file")
    return build_workspace(load_document(args.inputs[0]))


# --- Commands (子命令) ---


def _exact(holds: bool, bound: int, witness: object, reason: str) -> Verdict:
    return Verdict.yes(bound, "exact") if holds else Verdict.no(bound, witness, reason)


def classify(ws: Workspace, prop: str, bound: int) -> Verdict:
    """判定单个性质 (Decide one property on the document's A, X or Y)."""
    ctx = ws.require_context()
    if prop == "delta-reflexive":
        X = ws.require_x()
        return _exact(is_delta_reflexive(ctx, X), bound, counit(ctx, X), "counit-not-iso")
    if prop == "a-generated":
        X = ws.require_x()
        return _exact(is_a_generated(ctx, X), bound, counit(ctx, X), "counit-not-epi")
    if prop == "colocal":
        return bounded_colocal(ctx, ws.require_x(), bound)
    if prop == "eta-reflexive":
        Y = ws.require_y()
        return _exact(is_eta_reflexive(ctx, Y), bound, unit(ctx, Y), "unit-not-iso")
    if prop == "a-cogenerated":
        Y = ws.require_y()
        return _exact(is_a_cogenerated(ctx, Y), bound, unit(ctx, Y), "unit-not-mono")
    if prop == "local":
        return bounded_local(ctx, ws.require_y(), bound)
    if prop == "indecomposable":
        holds = is_indecomposable_small(ctx)
        return _exact(holds, bound, tuple(connected_components(ctx.A)), "disconnected")
    checks: dict[str, Callable[[Context, int], Verdict]] = {
        "weak-self-projective": weak_self_projective,
        "pullback-flat": pullback_flat,
        "wstarob": check_wstarob,
        "starob": check_starob,
        "tensor-fully-faithful": is_tensor_fully_faithful,
        "sisc": sisc_spot_check,
    }
    return checks[prop](ctx, bound)


def run_validate(args: argparse.Namespace) -> CommandResult:
    if not args.inputs:
        raise ParseError("<cli>", 0, "validate needs at least one input file")
    lines: list[str] = []
    for path in args.inputs:
        ws = build_workspace(load_document(path))
        if args.output_format == "machine":
            lines.append(
                f"VALID {path} M={monoid_hash(ws.monoid)} "
                f"acts={len(ws.blocks)} homs={len(ws.homs)}"
            )
        else:
            lines.append(
                f"{path}: ok (|M|={ws.monoid.size}, acts={len(ws.blocks)}, homs={len(ws.homs)})"
            )
        if args.show_functors and ws.ctx is not None:
            lines.extend(_functor_blocks(ws))
    return CommandResult(EXIT_OK, "\n".join(lines) + "\n", len(args.inputs), "valid")


def _functor_blocks(ws: Workspace) -> list[str]:
    """H_A(X) for the second M-act and T_A(Y) for the first E-act, when present."""
    ctx = ws.require_context()
    lines: list[str] = []
    if len(ws.m_acts()) > 1:
        homs = hom_act(ctx, ws.require_x())
        lines.extend(emit_act(homs.underlying.action, over_e=True))
        lines.extend(annotate_hom_act(homs))
    if ws.e_acts():
        tensor = tensor_act(ctx, ws.require_y())
        lines.extend(emit_act(tensor.underlying.action))
        lines.extend(annotate_tensor_act(tensor))
    return lines


def run_classify(args: argparse.Namespace) -> CommandResult:
    if args.property is None:
        raise ParseError("<cli>", 0, "classify needs --property")
    verdict = classify(_single_input(args), args.property, args.bound)
    logger.info("[CLASSIFY] %s: %s (%s)", args.property, verdict.status.value, verdict.reason)
    if args.output_format == "machine":
        output = verdict_line(args.property, verdict) + "\n"
    else:
        output = render_verdict(args.property, verdict)
    code = EXIT_NO if verdict.is_no else EXIT_OK
    return CommandResult(code, output, 1, verdict.status.value)


def run_star(args: argparse.Namespace) -> CommandResult:
    ws = _single_input(args)
    report = star_report(ws.require_context(), args.bound)
    rows = star_rows(report)
    if args.output_format == "machine":
        output = "".join(verdict_line(name, verdict) + "\n" for name, verdict in rows)
    else:
        output = render_star(report)
    code = EXIT_NO if report.star.is_no else EXIT_OK
    return CommandResult(code, output, len(rows), report.star.status.value)


def run_morita(args: argparse.Namespace) -> CommandResult:
    ws = _single_input(args)
    certificates = [
        verify_morita(ws.monoid, candidate.A, args.bound)
        for candidate in morita_candidates(ws.monoid)
    ]
    if args.output_format == "machine":
        output = "".join(cert_line(cert) + "\n" for cert in certificates)
    else:
        output = render_morita(ws.monoid, certificates)
    return CommandResult(EXIT_OK, output, len(certificates), f"{len(certificates)} certified")


def supplied_approximation(ctx: Context, hom: ActHom, bound: int) -> Approximation:
    """An approximation read from the document: its last hom row C → X."""
    if hom.target.monoid != ctx.M or hom.source.monoid != ctx.M:
        raise MonoidMismatch("the supplied approximation must be a map of M-acts")
    return Approximation(
        target=hom.target,
        obj=hom.source,
        map=hom,
        kind=ApproximationKind.SUPPLIED,
        is_equivalence=is_iso(hom_on_morphism(ctx, hom)),
        colocality=bounded_colocal(ctx, hom.source, bound),
    )


def run_cellular(args: argparse.Namespace) -> CommandResult:
    """
    All approximations of X at the bound. When the document ends with a hom
    row C → X, that map is checked for initiality as well and X is its target.
    """
    ws = _single_input(args)
    ctx = ws.require_context()
    supplied = supplied_approximation(ctx, ws.homs[-1], args.bound) if ws.homs else None
    X = supplied.target if supplied else ws.require_x()
    approximations = [
        generated_coreflection(ctx, X, args.bound),
        colocalization_candidate(ctx, X, args.bound),
        bousfield_colimit_oracle(ctx, X, args.bound),
        bousfield_limit_oracle(ctx, X, args.bound),
    ]
    initiality: Verdict | None = None
    if supplied is not None:
        approximations.append(supplied)
        if supplied.is_equivalence:
            initiality = initiality_check(ctx, supplied, args.bound)
        else:
            initiality = Verdict.no(args.bound, supplied.map, reason="not-an-equivalence")
    logger.info(
        "[CELLULAR] |X|=%s approximations=%s certified=%s",
        X.size,
        len(approximations),
        sum(approx.is_certified for approx in approximations),
    )
    if args.output_format == "machine":
        lines = [line for approx in approximations for line in approximation_block(approx)]
        if initiality is not None:
            lines.append(verdict_line("initiality", initiality))
        output = "\n".join(lines) + "\n"
    else:
        output = render_approximations(X, approximations, initiality)
    code = EXIT_NO if initiality is not None and initiality.is_no else EXIT_OK
    return CommandResult(code, output, len(approximations), "approximated")


def run_universe(args: argparse.Namespace) -> CommandResult:
    ws = _single_input(args)
    universe = enumerate_universe(ws.monoid, args.bound)
    if args.output_format == "machine":
        output = "\n".join(universe_lines(universe)) + "\n"
    else:
        output = render_universe(universe)
    return CommandResult(EXIT_OK, output, len(universe), f"{len(universe)} classes")


def run_selftest_command(args: argparse.Namespace) -> CommandResult:
    results = run_selftest(args.bound, seed=args.seed)
    if args.output_format == "machine":
        output = "".join(check_line(result) + "\n" for result in results)
    else:
        output = render_selftest(args.bound, results)
    failed = [result.name for result in results if not result.ok]
    code = EXIT_NO if failed else EXIT_OK
    return CommandResult(code, output, len(results), ",".join(failed) or "all criteria passed")


HANDLERS: dict[str, Callable[[argparse.Namespace], CommandResult]] = {
    "validate": run_validate,
    "classify": run_classify,
    "star": run_star,
    "morita": run_morita,
    "cellular": run_cellular,
    "universe": run_universe,
    "selftest": run_selftest_command,
}


# --- Summary (运行摘要) ---


def _write_json(path: str, data: dict) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(data, handle, ensure_ascii=False, indent=2)


def _emit_summary(summary: RunSummary, output_dir: str) -> None:
    """输出运行摘要 (Emit Run Summary)"""
    if not output_dir:
        return
    os.makedirs(output_dir, exist_ok=True)
    summary_path = os.path.join(output_dir, "run-summary.json")
    _write_json(summary_path, asdict(summary))
    logger.info("[SUMMARY] Wrote run summary: %s", summary_path)

    if not summary.success:
        error_path = os.path.join(output_dir, "error.json")
        _write_json(
            error_path,
            {
                "run_id": summary.run_id,
                "command": summary.command,
                "exit_code": summary.exit_code,
                "exit_reason": summary.exit_reason,
                "failures": [asdict(item) for item in summary.failures],
            },
        )
        logger.info("[SUMMARY] Wrote error report: %s", error_path)


def _fail(summary: RunSummary, code: int, stage: str, exc: Exception) -> int:
    summary.exit_code = code
    summary.exit_reason = stage
    summary.failures.append(RunFailure(stage, type(exc).__name__, str(exc)))
    return code


def run(args: argparse.Namespace, summary: RunSummary) -> int:
    """
    执行子命令 (Execute one subcommand)
    Exit codes: 0 success, 1 Certified-No / failed check, 2 input error,
    3 theorem violation.
    """
    ok, errors = validate_config(args.command, args.bound, args.property)
    if not ok:
        for error in errors:
            logger.error("[CONFIG] %s", error)
        summary.exit_code = EXIT_INPUT
        summary.exit_reason = "configuration invalid"
        summary.failures.extend(RunFailure("config", "ConfigError", error) for error in errors)
        return EXIT_INPUT

    try:
        result = HANDLERS[args.command](args)
    except TheoremViolation as exc:
        logger.error("[%s] %s", args.command.upper(), exc)
        return _fail(summary, EXIT_THEOREM, "theorem violation", exc)
    except ActKitError as exc:
        logger.error("[%s] %s", args.command.upper(), exc)
        return _fail(summary, EXIT_INPUT, "input error", exc)

    sys.stdout.write(result.output)
    sys.stdout.flush()
    summary.exit_code = result.exit_code
    summary.exit_reason = result.reason
    summary.results = result.results
    summary.success = result.exit_code == EXIT_OK
    return result.exit_code


def main(argv: list[str] | None = None) -> int:
    """程序入口点：解析参数，运行子命令，处理异常。"""
    args = parse_args(argv)
    configure_logging(args.log_format)
    started = time.perf_counter()
    summary = RunSummary(
        run_id=f"{args.command}-{datetime.now().strftime('%Y%m%dT%H%M%S')}",
        command=args.command,
        bound=args.bound,
        output_format=args.output_format,
        inputs=list(args.inputs),
    )

    try:
        code = run(args, summary)
    except Exception as exc:
        logger.critical("Run failed unexpectedly: %s", exc)
        traceback.print_exc()
        code = _fail(summary, EXIT_THEOREM, "unhandled exception", exc)

    summary.duration_seconds = round(time.perf_counter() - started, 3)
    _emit_summary(summary, args.summary_dir)
    logger.info(
        "[DONE] %s exit=%s reason=%s duration=%.2fs",
        args.command,
        code,
        summary.exit_reason,
        summary.duration_seconds,
    )
    return code


if __name__ == "__main__":
    sys.exit(main())
