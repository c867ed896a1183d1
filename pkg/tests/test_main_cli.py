import json
import logging
from unittest.mock import patch

import pytest

from config import DEFAULT_SEED
from main import EXIT_INPUT, EXIT_NO, EXIT_OK, EXIT_THEOREM, main
from src.delivery.report import CheckResult
from src.errors import TheoremViolation

TRIVIAL = "monoid 1 0\n0\n"
SEMILATTICE = "monoid 2 0\n0 1\n1 1\n"
POINT = "act 1\n0 0\n"
REGULAR = "act 2\n0 1\n1 1\n"


@pytest.fixture(autouse=True)
def _restore_root_logger():
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def write(tmp_path):
    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write


def test_validate_trivial_monoid(write, capsys) -> None:
    path = write("trivial.act", TRIVIAL)
    assert main(["validate", path]) == EXIT_OK
    assert f"{path}: ok (|M|=1, acts=0, homs=0)" in capsys.readouterr().out


def test_validate_shows_functor_blocks(write, capsys) -> None:
    path = write("ctx.act", SEMILATTICE + POINT + REGULAR + "# over E\nact 1\n0\n")
    assert main(["validate", path, "--show-functors", "--format", "machine"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith(f"VALID {path} M=")
    assert "# over E\nact 1\n0\n# homIndex 0: 1\n" in out
    assert "# classOf 0 0 -> 0" in out


def test_classify_reports_certified_no(write, capsys) -> None:
    path = write("ctx.act", SEMILATTICE + POINT + REGULAR)
    code = main(["classify", path, "--property", "delta-reflexive", "--format", "machine"])
    assert code == EXIT_NO
    assert capsys.readouterr().out.startswith("VERDICT delta-reflexive certified-no 3 hom[")


def test_classify_colocal_with_text_report(write, capsys) -> None:
    path = write("ctx.act", SEMILATTICE + POINT + POINT)
    assert main(["classify", path, "--property", "colocal", "--bound", "2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("colocal: certified-yes (bound 2)")
    assert "reason: delta-reflexive" in out


def test_classify_needs_property(write) -> None:
    path = write("ctx.act", SEMILATTICE + POINT)
    assert main(["classify", path]) == EXIT_INPUT


def test_classify_needs_second_act(write) -> None:
    path = write("ctx.act", SEMILATTICE + POINT)
    assert main(["classify", path, "--property", "colocal"]) == EXIT_INPUT


def test_star_for_regular_act(write, capsys) -> None:
    path = write("regular.act", SEMILATTICE + REGULAR)
    assert main(["star", path, "--bound", "2", "--format", "machine"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 7
    assert lines[-1] == "VERDICT star certified-yes 2"


def test_morita_machine_output(write, capsys) -> None:
    path = write("semilattice.act", SEMILATTICE)
    assert main(["morita", path, "--bound", "3", "--format", "machine"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 1
    assert lines[0].startswith("CERT morita M=")
    assert " A=2 E=2 bound=3 " in lines[0]


def test_cellular_rejects_supplied_identity(write, capsys) -> None:
    path = write("cellular.act", SEMILATTICE + POINT + REGULAR + REGULAR + "hom\n0 1\n")
    code = main(["cellular", path, "--bound", "2", "--format", "machine"])
    assert code == EXIT_NO
    out = capsys.readouterr().out
    assert out.count("APPROX ") == 5
    assert "APPROX kind=supplied equivalence=true" in out
    assert "VERDICT initiality certified-no 2 hom[" in out


def test_cellular_without_supplied_map(write, capsys) -> None:
    path = write("cellular.act", SEMILATTICE + POINT + REGULAR)
    assert main(["cellular", path, "--bound", "2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "coreflection: |C|=1 equivalence=true colocal=certified-yes (certified)" in out
    assert "initiality" not in out


def test_universe_machine_lines(write, capsys) -> None:
    path = write("trivial.act", TRIVIAL)
    assert main(["universe", path, "--bound", "2", "--format", "machine"]) == EXIT_OK
    assert capsys.readouterr().out == (
        "UNIVERSE size=0 classes=1\nUNIVERSE size=1 classes=1\nUNIVERSE size=2 classes=1\n"
    )


@pytest.mark.parametrize(
    "text",
    [
        "monoid 2 0\n0 1\n",
        "monoid 3 0\n0 1 2\n1 2 2\n2 2 1\n",
        SEMILATTICE + "act 1\n1 1\n",
        SEMILATTICE + POINT + REGULAR + "hom\n0\n",
    ],
)
def test_malformed_input_exits_with_input_error(write, text: str) -> None:
    assert main(["validate", write("bad.act", text)]) == EXIT_INPUT


def test_missing_file_and_negative_bound(write) -> None:
    assert main(["validate", "/nonexistent/input.act"]) == EXIT_INPUT
    assert main(["universe", write("trivial.act", TRIVIAL), "--bound", "-1"]) == EXIT_INPUT


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "--property", "weak-self-projective", "--bound", "0"],
        ["classify", "--property", "pullback-flat", "--bound", "0"],
        ["star", "--bound", "0"],
    ],
)
def test_zero_bound_sweeps_are_input_errors(write, argv: list[str]) -> None:
    path = write("regular.act", SEMILATTICE + REGULAR)
    assert main([argv[0], path, *argv[1:]]) == EXIT_INPUT


def test_zero_bound_selftest_is_accepted() -> None:
    with patch("main.run_selftest", return_value=[]) as run_selftest:
        assert main(["selftest", "--bound", "0"]) == EXIT_OK
    run_selftest.assert_called_once_with(0, seed=DEFAULT_SEED)


def test_non_utf8_file_is_an_input_error(tmp_path, capsys) -> None:
    path = tmp_path / "bad_utf8.act"
    path.write_bytes(b"monoid 1 0\n\xff\n")
    assert main(["validate", str(path)]) == EXIT_INPUT
    assert f"{path}:2: not UTF-8 text: byte 0xff" in capsys.readouterr().err


def test_unexpected_exception_is_not_a_certified_no(write) -> None:
    path = write("regular.act", SEMILATTICE + REGULAR)
    with patch("main.star_report", side_effect=RuntimeError("boom")):
        assert main(["star", path]) == EXIT_THEOREM


def test_theorem_violation_exits_three(write) -> None:
    path = write("regular.act", SEMILATTICE + REGULAR)
    with patch("main.star_report", side_effect=TheoremViolation("x")):
        assert main(["star", path]) == EXIT_THEOREM


def test_selftest_failures_exit_one(capsys) -> None:
    results = [CheckResult("morita", 3, 0), CheckResult("yoneda", 1, 1)]
    with patch("main.run_selftest", return_value=results):
        assert main(["selftest", "--format", "machine"]) == EXIT_NO
    assert capsys.readouterr().out == (
        "CHECK morita passed=3 failed=0\nCHECK yoneda passed=1 failed=1\n"
    )


def test_summary_dir_records_failures(write, tmp_path) -> None:
    out_dir = tmp_path / "summary"
    path = write("bad.act", "monoid 2 0\n0 1\n")
    assert main(["validate", path, "--summary-dir", str(out_dir)]) == EXIT_INPUT
    summary = json.loads((out_dir / "run-summary.json").read_text(encoding="utf-8"))
    assert summary["command"] == "validate"
    assert summary["exit_code"] == EXIT_INPUT
    assert summary["success"] is False
    error = json.loads((out_dir / "error.json").read_text(encoding="utf-8"))
    assert error["failures"][0]["error_type"] == "ParseError"


def test_summary_dir_on_success(write, tmp_path) -> None:
    out_dir = tmp_path / "summary"
    assert main(["validate", write("t.act", TRIVIAL), "--summary-dir", str(out_dir)]) == EXIT_OK
    summary = json.loads((out_dir / "run-summary.json").read_text(encoding="utf-8"))
    assert summary["success"] is True and summary["results"] == 1
    assert not (out_dir / "error.json").exists()
