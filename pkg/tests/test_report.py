import re
import unittest

from src.adjunction.context import make_context
from src.cellular.approximation import generated_coreflection
from src.core.acts import make_hom
from src.core.universe import enumerate_universe
from src.delivery.report import (
    CheckResult,
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
    universe_lines,
    verdict_line,
    witness_ref,
)
from src.models import Monoid, RightAct, Verdict
from src.star.certify import star_report
from src.star.morita import verify_morita

SEMILATTICE = Monoid(table=((0, 1), (1, 1)), identity=0)
POINT = RightAct(SEMILATTICE, ((0, 0),))
REGULAR = RightAct(SEMILATTICE, ((0, 1), (1, 1)))


class TestMachineLines(unittest.TestCase):
    def test_yes_verdict_has_no_witness(self) -> None:
        line = verdict_line("weak-star", Verdict.yes(3, "projective-act"))
        self.assertEqual(line, "VERDICT weak-star certified-yes 3")

    def test_no_verdict_ends_with_witness(self) -> None:
        line = verdict_line("delta-reflexive", Verdict.no(2, REGULAR))
        self.assertRegex(line, r"^VERDICT delta-reflexive certified-no 2 act2:[0-9a-f]{8}$")

    def test_unknown_verdict(self) -> None:
        line = verdict_line("colocal", Verdict.unknown(1))
        self.assertEqual(line, "VERDICT colocal unknown-at-bound 1")

    def test_check_and_universe_lines(self) -> None:
        self.assertEqual(
            check_line(CheckResult("triangles", 3, 0)), "CHECK triangles passed=3 failed=0"
        )
        self.assertEqual(
            universe_lines(enumerate_universe(SEMILATTICE, 2)),
            [
                "UNIVERSE size=0 classes=1",
                "UNIVERSE size=1 classes=1",
                "UNIVERSE size=2 classes=2",
            ],
        )

    def test_cert_line(self) -> None:
        cert = verify_morita(SEMILATTICE, REGULAR, 2)
        self.assertEqual(
            cert_line(cert),
            f"CERT morita M={monoid_hash(SEMILATTICE)} A=2 E=2 bound=2 X=4 Y=4",
        )


def test_monoid_hash_is_stable_hex() -> None:
    digest = monoid_hash(SEMILATTICE)
    assert re.fullmatch(r"[0-9a-f]{12}", digest)
    assert digest == monoid_hash(Monoid(table=((0, 1), (1, 1)), identity=0))
    assert digest != monoid_hash(Monoid(table=((0, 1), (1, 0)), identity=0))


def test_witness_refs_compose() -> None:
    hom = make_hom(POINT, REGULAR, [1])
    plain = witness_ref(hom)
    assert re.fullmatch(r"hom\[act1:[0-9a-f]{8}->act2:[0-9a-f]{8}\]\(1\)", plain)
    assert witness_ref({"family": "free-cover", "hom": hom}) == f"free-cover:{plain}"
    assert witness_ref((hom, hom)) == f"{plain}+{plain}"
    assert witness_ref(None) == ""
    assert witness_ref(7) == "7"


def test_approximation_block_is_act_text() -> None:
    ctx = make_context(SEMILATTICE, POINT)
    approx = generated_coreflection(ctx, REGULAR, 2)
    assert approximation_block(approx) == [
        "APPROX kind=coreflection equivalence=true colocal=certified-yes",
        "act 1",
        "0 0",
        "hom",
        "1",
    ]
    text = render_approximations(REGULAR, [approx])
    assert "coreflection: |C|=1 equivalence=true colocal=certified-yes (certified)" in text
    assert "initiality" not in text


class TestTextReports(unittest.TestCase):
    def test_render_verdict(self) -> None:
        text = render_verdict("delta-reflexive", Verdict.no(2, REGULAR, reason="counit-not-iso"))
        self.assertTrue(text.startswith("delta-reflexive: certified-no (bound 2)"))
        self.assertIn("reason: counit-not-iso", text)
        self.assertIn("witness: act2:", text)

    def test_render_star(self) -> None:
        text = render_star(star_report(make_context(SEMILATTICE, REGULAR), 2))
        self.assertIn("|A|=2, |E|=2", text)
        self.assertIn("indecomposable:        true", text)
        self.assertIn("[weak-star+C=G]", text)

    def test_render_morita(self) -> None:
        text = render_morita(SEMILATTICE, [verify_morita(SEMILATTICE, REGULAR, 2)])
        self.assertIn("(1 found)", text)
        self.assertIn("δ iso on 4 acts", text)

    def test_render_selftest_marks_failures(self) -> None:
        text = render_selftest(
            2, [CheckResult("monoid-axioms", 5, 0), CheckResult("triangles", 4, 1, "ctx 3")]
        )
        self.assertIn("[PASS] monoid-axioms", text)
        self.assertIn("[FAIL] triangles", text)
        self.assertIn("(ctx 3)", text)

    def test_render_universe(self) -> None:
        text = render_universe(enumerate_universe(SEMILATTICE, 2))
        self.assertTrue(text.startswith("Universe of |M|=2 at bound 2: 4 classes"))
        self.assertIn("size 2: 2", text)
