import unittest
from concurrent.futures import Future
from unittest.mock import patch

from src.delivery.report import CheckResult
from src.selftest import (
    check_adjunction_laws,
    check_morita,
    check_two_out_of_three,
    check_yoneda,
    contexts,
    run_selftest,
)

CRITERIA = [
    "adjunction-laws",
    "yoneda",
    "indecomposable-iff-eta",
    "im-delta-equivalence",
    "inclusion-chain",
    "two-out-of-three",
    "morita",
    "weak-star-consistency",
    "oracle-coherence",
    "determinism",
]


class TestRunSelftest(unittest.TestCase):
    def setUp(self) -> None:
        patcher = patch("src.selftest.MAX_INDEC_SIZE", 2)
        patcher.start()
        self.addCleanup(patcher.stop)

    def test_every_criterion_passes_at_bound_one(self) -> None:
        results = run_selftest(1, seed=7, max_order=2, max_workers=2)
        self.assertEqual([r.name for r in results], CRITERIA)
        for result in results:
            self.assertTrue(result.ok, f"{result.name}: {result.failed} failure(s)")
        self.assertTrue(any(r.passed > 0 for r in results))

    def test_results_are_deterministic(self) -> None:
        first = run_selftest(1, seed=7, max_order=2, max_workers=2)
        second = run_selftest(1, seed=7, max_order=2, max_workers=1)
        self.assertEqual(first, second)

    def test_bound_zero_is_a_degenerate_pass(self) -> None:
        results = run_selftest(0, max_order=2, max_workers=2)
        self.assertTrue(all(r.ok for r in results))


def test_contexts_skip_empty_act_unless_asked() -> None:
    with_empty = list(contexts(1, 1, nonempty=False))
    without = list(contexts(1, 1))
    assert [ctx.A.size for ctx in with_empty] == [0, 1]
    assert [ctx.A.size for ctx in without] == [1]


def test_single_criteria_count_their_instances() -> None:
    laws = check_adjunction_laws(1, 1)
    # trivial monoid: two acts A, each with X, Y over {empty, point}
    assert (laws.passed, laws.failed) == (16, 0)
    assert check_yoneda(2, 2).ok
    morita = check_morita(2, 1)
    assert morita.ok and morita.passed > 0


def test_determinism_runs_after_the_pool_closes() -> None:
    events: list[str] = []

    class _InlinePool:
        def __init__(self, max_workers: int) -> None:
            self.max_workers = max_workers

        def __enter__(self):
            return self

        def __exit__(self, *exc_info) -> None:
            events.append("pool-closed")

        def submit(self, job, *args) -> Future:
            future: Future = Future()
            future.set_result(CheckResult(job.__name__, 1, 0))
            return future

    def _determinism(max_order: int, bound: int) -> CheckResult:
        events.append("determinism")
        return CheckResult("determinism", 1, 0, f"bound {bound}")

    with patch("src.selftest.ThreadPoolExecutor", _InlinePool):
        with patch("src.selftest.check_determinism", _determinism):
            results = run_selftest(3, max_order=1)
    assert events == ["pool-closed", "determinism"]
    assert results[-1].detail == "bound 2"


def test_capped_criteria_name_their_bound() -> None:
    assert check_two_out_of_three(1, 1).detail == "bound 1"


def test_morita_counts_every_verified_class() -> None:
    # regular act found, then three X and three Y classes for the point act
    assert check_morita(1, 2).passed == 7
