import pytest

from seqcode import verify
from seqcode.pairing import PairOrder

SMALL = dict(lemma_samples=20, bracket_samples=300, pair_max=2000, pair_side=40, rules=40,
             rule_pairs=10, vesley_prefixes=5, vesley_rules=5, faithfulness_samples=15,
             formulas=60, expansion_samples=30, pow2_pmax=4)


@pytest.mark.parametrize("name", list(verify.SUITES))
def test_suite_passes_at_small_size(name):
    result = verify.SUITES[name](verify.SuiteConfig(**SMALL))
    assert result.ok, result.line()
    assert result.line().startswith(f"[PASS] {name}: all ")


def test_other_pairing_order():
    cfg = verify.SuiteConfig(**SMALL, order=PairOrder.VALUE_ARG)
    for name in ("roundtrip", "faithfulness"):
        assert verify.SUITES[name](cfg).ok


def test_failure_line():
    r = verify._result("demo", 3, [("x", 1)])
    assert not r.ok and r.line() == "[FAIL] demo: 1 of 3 cases failed; first: ('x', 1)"


def test_run_all():
    names = [r.name for r in verify.run_suites(["all"], verify.SuiteConfig(**SMALL))]
    assert names == list(verify.SUITES)
