import pytest

from kdom.verify import SUITES, SuiteConfig, SuiteResult, run_suite


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes_small_config(name):
    result = run_suite(name, SuiteConfig(seed=1, trials=15, n_max=10, s_max=6))
    assert result.passed, result.summary()
    assert all(pc.checked > 0 for pc in result.properties.values())


def test_suites_are_deterministic():
    cfg = SuiteConfig(seed=3, trials=25)
    assert run_suite("recognition-oracle", cfg).summary() == run_suite("recognition-oracle", cfg).summary()


def test_first_counterexample_is_kept():
    res = SuiteResult("demo")
    res.check("p", True, "never")
    res.check("p", False, "first")
    res.check("p", False, lambda: "second")
    assert not res.passed
    assert res.properties["p"].counterexample == "first"
    assert res.properties["p"].failed == 2 and res.properties["p"].checked == 3
    assert "FAIL demo/p" in res.summary()


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")
