from chaintree.core import ChainProfile
from chaintree.crosscheck import (
    MISPRINTED_D3_Q3,
    check_codec,
    check_formulas,
    check_irregular,
    check_oracle,
    run_crosscheck,
)
from chaintree.oracle import EnumerationBudget
from chaintree.settings import ChaintreeSettings


def test_small_run_passes():
    report = run_crosscheck(q_max=3, k_max=4, sum_q_max=6, codec_k_max=3)
    assert report.passed
    assert all(check.cases > 0 for check in report.checks)
    assert report.render().endswith("PASS\n")


def test_override_fails_formulas_and_oracle():
    budget = EnumerationBudget(10**5)
    formulas = check_formulas(3, 3, MISPRINTED_D3_Q3)
    oracle = check_oracle(3, 3, budget, MISPRINTED_D3_Q3)
    assert formulas.failures == [
        "q=3 k=3: closed=183, recurrence=189, series=189, lagrange=189"
    ]
    assert oracle.failures == ["q=3 k=3: oracle=189, closed=183"]


def test_oracle_stops_at_budget():
    result = check_oracle(2, 10, EnumerationBudget(1000))
    # 2, 3^2, 4^3 and 5^4 fit, 6^5 does not
    assert result.passed
    assert result.cases == 4


def test_irregular_and_codec():
    budget = EnumerationBudget()
    assert check_irregular(6, budget).passed
    assert check_codec([ChainProfile((1, 2, 3)), ChainProfile.regular(3, 3)], budget).passed


def test_settings_limit_the_run():
    settings = ChaintreeSettings()
    settings.oracle_budget = 500
    report = run_crosscheck(q_max=2, k_max=6, sum_q_max=4, settings=settings)
    assert report.passed
    obj = report.to_object()
    assert obj["passed"] is True
    assert obj["checks"][2]["name"] == "oracle"
    assert obj["checks"][2]["cases"] == 3
