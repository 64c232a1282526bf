import pytest

from chaintree.core import ROOT, AttachPoint, ChainProfile, validate_diagram
from chaintree.counting import (
    count_irregular,
    count_irregular_as_printed,
    count_regular,
    count_rooted,
)
from chaintree.errors import BudgetExceeded
from chaintree.io import prepare_diagram
from chaintree.oracle import (
    EnumerationBudget,
    count_rooted_exhaustive,
    count_unrooted,
    enumerate_profiles,
    enumerate_rooted,
    state_space_size,
)
from chaintree.settings import ChaintreeSettings


def _regular_cases():
    cases = []
    for q in range(2, 5):
        for k in range(1, 8):
            profile = ChainProfile.regular(q, k)
            if state_space_size(profile) > ChaintreeSettings.oracle_budget:
                break
            marks = [pytest.mark.slow] if count_rooted(profile) > 10**5 else []
            cases.append(pytest.param(q, k, marks=marks, id=f"q{q}-k{k}"))
    return cases


def test_two_by_two_in_order():
    diagrams = list(enumerate_rooted(ChainProfile.regular(2, 2)))
    assert [d.parents for d in diagrams] == [
        (ROOT, ROOT),
        (ROOT, AttachPoint(1, 1)),
        (AttachPoint(2, 1), ROOT),
    ]


@pytest.mark.parametrize("lengths,rooted,unrooted", [
    ((3, 3), 5, 9),
    ((2, 2), 3, 4),
    ((3, 3, 3), 49, 189),
    ((1, 2, 3), 16, 24),
])
def test_counts(lengths, rooted, unrooted):
    profile = ChainProfile(lengths)
    assert count_rooted_exhaustive(profile) == rooted
    assert count_unrooted(profile) == unrooted


@pytest.mark.parametrize("q,k", _regular_cases())
def test_matches_closed_form(q, k):
    profile = ChainProfile.regular(q, k)
    assert count_rooted_exhaustive(profile) == count_rooted(profile)
    assert count_unrooted(profile) == count_regular(q, k)


@pytest.mark.parametrize("profile", list(enumerate_profiles(10, 3)), ids=str)
def test_irregular_formula(profile):
    assert count_unrooted(profile) == count_irregular(profile)


def test_printed_irregular_formula_is_refuted():
    profile = ChainProfile((1, 2, 3))
    assert count_unrooted(profile) == 24
    assert count_irregular_as_printed(profile) == 78


@pytest.mark.parametrize("lengths", [(3, 3, 3), (1, 2, 3), (2, 1, 2, 2)])
def test_enumeration_is_valid_and_unique(lengths):
    profile = ChainProfile(lengths)
    diagrams = list(enumerate_rooted(profile))
    assert all(validate_diagram(d) is None for d in diagrams)
    assert len({prepare_diagram(d) for d in diagrams}) == len(diagrams)
    assert [d.parents for d in diagrams] == sorted(d.parents for d in diagrams)


def test_budget():
    profile = ChainProfile.regular(3, 5)
    assert state_space_size(profile) == 11**5
    with pytest.raises(BudgetExceeded) as excinfo:
        count_unrooted(profile, EnumerationBudget(1000))
    assert excinfo.value.required == 11**5
    assert excinfo.value.budget == 1000
    with pytest.raises(BudgetExceeded):
        next(enumerate_rooted(profile, EnumerationBudget(1000)))


def test_budget_must_be_positive():
    with pytest.raises(ValueError):
        EnumerationBudget(0)


def test_enumerate_profiles():
    assert [p.lengths for p in enumerate_profiles(3)] == [
        (1,), (2,), (1, 1), (3,), (1, 2), (2, 1), (1, 1, 1),
    ]
    assert sum(1 for _ in enumerate_profiles(10)) == 2**10 - 1
