import pytest

from chaintree.core import ROOT, AttachPoint, ChainProfile, RootedDiagram

#: The six-chain example: c->b2, d->0, f->b1, b->a1, a->e2, e->0.
WORKED_SEQUENCE = "b2,0,b1,a1,e2"
WORKED_JSON = (
    '{"profile":[3,3,3,3,3,3],"parents":['
    '{"elem":"a","attach":"e2"},'
    '{"elem":"b","attach":"a1"},'
    '{"elem":"c","attach":"b2"},'
    '{"elem":"d","attach":"0"},'
    '{"elem":"e","attach":"0"},'
    '{"elem":"f","attach":"b1"}]}'
)


@pytest.fixture
def six_chains() -> ChainProfile:
    return ChainProfile.regular(3, 6)


@pytest.fixture
def worked_diagram(six_chains: ChainProfile) -> RootedDiagram:
    return RootedDiagram(six_chains, (
        AttachPoint(5, 2),  # a -> e2
        AttachPoint(1, 1),  # b -> a1
        AttachPoint(2, 2),  # c -> b2
        ROOT,               # d -> 0
        ROOT,               # e -> 0
        AttachPoint(2, 1),  # f -> b1
    ))
