import hypothesis.strategies as st

from chaintree.core import ChainProfile, PruferSequence


def profiles(max_k: int = 7, max_q: int = 5) -> st.SearchStrategy[ChainProfile]:
    return st.lists(st.integers(1, max_q), min_size=1, max_size=max_k).map(
        lambda lengths: ChainProfile(tuple(lengths))
    )


@st.composite
def sequences(draw, max_k: int = 7, max_q: int = 5) -> PruferSequence:
    profile = draw(profiles(max_k, max_q))
    tokens = draw(st.lists(
        st.sampled_from(profile.alphabet()),
        min_size=profile.k - 1,
        max_size=profile.k - 1,
    ))
    return PruferSequence(profile, tuple(tokens))
