"""Prüfer-type code for rooted diagrams.

Encoding repeatedly removes the element of minimal color that has no other
element attached to it and writes down the attach point it hung from. After
``k - 1`` removals the last element is attached to the root; its ``0`` is
implied and not written. Decoding reads the tokens left to right and attaches
the minimal color that is neither placed yet nor mentioned in the remaining
tokens. Irregular profiles use the same procedure with a larger alphabet.
"""
import heapq
import itertools
import logging
from typing import Iterator

from .core import ROOT, AttachPoint, ChainProfile, PruferSequence, RootedDiagram, check_diagram
from .errors import InvariantViolation
from .oracle import EnumerationBudget

logger = logging.getLogger(__name__)


def encode(diagram: RootedDiagram) -> PruferSequence:
    """Return the Prüfer-type sequence of a valid *diagram*.

    Raises `InvariantViolation` if the diagram is not valid.
    """
    check_diagram(diagram)
    k = diagram.k
    children = [0] * (k + 1)
    for _, point in diagram:
        children[point.element] += 1
    leaves = [element for element in range(1, k + 1) if children[element] == 0]
    heapq.heapify(leaves)
    tokens: list[AttachPoint] = []
    for _ in range(k - 1):
        element = heapq.heappop(leaves)
        point = diagram.parent(element)
        tokens.append(point)
        if not point.is_root:
            children[point.element] -= 1
            if children[point.element] == 0:
                heapq.heappush(leaves, point.element)
    if len(leaves) != 1 or not diagram.parent(leaves[0]).is_root:
        raise InvariantViolation("the last remaining element is not attached to the root")
    return PruferSequence(diagram.profile, tuple(tokens))


def decode(sequence: PruferSequence) -> RootedDiagram:
    """Return the rooted diagram encoded by *sequence*."""
    profile = sequence.profile
    k = profile.k
    mentions = [0] * (k + 1)
    for token in sequence:
        mentions[token.element] += 1
    free = [element for element in range(1, k + 1) if mentions[element] == 0]
    heapq.heapify(free)
    parents: list[AttachPoint | None] = [None] * k
    for token in sequence:
        element = heapq.heappop(free)
        if element == token.element:
            raise InvariantViolation(f"decoding attached {token} to its own element")
        parents[element - 1] = token
        if not token.is_root:
            mentions[token.element] -= 1
            if mentions[token.element] == 0:
                heapq.heappush(free, token.element)
    if len(free) != 1:
        raise InvariantViolation(f"{len(free)} elements left over after decoding {sequence}")
    parents[free[0] - 1] = ROOT
    return RootedDiagram(profile, tuple(parents))


def enumerate_sequences(
        profile: ChainProfile,
        budget: EnumerationBudget | None = None) -> Iterator[PruferSequence]:
    """Yield every sequence of *profile* once, in lexicographic order.

    Raises `BudgetExceeded` before yielding anything if there are more than
    *budget* sequences.
    """
    budget = budget if budget else EnumerationBudget()
    budget.require(profile.alphabet_size ** (profile.k - 1), "sequence enumeration")
    logger.debug("enumerating sequences of profile %s", profile)
    for tokens in itertools.product(profile.alphabet(), repeat=profile.k - 1):
        yield PruferSequence(profile, tokens)
