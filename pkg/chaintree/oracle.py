"""Brute-force ground truth for the diagram counts.

The oracle walks every map from elements to attach points that never attaches
an element to itself and keeps the acyclic ones. It uses no counting formula,
so it can adjudicate between them.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterator

if TYPE_CHECKING:
    from typing import Self

from .core import AttachPoint, ChainProfile, RootedDiagram
from .counting import compositions
from .errors import BudgetExceeded, InvariantViolation
from .settings import ChaintreeSettings

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class EnumerationBudget:
    """Cap on the number of states an exhaustive enumeration may span."""

    max_states: int = ChaintreeSettings.oracle_budget

    def __post_init__(self):
        if self.max_states < 1:
            raise ValueError(f"budget must be positive, got {self.max_states}")

    @classmethod
    def from_settings(cls, settings: ChaintreeSettings) -> Self:
        return cls(settings.oracle_budget)

    def allows(self, required: int) -> bool:
        return required <= self.max_states

    def require(self, required: int, what: str = "enumeration"):
        """Raise `BudgetExceeded` unless *required* states fit the budget."""
        if not self.allows(required):
            raise BudgetExceeded(required, self.max_states, what)


def state_space_size(profile: ChainProfile) -> int:
    """Return the number of unrestricted parent maps, ``alphabet_size^k``."""
    return profile.alphabet_size ** profile.k


class _ParentWalk:
    """Depth-first assignment of parents to elements ``1..k`` in order.

    A partial assignment is extended only while it stays acyclic, so every
    cycle is rejected at the moment its last member is assigned.
    """

    def __init__(self, profile: ChainProfile):
        self._k = profile.k
        alphabet = profile.alphabet()
        self._choices = [
            tuple(point for point in alphabet if point.element != element)
            for element in profile.elements()
        ]
        self._up = [0] * (self._k + 1)
        self._chosen: list[AttachPoint] = []

    def _closes_cycle(self, element: int) -> bool:
        up = self._up
        current = up[element]
        steps = 0
        while current != 0 and current <= element and steps <= self._k:
            if current == element:
                return True
            current = up[current]
            steps += 1
        return False

    def assignments(self, element: int = 1) -> Iterator[tuple[AttachPoint, ...]]:
        if element > self._k:
            yield tuple(self._chosen)
            return
        for point in self._choices[element - 1]:
            self._up[element] = point.element
            if point.element and self._closes_cycle(element):
                continue
            self._chosen.append(point)
            yield from self.assignments(element + 1)
            self._chosen.pop()

    def count(self, element: int = 1) -> int:
        if element > self._k:
            return 1
        total = 0
        for point in self._choices[element - 1]:
            self._up[element] = point.element
            if point.element and self._closes_cycle(element):
                continue
            total += self.count(element + 1)
        return total


def enumerate_rooted(
        profile: ChainProfile,
        budget: EnumerationBudget | None = None) -> Iterator[RootedDiagram]:
    """Yield every rooted diagram of *profile* exactly once.

    Diagrams come in lexicographic order of their parent tuples (element ``a``
    varies slowest). Raises `BudgetExceeded` if ``alphabet_size^k`` exceeds
    the budget.
    """
    budget = budget if budget else EnumerationBudget()
    budget.require(state_space_size(profile), f"oracle for profile {profile}")
    logger.debug("oracle: enumerating rooted diagrams of %s", profile)
    for parents in _ParentWalk(profile).assignments():
        yield RootedDiagram(profile, parents)


def count_rooted_exhaustive(profile: ChainProfile, budget: EnumerationBudget | None = None) -> int:
    """Count the rooted diagrams of *profile* by the same walk as `enumerate_rooted`."""
    budget = budget if budget else EnumerationBudget()
    budget.require(state_space_size(profile), f"oracle for profile {profile}")
    count = _ParentWalk(profile).count()
    logger.debug("oracle: %d rooted diagrams for %s", count, profile)
    return count


def count_unrooted(profile: ChainProfile, budget: EnumerationBudget | None = None) -> int:
    """Return the oracle's unrooted count ``rooted * prod(q_i) / alphabet_size``.

    Raises `InvariantViolation` if the division is not exact.
    """
    rooted = count_rooted_exhaustive(profile, budget)
    quotient, remainder = divmod(rooted * profile.rotations, profile.alphabet_size)
    if remainder:
        raise InvariantViolation(
            f"{rooted} rooted diagrams of {profile} times {profile.rotations} rotations "
            f"is not divisible by {profile.alphabet_size} root choices"
        )
    return quotient


def enumerate_profiles(sum_max: int, sum_min: int = 1) -> Iterator[ChainProfile]:
    """Yield every ordered profile with ``sum_min <= sum(q_i) <= sum_max``."""
    for total in range(max(sum_min, 1), sum_max + 1):
        for k in range(1, total + 1):
            for lengths in compositions(total, k, 1):
                yield ChainProfile(lengths)
