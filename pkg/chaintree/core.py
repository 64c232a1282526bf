"""Diagram data model shared by the counting, codec and oracle modules.

A diagram assembled from *k* chains is stored in its star form: every element
(a chain with its bottom edge washed out) is a star with ``q_i - 1`` ordered
colored slots, and each element hangs either from the root edge or from one
slot of another element. Elements are the colors ``1..k``; they render as the
letters ``a..z`` and as ``e27``, ``e28``, ... beyond that.

Canonical text forms:

- attach point: ``0`` for the root, ``<color><subscript>`` otherwise
  (``b2``), or ``e<index>_<subscript>`` for colors beyond 26;
- Prüfer-type sequence: comma separated attach points without spaces
  (``b2,0,b1,a1,e2``).
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterator, Sequence

if TYPE_CHECKING:
    from typing import Self

from .errors import InvariantViolation, ParseError

ROOT_TOKEN = "0"
LETTER_COLORS = 26

_LETTERS = "abcdefghijklmnopqrstuvwxyz"
_LETTER_SLOT_RE = re.compile(r"^([a-z])([1-9][0-9]*)$")
_LONG_SLOT_RE = re.compile(r"^e([1-9][0-9]*)_([1-9][0-9]*)$")
_LONG_ELEMENT_RE = re.compile(r"^e([1-9][0-9]*)$")


def element_name(color: int) -> str:
    """Return the canonical name of the element with color index *color*."""
    if color < 1:
        raise ValueError(f"element colors start at 1, got {color}")
    if color <= LETTER_COLORS:
        return _LETTERS[color - 1]
    return f"e{color}"


def parse_element_name(text: str, k: int | None = None) -> int:
    """Return the color index named by *text*.

    If *k* is given, colors beyond *k* are rejected with a `ParseError`.
    """
    text = text.strip()
    if len(text) == 1 and text in _LETTERS:
        color = _LETTERS.index(text) + 1
    elif match := _LONG_ELEMENT_RE.match(text):
        color = int(match.group(1))
        if color <= LETTER_COLORS:
            raise ParseError(f"element {text!r} must be written as {element_name(color)!r}")
    else:
        raise ParseError(f"malformed element name {text!r}")
    if k is not None and color > k:
        raise ParseError(f"element {text!r} has color {color} but the profile has only {k}")
    return color


@dataclass(frozen=True, order=True, slots=True)
class AttachPoint:
    """Either the root edge or one colored slot ``(element, subscript)``.

    The root is represented as ``AttachPoint(0, 0)`` and sorts before every
    slot; slots sort by element color, then by subscript.
    """

    element: int = 0
    subscript: int = 0

    def __post_init__(self):
        if (self.element == 0) != (self.subscript == 0):
            raise ValueError(
                f"root needs element and subscript 0, slots need both >= 1; "
                f"got ({self.element}, {self.subscript})"
            )
        if self.element < 0 or self.subscript < 0:
            raise ValueError(f"negative attach point ({self.element}, {self.subscript})")

    @classmethod
    def slot(cls, element: int, subscript: int) -> Self:
        if element < 1 or subscript < 1:
            raise ValueError(
                f"slots need element and subscript >= 1, got ({element}, {subscript})"
            )
        return cls(element, subscript)

    @property
    def is_root(self) -> bool:
        return self.element == 0

    def render(self) -> str:
        """Return the canonical text form of this attach point."""
        if self.is_root:
            return ROOT_TOKEN
        if self.element <= LETTER_COLORS:
            return f"{_LETTERS[self.element - 1]}{self.subscript}"
        return f"e{self.element}_{self.subscript}"

    def __str__(self) -> str:
        return self.render()


ROOT = AttachPoint()


@dataclass(frozen=True, slots=True)
class ChainProfile:
    """The chain lengths ``(q_1, ..., q_k)`` of the elements of a diagram."""

    lengths: tuple[int, ...]

    def __post_init__(self):
        lengths = tuple(self.lengths)
        object.__setattr__(self, "lengths", lengths)
        if not lengths:
            raise ValueError("a chain profile needs at least one element")
        for length in lengths:
            if not isinstance(length, int) or isinstance(length, bool) or length < 1:
                raise ValueError(f"chain lengths must be positive integers, got {length!r}")

    @classmethod
    def regular(cls, q: int, k: int) -> Self:
        """Return the profile of *k* chains of length *q*."""
        if k < 1:
            raise ValueError(f"a chain profile needs k >= 1, got {k}")
        return cls((q,) * k)

    @classmethod
    def parse(cls, text: str) -> Self:
        """Parse a comma separated list of chain lengths such as ``"1,2,3"``."""
        parts = [part.strip() for part in text.split(",")]
        try:
            return cls(tuple(int(part) for part in parts))
        except ValueError as e:
            raise ParseError(f"malformed chain profile {text!r}: {e}") from None

    @property
    def k(self) -> int:
        return len(self.lengths)

    @property
    def is_regular(self) -> bool:
        return len(set(self.lengths)) == 1

    @property
    def q(self) -> int | None:
        """The common chain length of a regular profile, `None` otherwise."""
        return self.lengths[0] if self.is_regular else None

    @property
    def total_length(self) -> int:
        return sum(self.lengths)

    @property
    def alphabet_size(self) -> int:
        """Number of attach points: every colored slot plus the root."""
        return self.total_length - self.k + 1

    @property
    def rotations(self) -> int:
        """Number of ways to place the marked vertex on every element."""
        return math.prod(self.lengths)

    def slot_count(self, element: int) -> int:
        """Return the number of colored slots of *element* (``q_i - 1``)."""
        return self.lengths[element - 1] - 1

    def elements(self) -> range:
        return range(1, self.k + 1)

    def alphabet(self) -> tuple[AttachPoint, ...]:
        """Return every attach point of the profile, root first, in canonical order."""
        points = [ROOT]
        for element in self.elements():
            points.extend(
                AttachPoint(element, subscript)
                for subscript in range(1, self.slot_count(element) + 1)
            )
        return tuple(points)

    def check_attach_point(self, point: AttachPoint) -> str | None:
        """Return why *point* is not valid for this profile, or `None` if it is."""
        if point.is_root:
            return None
        if point.element > self.k:
            return (
                f"attach point {point} refers to color {point.element} "
                f"but the profile has only {self.k} elements"
            )
        if point.subscript > self.slot_count(point.element):
            return (
                f"subscript {point.subscript} of {point} exceeds "
                f"q-1 = {self.slot_count(point.element)}"
            )
        return None

    def render(self) -> str:
        return ",".join(str(length) for length in self.lengths)

    def __str__(self) -> str:
        return self.render()


def parse_attach_point(text: str, profile: ChainProfile) -> AttachPoint:
    """Parse the canonical text form of an attach point of *profile*.

    Raises `ParseError` for malformed text, for colors beyond the profile's
    *k* and for subscripts beyond ``q_i - 1``.
    """
    text = text.strip()
    if not text:
        raise ParseError("empty attach point")
    if text == ROOT_TOKEN:
        return ROOT
    if match := _LETTER_SLOT_RE.match(text):
        element = _LETTERS.index(match.group(1)) + 1
        subscript = int(match.group(2))
    elif match := _LONG_SLOT_RE.match(text):
        element = int(match.group(1))
        subscript = int(match.group(2))
        if element <= LETTER_COLORS:
            raise ParseError(
                f"attach point {text!r} must be written as "
                f"{AttachPoint(element, subscript).render()!r}"
            )
    else:
        raise ParseError(f"malformed attach point {text!r}")
    point = AttachPoint(element, subscript)
    if problem := profile.check_attach_point(point):
        raise ParseError(problem)
    return point


class ViolationKind(enum.Enum):

    WRONG_SIZE = "wrong-size"
    BAD_ATTACH_POINT = "bad-attach-point"
    SELF_ATTACHMENT = "self-attachment"
    CYCLE = "cycle"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, slots=True)
class Violation:
    """Report of the first invariant a `RootedDiagram` breaks."""

    kind: ViolationKind
    message: str
    elements: tuple[int, ...] = ()

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


@dataclass(frozen=True, slots=True)
class RootedDiagram:
    """A rooted diagram in star form.

    ``parents[i - 1]`` is the attach point element *i* hangs from. Several
    elements may share the root or the same slot. Construction does not
    validate; use `validate_diagram` or `check_diagram`.
    """

    profile: ChainProfile
    parents: tuple[AttachPoint, ...]

    def __post_init__(self):
        object.__setattr__(self, "parents", tuple(self.parents))

    @classmethod
    def from_mapping(cls, profile: ChainProfile, parents: dict[int, AttachPoint]) -> Self:
        """Build a diagram from a ``{element: attach point}`` mapping covering every element."""
        missing = [element for element in profile.elements() if element not in parents]
        if missing:
            names = ", ".join(element_name(element) for element in missing)
            raise ValueError(f"no attach point given for {names}")
        return cls(profile, tuple(parents[element] for element in profile.elements()))

    @property
    def k(self) -> int:
        return self.profile.k

    def parent(self, element: int) -> AttachPoint:
        return self.parents[element - 1]

    def children_of(self, element: int) -> tuple[int, ...]:
        """Return the elements hanging from any slot of *element*, in color order."""
        return tuple(
            child for child, point in enumerate(self.parents, start=1)
            if point.element == element
        )

    @property
    def roots(self) -> tuple[int, ...]:
        """Return the elements attached to the root edge."""
        return self.children_of(0)

    def depth(self, element: int) -> int:
        """Return the number of parent steps from *element* to the root.

        Only meaningful for valid diagrams; raises `InvariantViolation` when
        the walk does not reach the root within *k* steps.
        """
        steps = 0
        current = element
        while current != 0:
            if steps > self.k:
                raise InvariantViolation(f"{element_name(element)} does not reach the root")
            current = self.parents[current - 1].element
            steps += 1
        return steps

    def __iter__(self) -> Iterator[tuple[int, AttachPoint]]:
        return iter(enumerate(self.parents, start=1))


def validate_diagram(diagram: RootedDiagram) -> Violation | None:
    """Check the invariants of *diagram*.

    Returns `None` if the diagram is valid, otherwise a `Violation` naming the
    first invariant that fails. Checks run in the order: size, attach point
    bounds, self-attachment, acyclicity.
    """
    profile = diagram.profile
    k = profile.k
    if len(diagram.parents) != k:
        return Violation(
            ViolationKind.WRONG_SIZE,
            f"{len(diagram.parents)} attach points given for {k} elements",
        )
    for element, point in diagram:
        if problem := profile.check_attach_point(point):
            return Violation(
                ViolationKind.BAD_ATTACH_POINT,
                f"{element_name(element)}: {problem}",
                (element,),
            )
    for element, point in diagram:
        if point.element == element:
            return Violation(
                ViolationKind.SELF_ATTACHMENT,
                f"{element_name(element)} is attached to its own slot {point}",
                (element,),
            )
    if cycle := find_cycle(diagram.parents):
        names = ", ".join(element_name(element) for element in sorted(cycle))
        return Violation(ViolationKind.CYCLE, f"cycle {{{names}}}", tuple(sorted(cycle)))
    return None


def check_diagram(diagram: RootedDiagram) -> RootedDiagram:
    """Return *diagram* unchanged if valid, raise `InvariantViolation` otherwise."""
    if violation := validate_diagram(diagram):
        raise InvariantViolation(str(violation), violation)
    return diagram


def find_cycle(parents: Sequence[AttachPoint]) -> tuple[int, ...]:
    """Return the elements of the first cycle of the parent map, or ``()``."""
    state = [0] * (len(parents) + 1)  # 0 unseen, 1 on current path, 2 reaches root
    for start in range(1, len(parents) + 1):
        path = []
        current = start
        while current != 0 and state[current] == 0:
            state[current] = 1
            path.append(current)
            current = parents[current - 1].element
        if current != 0 and state[current] == 1:
            return tuple(path[path.index(current):])
        for element in path:
            state[element] = 2
    return ()


@dataclass(frozen=True, slots=True)
class PruferSequence:
    """A word of ``k - 1`` attach points of *profile*."""

    profile: ChainProfile
    tokens: tuple[AttachPoint, ...] = field(default=())

    def __post_init__(self):
        tokens = tuple(self.tokens)
        object.__setattr__(self, "tokens", tokens)
        expected = self.profile.k - 1
        if len(tokens) != expected:
            raise InvariantViolation(
                f"a sequence for {self.profile.k} elements has {expected} tokens, got {len(tokens)}"
            )
        for token in tokens:
            if problem := self.profile.check_attach_point(token):
                raise InvariantViolation(problem)

    @classmethod
    def parse(cls, text: str, profile: ChainProfile) -> Self:
        """Parse comma separated tokens such as ``"b2,0,b1,a1,e2"``.

        The empty string is the sequence of a single element.
        """
        text = text.strip()
        parts = text.split(",") if text else []
        tokens = tuple(parse_attach_point(part, profile) for part in parts)
        if len(tokens) != profile.k - 1:
            raise ParseError(
                f"a sequence for {profile.k} elements has {profile.k - 1} tokens, "
                f"got {len(tokens)}"
            )
        return cls(profile, tokens)

    def render(self) -> str:
        return ",".join(token.render() for token in self.tokens)

    def __str__(self) -> str:
        return self.render()

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[AttachPoint]:
        return iter(self.tokens)

