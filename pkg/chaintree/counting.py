"""Closed forms and recurrences for the number of tree-type diagrams.

``d_k(q)`` counts the tree-type diagrams assembled from *k* oriented labeled
chains of *q* edges each. The auxiliary numbers ``h_k = ((q-1)k+1) d_k / k!``
(with ``h_0 = 1``) are the Taylor coefficients of the generating function
``H_q`` solved for in `chaintree.series`.
"""
import enum
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .core import ChainProfile
from .errors import InvariantViolation
from .series import FormalPowerSeries, lagrange_h, solve_H

logger = logging.getLogger(__name__)


class CountMethod(enum.Enum):
    """The independent ways chaintree can obtain a diagram count."""

    CLOSED_FORM = "closed"
    RECURRENCE = "recurrence"
    SERIES = "series"
    ORACLE = "oracle"
    #: The literal printed irregular formula; never agrees with the oracle in general.
    AS_PRINTED = "closed-as-printed"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, slots=True)
class CountTable:
    """Rows ``(k, d_k)`` obtained by one counting method.

    *q* is set for regular tables; *profile* for the count of a single
    irregular profile.
    """

    rows: tuple[tuple[int, int], ...]
    method: CountMethod
    q: int | None = None
    profile: ChainProfile | None = None

    def __post_init__(self):
        rows = tuple((int(k), int(d)) for k, d in self.rows)
        object.__setattr__(self, "rows", rows)
        ks = [k for k, _ in rows]
        if any(later <= earlier for earlier, later in zip(ks, ks[1:])):
            raise ValueError(f"rows must be strictly increasing in k, got {ks}")

    def __getitem__(self, k: int) -> int:
        for row_k, value in self.rows:
            if row_k == k:
                return value
        raise KeyError(k)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def values(self) -> list[int]:
        return [value for _, value in self.rows]


@dataclass(frozen=True, slots=True)
class HCoefficient:
    k: int
    value: Fraction


def _check_q(q: int):
    if q < 2:
        raise ValueError(f"chain length q must be at least 2, got {q}")


def count_regular(q: int, k: int) -> int:
    """Return ``d_k(q) = q^k ((q-1)k+1)^(k-2)``.

    ``k = 0`` gives 1 by convention, ``k = 1`` gives 1 and ``k = 2`` gives
    ``q^2``; the negative exponent at ``k = 1`` never reaches the arithmetic.
    """
    _check_q(q)
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if k <= 1:
        return 1
    return q**k * ((q - 1) * k + 1) ** (k - 2)


def edge_tree_count(k: int) -> int:
    """Return ``2^k (k+1)^(k-2)``, the number of trees with *k* oriented labeled edges."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if k <= 1:
        return 1
    return 2**k * (k + 1) ** (k - 2)


def count_rooted(profile: ChainProfile) -> int:
    """Return the number of rooted diagrams of *profile*, ``alphabet_size^(k-1)``."""
    return profile.alphabet_size ** (profile.k - 1)


def count_irregular(profile: ChainProfile) -> int:
    """Return the number of (unrooted) tree-type diagrams of *profile*.

    Equals ``(sum(q_i) - k + 1)^(k-2) * prod(q_i)``: the rooted count with the
    choice of root edge divided out and the marked vertex of every element
    rotated. Reduces to `count_regular` on a regular profile.
    """
    if profile.k == 1:
        return 1
    return profile.alphabet_size ** (profile.k - 2) * profile.rotations


def count_irregular_as_printed(profile: ChainProfile) -> Fraction:
    """Return ``((q_1 + ... + q_k)(k-1) + 1)^(k-2) * prod(q_i)`` literally.

    This variant of the irregular count circulates in print but disagrees with
    exhaustive enumeration (78 instead of 24 for the profile ``1,2,3``). It is
    exposed only so that the disagreement can be shown; do not use it to count.
    """
    base = Fraction(profile.total_length * (profile.k - 1) + 1)
    return base ** (profile.k - 2) * profile.rotations


def compositions(total: int, parts: int, min_part: int = 1) -> Iterator[tuple[int, ...]]:
    """Yield every tuple of *parts* integers ``>= min_part`` summing to *total*.

    Tuples come out in lexicographic order, each exactly once.
    """
    if parts < 1:
        raise ValueError(f"parts must be at least 1, got {parts}")
    if min_part not in (0, 1):
        raise ValueError(f"min_part must be 0 or 1, got {min_part}")
    if total < parts * min_part:
        return
    yield from _compositions(total, parts, min_part)


def _compositions(total: int, parts: int, min_part: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(min_part, total - (parts - 1) * min_part + 1):
        for rest in _compositions(total - first, parts - 1, min_part):
            yield (first, *rest)


def d_sequence_recurrence(q: int, k_max: int) -> CountTable:
    """Build ``d_1 .. d_{k_max}`` by attaching chains one at a time.

    The chain number ``k+1`` is joined to the rest by ``l`` arcs
    (``1 <= l <= min(k, q)``): choose which ``l`` of its *q* edges carry the
    arcs, split the other *k* chains into ``l`` labeled groups of sizes
    ``j_1 .. j_l``, and put each arc on one of the ``(q-1)j_t + 1`` free places
    of the corresponding sub-diagram::

        d_{k+1} = sum_l C(q, l) sum_{j_1+..+j_l = k, j_t >= 1}
                  k! / (j_1! .. j_l!) prod_t ((q-1) j_t + 1) d_{j_t}
    """
    _check_q(q)
    if k_max < 1:
        raise ValueError(f"k_max must be at least 1, got {k_max}")
    d = [1, 1]  # d_0 is unused; d_1 = 1
    for k in range(1, k_max):
        k_factorial = math.factorial(k)
        total = 0
        for arcs in range(1, min(k, q) + 1):
            inner = 0
            for sizes in compositions(k, arcs, 1):
                term = k_factorial
                for size in sizes:
                    term //= math.factorial(size)
                for size in sizes:
                    term *= ((q - 1) * size + 1) * d[size]
                inner += term
            total += math.comb(q, arcs) * inner
        d.append(total)
        logger.debug("recurrence q=%d: d_%d = %d", q, k + 1, total)
    return CountTable(
        rows=tuple((k, d[k]) for k in range(1, k_max + 1)),
        method=CountMethod.RECURRENCE,
        q=q,
    )


def h_sequence_recurrence(q: int, k_max: int) -> list[HCoefficient]:
    """Return ``h_0 .. h_{k_max}`` from the h-recurrence.

    ``h_k = ((q-1)k+1)/k * sum_{j_1+..+j_q = k-1, j_i >= 0} h_{j_1} .. h_{j_q}``

    The inner sum over compositions is the coefficient of ``z^(k-1)`` in the
    *q*-th power of ``sum_j h_j z^j``, read off a truncated power series
    instead of walking every composition.
    """
    _check_q(q)
    if k_max < 0:
        raise ValueError(f"k_max must be non-negative, got {k_max}")
    h = [Fraction(1)]
    for k in range(1, k_max + 1):
        power_sum = FormalPowerSeries(h).pow(q)[k - 1]
        h.append(Fraction((q - 1) * k + 1, k) * power_sum)
    return [HCoefficient(k, value) for k, value in enumerate(h)]


def h_closed_form(q: int, k: int) -> Fraction:
    """Return ``h_k = q^k ((q-1)k+1)^(k-1) / k!``."""
    _check_q(q)
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if k == 0:
        return Fraction(1)
    return Fraction(q**k * ((q - 1) * k + 1) ** (k - 1), math.factorial(k))


def d_from_h(q: int, k: int, h: Fraction) -> int:
    """Recover ``d_k = k! h_k / ((q-1)k+1)``; raises if the result is not an integer."""
    if k == 0:
        return 1
    value = h * math.factorial(k) / ((q - 1) * k + 1)
    if value.denominator != 1:
        raise InvariantViolation(f"h_{k} = {h} does not yield an integral count for q={q}")
    return value.numerator


def count_by_series(q: int, k: int) -> int:
    """Return ``d_k(q)`` read off the series solution of ``H_q``."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    return d_from_h(q, k, solve_H(q, k)[k])


def count_by_lagrange(q: int, k: int) -> int:
    """Return ``d_k(q)`` from the two-term Lagrange inversion formula."""
    if k <= 0:
        return 1
    return d_from_h(q, k, lagrange_h(q, k))


def closed_form_table(q: int, k_max: int) -> CountTable:
    return CountTable(
        rows=tuple((k, count_regular(q, k)) for k in range(0, k_max + 1)),
        method=CountMethod.CLOSED_FORM,
        q=q,
    )


def series_table(q: int, k_max: int) -> CountTable:
    """Return ``d_0 .. d_{k_max}`` from a single series solution of ``H_q``."""
    H = solve_H(q, k_max)
    return CountTable(
        rows=tuple((k, d_from_h(q, k, H[k])) for k in range(0, k_max + 1)),
        method=CountMethod.SERIES,
        q=q,
    )


def recurrence_table(q: int, k_max: int) -> CountTable:
    """Return ``d_0 .. d_{k_max}`` from the chain-attachment recurrence."""
    rows = [(0, 1)]
    if k_max >= 1:
        rows.extend(d_sequence_recurrence(q, k_max).rows)
    return CountTable(rows=tuple(rows), method=CountMethod.RECURRENCE, q=q)
