"""Truncated formal power series with exact rational coefficients.

The generating function ``H_q(z) = sum_k h_k z^k`` of the rescaled diagram
counts satisfies ``H_q = exp(q z H_q^(q-1))``. With ``psi = z H_q^(q-1)`` this
becomes the Cayley tree equation ``psi = z exp(q(q-1) psi)`` and
``H_q = exp(q psi)``. Both equations are solved here by fixed-point
iteration on truncated series; no floating point arithmetic is involved.

``H_q`` is analytic for ``|z| < 1/(q(q-1)e)``, but nothing in this module
depends on that: all series are formal.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable

if TYPE_CHECKING:
    from typing import Self

logger = logging.getLogger(__name__)

Coefficient = Fraction | int


class FormalPowerSeries:
    """A power series ``c_0 + c_1 z + ... + c_N z^N + O(z^(N+1))``.

    *N* is the truncation order. Arithmetic is exact through the order of
    the result, which is the smaller order of the operands. Values are
    immutable.
    """

    __slots__ = ("_coefficients",)

    _coefficients: tuple[Fraction, ...]

    def __init__(self, coefficients: Iterable[Coefficient], order: int | None = None):
        coefficients = [Fraction(c) for c in coefficients]
        if order is None:
            order = len(coefficients) - 1
        if order < 0:
            raise ValueError("a power series needs at least one coefficient")
        coefficients = coefficients[:order + 1]
        coefficients.extend(Fraction(0) for _ in range(order + 1 - len(coefficients)))
        self._coefficients = tuple(coefficients)

    @classmethod
    def constant(cls, value: Coefficient, order: int) -> Self:
        return cls([value], order)

    @classmethod
    def zero(cls, order: int) -> Self:
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> Self:
        return cls([1], order)

    @classmethod
    def z(cls, order: int) -> Self:
        """The series of the formal variable itself."""
        return cls([0, 1], order)

    @property
    def order(self) -> int:
        return len(self._coefficients) - 1

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._coefficients

    def __getitem__(self, k: int) -> Fraction:
        if k < 0 or k > self.order:
            raise IndexError(f"coefficient {k} is outside the truncation order {self.order}")
        return self._coefficients[k]

    def __len__(self) -> int:
        return len(self._coefficients)

    def __iter__(self):
        return iter(self._coefficients)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormalPowerSeries):
            return NotImplemented
        return self._coefficients == other._coefficients

    def __hash__(self) -> int:
        return hash(self._coefficients)

    def __repr__(self) -> str:
        terms = ", ".join(str(c) for c in self._coefficients)
        return f"FormalPowerSeries([{terms}], order={self.order})"

    def truncate(self, order: int) -> Self:
        """Return the series cut down to *order* (never extended)."""
        return type(self)(self._coefficients, min(order, self.order))

    def __neg__(self) -> Self:
        return type(self)((-c for c in self._coefficients), self.order)

    def __add__(self, other: "FormalPowerSeries | Coefficient") -> Self:
        if not isinstance(other, FormalPowerSeries):
            other = type(self).constant(other, self.order)
        order = min(self.order, other.order)
        return type(self)(
            (self._coefficients[n] + other._coefficients[n] for n in range(order + 1)),
            order,
        )

    __radd__ = __add__

    def __sub__(self, other: "FormalPowerSeries | Coefficient") -> Self:
        return self + (-other)

    def __rsub__(self, other: Coefficient) -> Self:
        return (-self) + other

    def __mul__(self, other: "FormalPowerSeries | Coefficient") -> Self:
        if not isinstance(other, FormalPowerSeries):
            factor = Fraction(other)
            return type(self)((factor * c for c in self._coefficients), self.order)
        order = min(self.order, other.order)
        f, g = self._coefficients, other._coefficients
        return type(self)(
            (sum((f[i] * g[n - i] for i in range(n + 1)), Fraction(0)) for n in range(order + 1)),
            order,
        )

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Self:
        return self.pow(exponent)

    def pow(self, exponent: int) -> Self:
        """Return the series raised to a non-negative integer power."""
        if exponent < 0:
            raise ValueError(f"only non-negative integer powers are supported, got {exponent}")
        result = type(self).one(self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def exp(self) -> Self:
        """Return ``exp`` of a series with zero constant term.

        Uses ``n g_n = sum_{j=1}^{n} j f_j g_{n-j}``, which follows from
        ``(exp f)' = f' exp f``.
        """
        f = self._coefficients
        if f[0] != 0:
            raise ValueError(
                f"exp needs a zero constant term to stay rational, got {f[0]}"
            )
        g = [Fraction(1)]
        for n in range(1, self.order + 1):
            g.append(sum((j * f[j] * g[n - j] for j in range(1, n + 1)), Fraction(0)) / n)
        return type(self)(g, self.order)

    def derivative(self) -> Self:
        """Return the formal derivative; its order is one less."""
        if self.order < 1:
            raise ValueError("the derivative of an order 0 series is unknown")
        return type(self)(
            (n * self._coefficients[n] for n in range(1, self.order + 1)),
            self.order - 1,
        )

    def shift(self, n: int = 1) -> Self:
        """Return the series multiplied by ``z^n``, at the same order."""
        if n < 0:
            raise ValueError(f"shift must be non-negative, got {n}")
        return type(self)([0] * n + list(self._coefficients), self.order)

    def is_zero(self) -> bool:
        return not any(self._coefficients)

    def first_nonzero(self) -> int | None:
        """Return the index of the first nonzero coefficient, `None` for the zero series."""
        for index, c in enumerate(self._coefficients):
            if c:
                return index
        return None


def fps_add(f: FormalPowerSeries, g: FormalPowerSeries) -> FormalPowerSeries:
    return f + g


def fps_mul(f: FormalPowerSeries, g: FormalPowerSeries) -> FormalPowerSeries:
    return f * g


def fps_pow(f: FormalPowerSeries, n: int) -> FormalPowerSeries:
    return f.pow(n)


def fps_exp(f: FormalPowerSeries) -> FormalPowerSeries:
    return f.exp()


def solve_psi(a: int, order: int) -> FormalPowerSeries:
    """Solve ``psi = z exp(a psi)`` with ``psi(0) = 0`` through *order*.

    Starts from ``psi = z``; every pass of ``psi <- z exp(a psi)`` fixes one
    more coefficient, so at most *order* passes are made.
    """
    if a < 1:
        raise ValueError(f"a must be a positive integer, got {a}")
    if order < 1:
        raise ValueError(f"order must be at least 1, got {order}")
    psi = FormalPowerSeries.z(order)
    for step in range(order):
        updated = (a * psi).exp().shift(1)
        if updated == psi:
            logger.debug("psi fixed point for a=%d reached after %d passes", a, step)
            break
        psi = updated
    return psi


def solve_H(q: int, order: int) -> FormalPowerSeries:
    """Return ``H_q = exp(q psi)`` through *order*; coefficient *k* is ``h_k``."""
    if q < 2:
        raise ValueError(f"chain length q must be at least 2, got {q}")
    if order < 0:
        raise ValueError(f"order must be non-negative, got {order}")
    if order == 0:
        return FormalPowerSeries.one(0)
    return (q * solve_psi(q * (q - 1), order)).exp()


def cayley_coefficient(a: int, k: int) -> Fraction:
    """Return ``a^(k-1) k^(k-1) / k!``, the coefficient of ``z^k`` in ``psi``."""
    if k == 0:
        return Fraction(0)
    return Fraction(a ** (k - 1) * k ** (k - 1), math.factorial(k))


def exp_taylor_coefficient(rate: int, n: int) -> Fraction:
    """Return the coefficient of ``w^n`` in ``exp(rate * w)``."""
    if n < 0:
        return Fraction(0)
    return Fraction(rate**n, math.factorial(n))


def lagrange_h(q: int, k: int) -> Fraction:
    """Return ``h_k`` by Lagrange inversion of ``t(w) = w exp(-q(q-1)w)``.

    The coefficient of ``z^k`` in ``exp(q psi(z))`` becomes, after the
    substitution ``z = t(w)``, the difference of two Taylor coefficients of
    ``exp(c w)`` with ``c = q((q-1)k + 1)``::

        [w^k] exp(c w) - q(q-1) [w^(k-1)] exp(c w)

    Both terms are evaluated as they stand.
    """
    if q < 2:
        raise ValueError(f"chain length q must be at least 2, got {q}")
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    rate = q * ((q - 1) * k + 1)
    return exp_taylor_coefficient(rate, k) - q * (q - 1) * exp_taylor_coefficient(rate, k - 1)


@dataclass(frozen=True)
class IdentityReport:
    """Residuals of the functional equations of ``H_q`` and ``psi``.

    Every residual must be the zero series. *order* is the truncation order
    the series were solved to; `verified_order` is the highest power of *z*
    checked by every residual.
    """

    q: int
    order: int
    residuals: dict[str, FormalPowerSeries] = field(default_factory=dict)

    @property
    def verified_order(self) -> int:
        return min(residual.order for residual in self.residuals.values())

    @property
    def passed(self) -> bool:
        return all(residual.is_zero() for residual in self.residuals.values())

    def failures(self) -> dict[str, int]:
        """Return the failing residuals with the power of *z* they first fail at."""
        return {
            name: index for name, residual in self.residuals.items()
            if (index := residual.first_nonzero()) is not None
        }


def identity_residuals(
        q: int,
        H: FormalPowerSeries,
        psi: FormalPowerSeries) -> dict[str, FormalPowerSeries]:
    """Return the four residual series for candidate solutions *H* and *psi*.

    - ``polya_H``: ``H - exp(q z H^(q-1))``
    - ``substitution``: ``psi - z H^(q-1)``
    - ``polya_psi``: ``psi - z exp(q(q-1) psi)``
    - ``ode``: ``H' (1 - q(q-1) z H^(q-1)) - q H^q``, one order shorter
    """
    z_H = H.pow(q - 1).shift(1)
    a = q * (q - 1)
    return {
        "polya_H": H - (q * z_H).exp(),
        "substitution": psi - z_H,
        "polya_psi": psi - (a * psi).exp().shift(1),
        "ode": H.derivative() * (1 - a * z_H) - q * H.pow(q),
    }


def verify_identities(q: int, order: int) -> IdentityReport:
    """Solve for ``H_q`` and ``psi`` through *order* and check their identities."""
    if order < 2:
        raise ValueError(f"order must be at least 2, got {order}")
    psi = solve_psi(q * (q - 1), order)
    H = solve_H(q, order)
    report = IdentityReport(q, order, identity_residuals(q, H, psi))
    logger.info(
        "identities q=%d through z^%d: %s",
        q, report.verified_order, "zero" if report.passed else report.failures(),
    )
    return report
