import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chaintree.counting import count_regular, h_closed_form
from chaintree.series import (
    FormalPowerSeries,
    cayley_coefficient,
    fps_add,
    fps_exp,
    fps_mul,
    fps_pow,
    identity_residuals,
    lagrange_h,
    solve_H,
    solve_psi,
    verify_identities,
)


def series(*coefficients, order=None) -> FormalPowerSeries:
    return FormalPowerSeries(coefficients, order)


class TestArithmetic:

    def test_exp_of_z(self):
        expected = (1, 1, Fraction(1, 2), Fraction(1, 6))
        assert fps_exp(FormalPowerSeries.z(3)).coefficients == expected

    def test_square(self):
        assert fps_pow(series(1, 1, order=2), 2) == series(1, 2, 1)

    def test_truncation_drops_high_terms(self):
        assert fps_mul(FormalPowerSeries.z(1), FormalPowerSeries.z(1)).is_zero()

    def test_mixed_orders(self):
        result = fps_add(series(1, 1), series(1, 2, 3))
        assert result.order == 1
        assert result == series(2, 3)

    def test_scalars(self):
        f = series(1, 2, 3)
        assert 2 * f == series(2, 4, 6)
        assert 1 - f == series(0, -2, -3)
        assert f + 1 == series(2, 2, 3)

    def test_exp_needs_zero_constant(self):
        with pytest.raises(ValueError):
            series(1, 1).exp()

    def test_negative_power(self):
        with pytest.raises(ValueError):
            series(1, 1).pow(-1)

    def test_derivative_and_shift(self):
        f = series(5, 1, 3, 2)
        assert f.derivative() == series(1, 6, 6)
        assert f.shift(2) == series(0, 0, 5, 1)
        assert f.truncate(1) == series(5, 1)
        assert f.truncate(10) == f

    def test_first_nonzero(self):
        assert series(0, 0, 3).first_nonzero() == 2
        assert FormalPowerSeries.zero(4).first_nonzero() is None

    def test_index_outside_order(self):
        with pytest.raises(IndexError):
            series(1, 2)[2]

    @given(
        st.lists(st.fractions(max_denominator=50), min_size=1, max_size=6),
        st.lists(st.fractions(max_denominator=50), min_size=1, max_size=6),
        st.lists(st.fractions(max_denominator=50), min_size=1, max_size=6),
    )
    def test_ring_laws(self, a, b, c):
        f, g, h = FormalPowerSeries(a), FormalPowerSeries(b), FormalPowerSeries(c)
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h

    @given(st.lists(st.fractions(max_denominator=20), min_size=1, max_size=6))
    def test_exp_of_sum_is_product(self, tail):
        f = FormalPowerSeries([0, *tail])
        g = FormalPowerSeries([0, *reversed(tail)])
        assert (f + g).exp() == f.exp() * g.exp()


class TestSolvers:

    def test_psi(self):
        assert solve_psi(2, 3) == series(0, 1, 2, 6)
        assert solve_psi(6, 2) == series(0, 1, 6)

    @pytest.mark.parametrize("a", range(1, 7))
    def test_psi_is_cayley(self, a):
        psi = solve_psi(a, 12)
        assert psi[1] == 1
        assert list(psi) == [cayley_coefficient(a, k) for k in range(13)]

    def test_H(self):
        assert solve_H(2, 3) == series(1, 2, 6, Fraction(64, 3))
        assert solve_H(3, 2) == series(1, 3, Fraction(45, 2))
        assert solve_H(3, 0) == series(1)

    def test_lagrange(self):
        assert lagrange_h(3, 2) == Fraction(45, 2)
        assert lagrange_h(2, 1) == 2
        with pytest.raises(ValueError):
            lagrange_h(3, 0)

    @pytest.mark.parametrize("q", range(2, 6))
    def test_h_three_ways(self, q):
        H = solve_H(q, 30)
        for k in range(1, 31):
            assert H[k] == lagrange_h(q, k) == h_closed_form(q, k)
            assert H[k] * Fraction(1, (q - 1) * k + 1) * math.factorial(k) == count_regular(q, k)

    def test_psi_against_lambert_w(self):
        sympy = pytest.importorskip("sympy")
        z = sympy.Symbol("z")
        for a in (2, 6, 12):
            expansion = sympy.series(-sympy.LambertW(-a * z) / a, z, 0, 9).removeO()
            psi = solve_psi(a, 8)
            for k in range(9):
                assert Fraction(str(expansion.coeff(z, k))) == psi[k]


class TestIdentities:

    def test_small_order(self):
        report = verify_identities(2, 10)
        assert report.passed
        assert report.verified_order == 9
        assert report.failures() == {}
        assert set(report.residuals) == {"polya_H", "substitution", "polya_psi", "ode"}

    @pytest.mark.parametrize("q", range(2, 6))
    def test_through_order_30(self, q):
        report = verify_identities(q, 31)
        assert report.passed
        assert report.verified_order >= 30

    def test_perturbed_coefficient_is_located(self):
        H = solve_H(2, 2)
        perturbed = FormalPowerSeries([H[0], H[1], H[2] + 1])
        residuals = identity_residuals(2, perturbed, solve_psi(2, 2))
        assert residuals["polya_H"].first_nonzero() == 2
        assert residuals["polya_psi"].is_zero()

    def test_order_too_small(self):
        with pytest.raises(ValueError):
            verify_identities(3, 1)
