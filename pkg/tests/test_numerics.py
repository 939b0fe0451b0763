from fractions import Fraction

import mpmath as mp
import pytest

from framedet.numerics import (NumericsError, PrecisionConfig, bessel_i, binomial,
                               circle_quadrature, circle_quadrature_fixed, series_sum,
                               sum_gaussian_series)

PREC = PrecisionConfig(256)


def pascal_binomial(n, k):
    if k < 0 or k > n:
        return 0
    row = [1]
    for _ in range(n):
        row = [1] + [a + b for a, b in zip(row, row[1:])] + [1]
    return row[k]


class TestBinomial:
    def test_small(self):
        assert binomial(2, 1) == 2

    def test_out_of_range_is_zero(self):
        assert binomial(2, 3) == 0
        assert binomial(2, -1) == 0

    def test_pascal_oracle(self):
        assert binomial(50, 25) == pascal_binomial(50, 25) == 126410606437752

    def test_negative_n_rejected(self):
        with pytest.raises(ValueError):
            binomial(-1, 0)


class TestBesselI:
    def test_order_zero_at_zero(self):
        assert bessel_i(0, 0, PREC) == 1

    def test_odd_order_at_zero(self):
        assert bessel_i(1, 0, PREC) == 0

    def test_series_oracle_at_two(self):
        # independent truncated series summed at double the precision
        with mp.workprec(512):
            half = mp.mpf(2) / 2
            total = mp.mpf(0)
            for k in range(200):
                total += half ** (2 * k) / (mp.factorial(k) ** 2)
        with PREC.workprec():
            val = bessel_i(0, 2, PREC)
            assert mp.nstr(val, 8) == "2.2795853"
            assert abs(val - total) < mp.mpf(2) ** (-250)

    def test_negative_order_symmetry(self):
        with PREC.workprec():
            assert bessel_i(-3, mp.mpf("1.7"), PREC) == bessel_i(3, mp.mpf("1.7"), PREC)

    @pytest.mark.parametrize("x", ["0.5", "1", "2", "5"])
    def test_three_term_recurrence(self, x):
        with PREC.workprec():
            xv = mp.mpf(x)
            for nu in range(1, 21):
                lhs = bessel_i(nu - 1, xv, PREC) - bessel_i(nu + 1, xv, PREC)
                rhs = 2 * nu / xv * bessel_i(nu, xv, PREC)
                assert abs(lhs - rhs) <= 10 * PREC.target_tol * (1 + abs(rhs))


class TestCircleQuadrature:
    def test_constant(self):
        with PREC.workprec():
            assert abs(circle_quadrature_fixed(lambda z: 1, 8, PREC) - 1) == 0

    def test_monomial_orthogonality(self):
        with PREC.workprec():
            val = circle_quadrature_fixed(lambda z: z ** 3, 8, PREC)
            assert abs(val) < mp.mpf(2) ** (-200)

    def test_adaptive_bessel(self):
        with PREC.workprec():
            val = circle_quadrature(lambda z: mp.exp((z + 1 / z) / 2), PREC)
            assert abs(val - bessel_i(0, 1, PREC)) <= PREC.target_tol * 10

    def test_doubling_stability(self):
        # once converged, doubling the point count moves the value < tol
        with PREC.workprec():
            f = lambda z: mp.exp((z + 1 / z) / 2)
            a = circle_quadrature_fixed(f, 64, PREC)
            b = circle_quadrature_fixed(f, 128, PREC)
            assert abs(a - b) < PREC.target_tol


class TestSeriesSum:
    def test_zero_terms(self):
        with PREC.workprec():
            assert series_sum(lambda h: 0, lambda h: 0, PREC) == 0

    def test_geometric(self):
        with PREC.workprec():
            val = series_sum(lambda h: mp.mpf(2) ** (-h),
                             lambda h: mp.mpf(2) ** (-h), PREC)
            assert abs(val - 2) <= PREC.target_tol * 4

    def test_no_convergence_raises(self):
        small = PrecisionConfig(128, max_refinements=1)
        with pytest.raises(NumericsError):
            series_sum(lambda h: 1, lambda h: 1, small)

    def test_gaussian_series_vs_long_sum(self):
        # s(alpha,beta)-type sum at M=3, alpha=beta=1 against a 10^4-term sum
        with PREC.workprec():
            M = mp.mpf(3)
            c = mp.pi ** 2 / (2 * M * M)
            f = lambda h: mp.exp(-c * h * h) * mp.sin(h * mp.pi / M) ** 2
            val = sum_gaussian_series(f, PREC, start=1)
            long = mp.fsum(f(h) for h in range(1, 10 ** 4))
            assert abs(val - long) <= PREC.target_tol * (1 + abs(long)) * 10


class TestPrecisionConfig:
    def test_minimum_bits_enforced(self):
        with pytest.raises(ValueError):
            PrecisionConfig(64)

    def test_exact_rational_is_deterministic(self):
        from framedet.determinants import dense_det
        rows = [[Fraction(3, 7), Fraction(1, 2)], [Fraction(-2, 5), Fraction(4, 3)]]
        assert dense_det(rows).value == dense_det(rows).value == \
            Fraction(3, 7) * Fraction(4, 3) + Fraction(2, 5) * Fraction(1, 2)
