from fractions import Fraction

import mpmath as mp
import pytest

from framedet.numerics import PrecisionConfig, bessel_i, sum_gaussian_series
from framedet.symbols import (DiscretizedCircleMeasure, LineMeasure, SixVertexWeights,
                              constant_symbol, discretize_circle_symbol,
                              fourier_coefficient, gaussian_lattice_measure,
                              gaussian_measure, gaussian_tilted_measure, laurent_symbol,
                              make_ctrw_symbol, make_drw_symbol, make_nibb_measures,
                              make_nibe_measures, nibe_s, sixv_symbol_derivatives)

PREC = PrecisionConfig(256)


class TestCtrwSymbol:
    def test_evaluate_at_one(self):
        with PREC.workprec():
            s = make_ctrw_symbol(1, prec=PREC)
            assert abs(s(mp.mpf(1)) - mp.e) < PREC.target_tol

    def test_evaluate_at_minus_one(self):
        with PREC.workprec():
            s = make_ctrw_symbol(2, prec=PREC)
            assert abs(s(mp.mpf(-1)) - mp.exp(-2)) < PREC.target_tol

    def test_fourier_is_bessel(self):
        with PREC.workprec():
            s = make_ctrw_symbol(1, prec=PREC)
            assert abs(s.fourier(0, PREC) - bessel_i(0, 1, PREC)) == 0

    def test_quadrature_agrees_with_closed_form(self):
        with PREC.workprec():
            s = make_ctrw_symbol(1, prec=PREC)
            assert s.self_test(PREC, jmax=10)

    def test_even_symmetry(self):
        with PREC.workprec():
            s = make_ctrw_symbol(mp.mpf("1.3"), prec=PREC)
            for j in range(11):
                assert s.fourier(j, PREC) == s.fourier(-j, PREC)

    def test_normalized_variant(self):
        with PREC.workprec():
            s = make_ctrw_symbol(1, normalized=True, prec=PREC)
            assert abs(s(mp.mpf(1)) - 1) < PREC.target_tol

    def test_rejects_nonpositive_T(self):
        with pytest.raises(ValueError):
            make_ctrw_symbol(0, prec=PREC)


class TestDrwSymbol:
    def test_T1_coefficients(self):
        s = make_drw_symbol(1)
        assert [s.fourier(j) for j in (-1, 0, 1)] == [1, 2, 1]

    def test_T2_central(self):
        assert make_drw_symbol(2).fourier(0) == 6

    def test_out_of_range(self):
        assert make_drw_symbol(1).fourier(3) == 0

    def test_probability_normalization(self):
        s = make_drw_symbol(2, probability=True)
        assert s.fourier(0) == Fraction(6, 16)

    def test_even(self):
        s = make_drw_symbol(3)
        assert all(s.fourier(j) == s.fourier(-j) for j in range(11))

    def test_quadrature_self_test(self):
        with PREC.workprec():
            assert make_drw_symbol(2).self_test(PREC, jmax=6)


class TestDiscretization:
    def test_constant_symbol(self):
        d = discretize_circle_symbol(constant_symbol(Fraction(1)), 4, 1)
        assert d.coefficient(0, PREC) == 1
        assert d.coefficient(2, PREC) == 0

    def test_direct_evaluation_oracle(self):
        with PREC.workprec():
            s = make_ctrw_symbol(1, prec=PREC)
            d = discretize_circle_symbol(s, 6, 1)
            direct = mp.fsum(s(mp.expjpi(2 * mp.mpf(k) / 6)) for k in range(6)) / 6
            assert abs(d.coefficient(0, PREC) - direct) < PREC.target_tol * 10

    def test_alias_relation(self):
        # coefficient j equals the raw root-of-unity sum, no aliasing folded in
        s = make_drw_symbol(2)
        d = discretize_circle_symbol(s, 3, 1)
        expected = sum(s.fourier(i) for i in range(-2, 5) if (i - 1) % 3 == 0)
        assert d.coefficient(1, PREC) == expected

    def test_fourier_coefficient_dispatch(self):
        s = make_drw_symbol(1)
        assert fourier_coefficient(s, 1) == 1
        d = discretize_circle_symbol(s, 2, 1)
        assert fourier_coefficient(d, 0, PREC) == d.coefficient(0, PREC)


class TestLineMeasures:
    def test_discrete_self_consistency(self):
        atoms = [(Fraction(-1), Fraction(2, 3)), (Fraction(1, 2), Fraction(1, 5))]
        m = LineMeasure.from_atoms(atoms)
        for k in range(5):
            assert m.moment(k) == sum(w * x ** k for x, w in atoms)

    def test_gaussian_moments(self):
        with PREC.workprec():
            g = gaussian_measure(PREC)
            assert g.moment(1, PREC) == 0
            assert abs(g.moment(2, PREC) - mp.sqrt(2 * mp.pi)) < PREC.target_tol
            assert abs(g.moment(4, PREC) - 3 * mp.sqrt(2 * mp.pi)) < PREC.target_tol

    def test_tilted_moment_zero_against_fourier_transform(self):
        with PREC.workprec():
            gt = gaussian_tilted_measure(1, PREC)
            expect = mp.sqrt(2 * mp.pi) * mp.exp(-mp.mpf(1) / 2)
            assert abs(gt.moment(0, PREC) - expect) < PREC.target_tol * 10

    def test_tilted_recursion_vs_quadrature(self):
        with PREC.workprec():
            beta = mp.mpf("0.7")
            gt = gaussian_tilted_measure(beta, PREC)
            for k in (1, 2, 3):
                quad = mp.quad(lambda x: x ** k * mp.exp(-x * x / 2 - 1j * beta * x),
                               [-mp.inf, mp.inf])
                assert abs(gt.moment(k, PREC) - quad) < mp.mpf(10) ** (-40)

    def test_lattice_measure_doubled_truncation(self):
        with PREC.workprec():
            m = gaussian_lattice_measure(3, mp.mpf("0.25"), 0, PREC)
            # recompute with an explicit long two-sided sum
            step = 2 * mp.pi / 3
            direct = step * mp.fsum(
                mp.exp(-(step * (k - mp.mpf("0.25"))) ** 2 / 2)
                * (step * (k - mp.mpf("0.25"))) ** 2
                for k in range(-300, 301))
            assert abs(m.moment(2, PREC) - direct) <= PREC.target_tol * (1 + abs(direct)) * 10


class TestNibeMeasures:
    def test_mu_moment_long_sum(self):
        with PREC.workprec():
            mu, nu, s = make_nibe_measures(2, PREC)
            direct = mp.fsum(mp.mpf(j) ** 2 * mp.exp(-mp.pi ** 2 * j * j / 8)
                             for j in range(1, 10 ** 4))
            assert abs(mu.moment(0, PREC) - direct) <= PREC.target_tol * 10

    def test_s_symmetry(self):
        with PREC.workprec():
            assert abs(nibe_s(3, mp.mpf("1.1"), mp.mpf("0.7"), PREC)
                       - nibe_s(3, mp.mpf("0.7"), mp.mpf("1.1"), PREC)) < PREC.target_tol

    def test_nu_moment_finite(self):
        with PREC.workprec():
            mu, nu, s = make_nibe_measures(3, PREC)
            val = nu(mp.mpf("1.2")).moment(0, PREC)
            assert mp.isfinite(val)
            direct = mp.fsum((mp.mpf(j) / mp.mpf("1.2")) * mp.exp(-mp.pi ** 2 * j * j / 18)
                             * mp.sin(j * mp.pi * mp.mpf("1.2") / 3)
                             for j in range(1, 4000))
            assert abs(val - direct) <= PREC.target_tol * (1 + abs(direct)) * 10

    def test_rejects_nonpositive_M(self):
        with pytest.raises(ValueError):
            make_nibe_measures(0, PREC)


class TestNibbMeasures:
    def test_factory_shapes(self):
        mu, mu_lat, mu_b, mu_b_lat = make_nibb_measures(3, 0.1, 0.5, PREC)
        with PREC.workprec():
            assert mu.moment(1, PREC) == 0
            assert mp.isfinite(abs(mu_b_lat.moment(0, PREC)))


class TestSixVertexWeights:
    def test_phase_validation(self):
        with pytest.raises(ValueError):
            SixVertexWeights("disordered", 2.0, 1.0, PREC)  # |t| < gamma violated
        with pytest.raises(ValueError):
            SixVertexWeights("ferroelectric", 0.1, 0.5, PREC)

    def test_disordered_value(self):
        with PREC.workprec():
            w = SixVertexWeights("disordered", 0, mp.pi / 3, PREC)
            assert abs(w.phi() - 2 / mp.sqrt(3)) < PREC.target_tol

    def test_phi_prime_vanishes_at_zero(self):
        with PREC.workprec():
            for phase, t, g in (("disordered", 0, mp.pi / 3),
                                ("antiferroelectric", 0, mp.mpf("1.2"))):
                d = sixv_symbol_derivatives(SixVertexWeights(phase, t, g, PREC), 1)
                assert abs(d[1]) < mp.mpf(10) ** (-70)

    def test_taylor_engine_reproduces_sine_derivatives(self):
        from framedet.series import TruncSeries
        with PREC.workprec():
            a = mp.mpf("0.83")
            ser = TruncSeries.sin_at(a, 8)
            for k in range(9):
                expected = [mp.sin(a), mp.cos(a), -mp.sin(a), -mp.cos(a)][k % 4]
                assert abs(ser.derivative_at_zero(k) - expected) < PREC.target_tol

    def test_second_derivative_finite_difference_oracle(self):
        with PREC.workprec():
            w = SixVertexWeights("disordered", mp.mpf("0.2"), mp.mpf("1.1"), PREC)
            d = w.phi_derivatives(2)
            h = mp.mpf(2) ** (-60)
            fd = (w.phi(w.t + h) - 2 * w.phi() + w.phi(w.t - h)) / (h * h)
            assert abs(d[2] - fd) < mp.mpf(10) ** (-25)

    def test_derivatives_against_central_differences(self):
        with PREC.workprec():
            w = SixVertexWeights("ferroelectric", mp.mpf("1.0"), mp.mpf("0.4"), PREC)
            d = w.phi_derivatives(2)
            t0 = mp.mpf("1.0")
            h = mp.mpf(2) ** (-60)
            fd1 = (w.phi(t0 + h) - w.phi(t0 - h)) / (2 * h)
            fd2 = (w.phi(t0 + h) - 2 * w.phi(t0) + w.phi(t0 - h)) / (h * h)
            assert abs(d[1] - fd1) < mp.mpf(10) ** (-30) * (1 + abs(fd1))
            assert abs(d[2] - fd2) < mp.mpf(10) ** (-25) * (1 + abs(fd2))
