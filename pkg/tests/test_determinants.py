import random
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framedet.numerics import PrecisionConfig
from framedet.determinants import (DimensionError, bordered_hankel_det,
                                   bordered_toeplitz_det, bordered_toeplitz_matrix,
                                   dense_det, det_cofactor, dodgson_check,
                                   framed_hankel_det, framed_toeplitz_det,
                                   framed_toeplitz_matrix, hankel_det,
                                   semi_framed_toeplitz_det, toeplitz_det)
from framedet.symbols import (LineMeasure, constant_symbol, gaussian_measure,
                              laurent_symbol, make_ctrw_symbol, make_drw_symbol,
                              nibe_mu)

PREC = PrecisionConfig(256)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


class TestDenseDet:
    def test_identity(self):
        rows = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
        assert dense_det(rows).value == 1

    def test_two_by_two(self):
        assert dense_det([[Fraction(2), Fraction(1)], [Fraction(1), Fraction(2)]]).value == 3

    def test_rational_matches_cofactor(self):
        rng = random.Random(3)
        rows = [[Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(6)]
                for _ in range(6)]
        assert dense_det(rows).value == det_cofactor(rows)

    def test_zero_determinant_is_a_result(self):
        rows = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
        res = dense_det(rows)
        assert res.value == 0 and res.sign_or_phase == 0

    def test_float_pivot_ratio_reported(self):
        with PREC.workprec():
            res = dense_det([[mp.mpf(4), mp.mpf(1)], [mp.mpf(1), mp.mpf("1e-8")]], PREC)
            assert 0 < res.pivot_ratio <= 1

    def test_detresult_consistency(self):
        with PREC.workprec():
            res = dense_det([[mp.mpf(-3), mp.mpf(1)], [mp.mpf(2), mp.mpf(5)]], PREC)
            rebuilt = res.sign_or_phase * mp.mpf(10) ** res.log10_magnitude
            assert abs(rebuilt - res.value) < mp.mpf(10) ** (res.log10_magnitude - 12)


class TestStructuredDets:
    def test_toeplitz_n1(self):
        s = make_drw_symbol(1)
        assert toeplitz_det(s, 1).value == 2

    def test_drw_pair_count(self):
        # 2-step walk pairs from (2,4) to (2,4): 3 of 4 share no vertex
        assert toeplitz_det(make_drw_symbol(1), 2).value == 3

    def test_hankel_gaussian(self):
        with PREC.workprec():
            res = hankel_det(gaussian_measure(PREC), 2, PREC)
            assert abs(res.value - 2 * mp.pi) < PREC.target_tol * 10

    def test_hankel_trivial_moments(self):
        m = LineMeasure.from_moments([Fraction(1), Fraction(0), Fraction(1)])
        assert hankel_det(m, 2).value == 1

    def test_bordered_reduces_to_pure(self):
        s = make_drw_symbol(2)
        assert bordered_toeplitz_det(s, [], 4).value == toeplitz_det(s, 4).value

    def test_border_equal_to_symbol_gives_pure(self):
        # a border carrying the base symbol reproduces the last Toeplitz column
        s = make_drw_symbol(2)
        assert bordered_toeplitz_det(s, [s], 4).value == toeplitz_det(s, 4).value

    def test_framed_two_by_two(self):
        s = make_drw_symbol(1)
        res = framed_toeplitz_det(s, [s], [s], [[Fraction(5)]], 2)
        phi0, psi0, eta0 = s.fourier(0), s.fourier(0), s.fourier(0)
        assert res.value == phi0 * 5 - psi0 * eta0

    def test_framed_dimension_mismatch(self):
        s = make_drw_symbol(1)
        with pytest.raises(DimensionError):
            framed_toeplitz_det(s, [s], [s, s], [[Fraction(1)]], 4)

    def test_bordered_hankel_worked_example(self):
        mu = LineMeasure.from_moments([Fraction(1), Fraction(0)])
        z = Fraction(3, 2)
        nu = LineMeasure.from_atoms([(z, Fraction(1))])
        assert bordered_hankel_det(mu, [nu], 2).value == z

    def test_framed_hankel_two_by_two(self):
        mu = LineMeasure.from_moments([Fraction(2)])
        nu = LineMeasure.from_moments([Fraction(3)])
        eta = LineMeasure.from_moments([Fraction(5)])
        res = framed_hankel_det(mu, [nu], [eta], [[Fraction(7)]], 2)
        assert res.value == 2 * 7 - 3 * 5

    def test_semi_framed_layout(self):
        s = make_drw_symbol(2)
        res = semi_framed_toeplitz_det(s, s.shift(-1), s.shift(1), Fraction(1), 3)
        assert res.value is not None

    def test_positivity_for_positive_weights(self):
        with PREC.workprec():
            ctrw = make_ctrw_symbol(1, prec=PREC)
            for n in range(1, 11):
                assert toeplitz_det(ctrw, n, PREC).value > 0
            g = gaussian_measure(PREC)
            mu = nibe_mu(2, PREC)
            for n in range(1, 11):
                assert hankel_det(g, n, PREC).value > 0
                assert hankel_det(mu, n, PREC).value > 0


class TestIndexOrderTransformation:
    def test_border_reversal_equals_transformed_symbol(self):
        # ascending border indices == descending indices of z^(p-1) psi(1/z)
        s = make_drw_symbol(2)
        psi = make_drw_symbol(1)
        n, m = 5, 1
        p = n - m
        asc = bordered_toeplitz_matrix(s, [psi], n, ascending_border=(1,))
        transformed = psi.reversed().shift(n - 1)
        desc = bordered_toeplitz_matrix(s, [transformed], n)
        assert dense_det(asc).value == dense_det(desc).value

    def test_framed_border_reversal(self):
        s = make_drw_symbol(2)
        psi, eta = make_drw_symbol(1), make_drw_symbol(1).shift(1)
        A = [[Fraction(2, 3)]]
        n = 5
        asc = framed_toeplitz_matrix(s, [psi], [eta], A, n, ascending_border=(1,))
        transformed = psi.reversed().shift(n - 1 - 1)
        desc = framed_toeplitz_matrix(s, [transformed], [eta], A, n)
        assert dense_det(asc).value == dense_det(desc).value


class TestDodgson:
    def test_two_by_two(self):
        rows = [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]
        assert dodgson_check(rows, (0, 1), (0, 1)) == 0

    @settings(max_examples=60, deadline=None)
    @given(st.integers(2, 7), st.data())
    def test_random_rational_matrices(self, size, data):
        rows = [[data.draw(rationals) for _ in range(size)] for _ in range(size)]
        j1 = data.draw(st.integers(0, size - 2))
        j2 = data.draw(st.integers(j1 + 1, size - 1))
        k1 = data.draw(st.integers(0, size - 2))
        k2 = data.draw(st.integers(k1 + 1, size - 1))
        assert dodgson_check(rows, (j1, j2), (k1, k2)) == 0

    def test_specific_six_by_six(self):
        rng = random.Random(11)
        rows = [[Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(6)]
                for _ in range(6)]
        assert dodgson_check(rows, (1, 3), (2, 5)) == 0

    def test_invalid_pairs_rejected(self):
        rows = [[Fraction(1)] * 3 for _ in range(3)]
        with pytest.raises(DimensionError):
            dodgson_check(rows, (1, 1), (0, 2))
