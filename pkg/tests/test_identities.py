import random
from fractions import Fraction

import mpmath as mp
import pytest

from framedet.numerics import PrecisionConfig
from framedet.identities import (nondegenerate_measure, nondegenerate_symbol,
                                 random_discrete_measure, random_laurent_symbol,
                                 random_rational, run_identity_suite,
                                 verify_bordered_hankel, verify_bordered_toeplitz,
                                 verify_dodgson_bordered_recursion,
                                 verify_framed_hankel, verify_framed_toeplitz,
                                 verify_semiframed_kernel, verify_zx_relations)
from framedet.symbols import (LineMeasure, constant_symbol, laurent_symbol,
                              make_ctrw_symbol)

PREC = PrecisionConfig(256)


class TestBorderedHankel:
    def test_worked_two_by_two(self):
        mu = LineMeasure.from_moments([Fraction(1), Fraction(0), Fraction(1)])
        rep = verify_bordered_hankel(mu, None, 2, PREC, points=[Fraction(5, 2)])
        assert rep.passed and rep.lhs == Fraction(5, 2)

    def test_exact_random(self):
        rng = random.Random(21)
        mu = nondegenerate_measure(rng, 5, PREC)
        rep = verify_bordered_hankel(mu, None, 5, PREC,
                                     points=[Fraction(1, 2), Fraction(3)])
        assert rep.passed and rep.abs_discrepancy == 0

    def test_m_equals_n_vandermonde(self):
        rng = random.Random(22)
        mu = nondegenerate_measure(rng, 4, PREC)
        pts = [Fraction(1), Fraction(2), Fraction(3)]
        rep = verify_bordered_hankel(mu, None, 3, PREC, points=pts)
        assert rep.passed
        vdm = Fraction(1)
        for i in range(3):
            for j in range(i + 1, 3):
                vdm *= pts[j] - pts[i]
        assert rep.lhs == vdm


class TestBorderedToeplitz:
    def test_lebesgue_monomial(self):
        rep = verify_bordered_toeplitz(constant_symbol(Fraction(1)), None, 4, "Q",
                                       PREC, points=[Fraction(2)])
        assert rep.passed and rep.lhs == Fraction(2) ** 3

    def test_qhat_variant_exact(self):
        rng = random.Random(23)
        sym = nondegenerate_symbol(rng, 6, PREC)
        rep = verify_bordered_toeplitz(sym, None, 5, "Qhat", PREC,
                                       points=[Fraction(1, 3), Fraction(2)])
        assert rep.passed and rep.abs_discrepancy == 0

    def test_measure_borders_float(self):
        with PREC.workprec():
            ctrw = make_ctrw_symbol(1, prec=PREC)
            psi = ctrw.shift(-2)
            rep = verify_bordered_toeplitz(ctrw, [psi], 4, "Q", PREC)
            assert rep.passed
            assert mp.mpf(rep.rel_discrepancy) < 10 * PREC.target_tol

    def test_precision_scaling(self):
        # raising precision by 64 bits shrinks the discrepancy by >= 2^32;
        # a quadrature-only symbol keeps the error tied to the working tol
        from framedet.symbols import CircleSymbol

        def run(bits):
            prec = PrecisionConfig(bits)
            with prec.workprec():
                T = mp.mpf(1)
                sym = CircleSymbol(lambda z: mp.exp(T / 2 * (z + 1 / z)),
                                   annulus=(0.0, mp.inf), even=True, label="quad")
                rep = verify_bordered_toeplitz(sym, [sym.shift(-2)], 4, "Q", prec)
                return abs(mp.mpc(rep.abs_discrepancy))

        d_lo, d_hi = run(192), run(256)
        assert d_hi < d_lo / mp.mpf(2) ** 32


class TestFramed:
    def test_hankel_trivial(self):
        mu = LineMeasure.from_moments([Fraction(3)])
        rep = verify_framed_hankel(mu, None, None, [[Fraction(2)]], 2, PREC,
                                   points=([Fraction(4)], [Fraction(5)]))
        # K_0 = 1/mu_0: both sides mu_0 a - 1
        assert rep.passed and rep.lhs == 3 * 2 - 4 ** 0 * 5 ** 0

    def test_toeplitz_lebesgue_point(self):
        rep = verify_framed_toeplitz(constant_symbol(Fraction(1)), None, None,
                                     [[Fraction(7)]], 3, PREC,
                                     points=([Fraction(0)], [Fraction(0)]))
        assert rep.passed and rep.lhs == Fraction(7) - 1

    def test_hankel_exact_m2(self):
        rng = random.Random(31)
        mu = nondegenerate_measure(rng, 6, PREC)
        nus = [random_discrete_measure(rng, 3) for _ in range(2)]
        etas = [random_discrete_measure(rng, 3) for _ in range(2)]
        A = [[random_rational(rng) for _ in range(2)] for _ in range(2)]
        rep = verify_framed_hankel(mu, nus, etas, A, 6, PREC)
        assert rep.passed and rep.abs_discrepancy == 0

    def test_reversed_variants_exact(self):
        rng = random.Random(32)
        mu = nondegenerate_measure(rng, 4, PREC)
        for rx, ry in ((True, False), (False, True), (True, True)):
            rep = verify_framed_hankel(mu, None, None, [[Fraction(1, 2)]], 4, PREC,
                                       points=([Fraction(5, 2)], [Fraction(7, 3)]),
                                       reversed_x=rx, reversed_y=ry)
            assert rep.passed and rep.abs_discrepancy == 0

    def test_toeplitz_exact_m2(self):
        rng = random.Random(33)
        sym = nondegenerate_symbol(rng, 6, PREC)
        psis = [random_laurent_symbol(rng, 2) for _ in range(2)]
        etas = [random_laurent_symbol(rng, 2) for _ in range(2)]
        A = [[random_rational(rng) for _ in range(2)] for _ in range(2)]
        rep = verify_framed_toeplitz(sym, psis, etas, A, 5, PREC)
        assert rep.passed and rep.abs_discrepancy == 0

    def test_ctrw_framed_float(self):
        with PREC.workprec():
            ctrw = make_ctrw_symbol(1, prec=PREC)
            rep = verify_framed_toeplitz(ctrw, [ctrw.shift(-1)], [ctrw.shift(2)],
                                         [[ctrw.fourier(3, PREC)]], 5, PREC)
            assert rep.passed


class TestDodgsonRecursion:
    def test_exact(self):
        rng = random.Random(41)
        sym = nondegenerate_symbol(rng, 5, PREC)
        rep = verify_dodgson_bordered_recursion(sym, random_laurent_symbol(rng, 2),
                                                random_laurent_symbol(rng, 2), 3, PREC)
        assert rep.passed and rep.abs_discrepancy == 0

    def test_ctrw_float(self):
        with PREC.workprec():
            ctrw = make_ctrw_symbol(1, prec=PREC)
            rep = verify_dodgson_bordered_recursion(ctrw, ctrw.shift(-1),
                                                    ctrw.shift(-2), 6, PREC)
            assert rep.passed

    def test_equal_borders_zero(self):
        with PREC.workprec():
            ctrw = make_ctrw_symbol(1, prec=PREC)
            psi = ctrw.shift(-1)
            rep = verify_dodgson_bordered_recursion(ctrw, psi, psi, 5, PREC)
            assert rep.passed
            # equal border columns force the two-bordered determinant to zero
            from framedet.determinants import bordered_toeplitz_det
            lhs = bordered_toeplitz_det(ctrw, [psi, psi], 5, PREC).value
            assert abs(lhs) < 10 * PREC.target_tol


class TestSemiframedKernel:
    def test_zero_borders(self):
        with PREC.workprec():
            ctrw = make_ctrw_symbol(1, prec=PREC)
            zero = constant_symbol(0)
            a = ctrw.fourier(2, PREC)
            rep = verify_semiframed_kernel(ctrw, zero, zero, a, 2, PREC,
                                           check_cd_form=False)
            assert rep.passed
            assert abs(mp.mpc(rep.lhs) - mp.mpc(a)) < 10 * PREC.target_tol

    def test_ctrw_with_cd_form(self):
        with PREC.workprec():
            ctrw = make_ctrw_symbol(1, prec=PREC)
            rep = verify_semiframed_kernel(ctrw, ctrw.shift(-1), ctrw.shift(2),
                                           ctrw.fourier(3, PREC), 3, PREC,
                                           check_cd_form=True, quad_points=96)
            assert rep.passed and "CD form agrees" in rep.note

    def test_rational_exact(self):
        rng = random.Random(51)
        sym = nondegenerate_symbol(rng, 7, PREC)
        rep = verify_semiframed_kernel(sym, random_laurent_symbol(rng, 2),
                                       random_laurent_symbol(rng, 2),
                                       random_rational(rng), 4, PREC,
                                       check_cd_form=False)
        assert rep.passed and rep.abs_discrepancy == 0


class TestZXRelations:
    def test_lebesgue_skipped(self):
        rep = verify_zx_relations(constant_symbol(Fraction(1)), 3, [mp.mpf("0.4")], PREC)
        assert rep.passed and "skipped" in rep.note

    def test_ctrw(self):
        with PREC.workprec():
            ctrw = make_ctrw_symbol(1, prec=PREC)
            rep = verify_zx_relations(ctrw, 3, [mp.mpf("0.4"), mp.mpf("2.5")], PREC)
            assert rep.passed
            assert mp.mpf(rep.abs_discrepancy) < 100 * PREC.target_tol


class TestSuiteRunner:
    def test_small_suite_all_pass(self):
        reports = run_identity_suite("all", instances=5, seed=3, prec=PREC)
        assert reports and all(r.passed for r in reports)

    def test_exact_mode_discrepancies_are_zero(self):
        reports = run_identity_suite("framed_hankel", instances=8, seed=4, prec=PREC)
        assert all(r.mode == "rational" and r.abs_discrepancy == 0 for r in reports)

    def test_report_json_round_trip(self):
        reports = run_identity_suite("dodgson", instances=2, seed=5, prec=PREC)
        js = reports[0].to_json()
        assert js["passed"] and js["identity"] == "dodgson"
