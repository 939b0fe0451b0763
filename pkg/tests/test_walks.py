from fractions import Fraction

import mpmath as mp
import pytest

from framedet.numerics import PrecisionConfig
from framedet.walks import (PathEnsembleSpec, SpecError, lgv_count, lgv_probability,
                            oracle_enumerate_rw, oracle_width_cdf, width_cdf_rw)

PREC = PrecisionConfig(192)


class TestSpec:
    def test_rejects_nonincreasing(self):
        with pytest.raises(SpecError):
            PathEnsembleSpec("discrete", (2, 1), (1, 2), 1)

    def test_rejects_unknown_kind(self):
        with pytest.raises(SpecError):
            PathEnsembleSpec("levy", (1,), (1,), 1)

    def test_wanderer_split(self):
        spec = PathEnsembleSpec("discrete", (-1, 2, 3, 6), (-2, 2, 3, 5), 2)
        assert spec.wanderer_split() == (1, 1)


class TestLGV:
    def test_single_walker_count(self):
        assert lgv_count(PathEnsembleSpec("discrete", (0,), (0,), 1)) == 2

    def test_single_walker_T2(self):
        assert lgv_count(PathEnsembleSpec("discrete", (3,), (3,), 2)) == 6

    def test_pair_enumeration(self):
        spec = PathEnsembleSpec("discrete", (1, 2), (1, 2), 1)
        assert lgv_count(spec) == oracle_enumerate_rw(spec) == 3

    def test_probability_normalization(self):
        spec = PathEnsembleSpec("discrete", (1, 2), (1, 2), 1)
        assert lgv_probability(spec) == Fraction(3, 2 ** 4)

    def test_continuous_single_walker(self):
        with PREC.workprec():
            val = lgv_probability(PathEnsembleSpec("continuous", (0,), (0,), 1), PREC)
            assert abs(val - mp.exp(-1) * mp.besseli(0, 1)) < mp.mpf(10) ** (-40)

    def test_unreachable_is_zero(self):
        # parity forbids odd displacement in even time
        spec = PathEnsembleSpec("discrete", (0,), (3,), 1)
        assert lgv_count(spec) == 0 == oracle_enumerate_rw(spec)


class TestWidthCdfDiscrete:
    def test_single_walker_cdf_one(self):
        spec = PathEnsembleSpec("discrete", (0,), (0,), 2)
        for M in (1, 2, 5):
            assert width_cdf_rw(spec, M, "direct", PREC) == 1

    @pytest.mark.parametrize("starts,ends,T", [
        ((1, 2), (1, 2), 1),
        ((1, 2), (1, 2), 2),
        ((1, 2), (1, 2), 3),
        ((1, 2), (0, 3), 2),
        ((1, 2, 3), (1, 2, 3), 2),
        ((1, 2, 3), (1, 2, 4), 3),
    ])
    def test_direct_matches_enumeration_all_M(self, starts, ends, T):
        spec = PathEnsembleSpec("discrete", starts, ends, T)
        for M in range(1, 2 * T + 4):
            assert width_cdf_rw(spec, M, "direct", PREC) == oracle_width_cdf(spec, M)

    def test_forms_agree_exactly(self):
        spec = PathEnsembleSpec("discrete", (1, 2, 3), (1, 2, 5), 3)
        for M in (1, 2, 3, 4, 5):
            d = width_cdf_rw(spec, M, "direct", PREC)
            assert d == width_cdf_rw(spec, M, "bordered", PREC)
            assert d == width_cdf_rw(spec, M, "framed", PREC)

    def test_framed_with_bottom_and_top_wanderers(self):
        spec = PathEnsembleSpec("discrete", (-1, 2, 3, 6), (-2, 2, 3, 5), 2)
        for M in (2, 3, 4, 5):
            d = width_cdf_rw(spec, M, "direct", PREC)
            assert d == width_cdf_rw(spec, M, "framed", PREC)
            assert d == oracle_width_cdf(spec, M)

    def test_bordered_with_bottom_wanderer(self):
        spec = PathEnsembleSpec("discrete", (1, 2, 3), (0, 2, 3), 2)
        for M in (1, 2, 3, 4):
            assert width_cdf_rw(spec, M, "direct", PREC) == \
                width_cdf_rw(spec, M, "bordered", PREC) == oracle_width_cdf(spec, M)

    def test_cdf_monotone_and_limits(self):
        spec = PathEnsembleSpec("discrete", (1, 2), (1, 3), 3)
        vals = [width_cdf_rw(spec, M, "direct", PREC) for M in range(1, 9)]
        assert all(0 <= v <= 1 for v in vals)
        assert all(b >= a for a, b in zip(vals, vals[1:]))
        assert vals[-1] == 1

    def test_impossible_endpoints_raise(self):
        spec = PathEnsembleSpec("discrete", (0, 1), (0, 3), 1)
        assert lgv_count(spec) == 0
        with pytest.raises(SpecError):
            width_cdf_rw(spec, 2, "direct", PREC)


class TestWidthCdfContinuous:
    def test_forms_agree(self):
        spec = PathEnsembleSpec("continuous", (1, 2, 3), (1, 2, 4), 1)
        with PREC.workprec():
            d = width_cdf_rw(spec, 5, "direct", PREC)
            b = width_cdf_rw(spec, 5, "bordered", PREC)
            f = width_cdf_rw(spec, 5, "framed", PREC)
            assert abs(d - b) < 10 * PREC.target_tol
            assert abs(d - f) < 10 * PREC.target_tol
            assert 0 < d <= 1

    def test_large_M_tends_to_one(self):
        spec = PathEnsembleSpec("continuous", (1, 2), (1, 2), 1)
        with PREC.workprec():
            assert abs(width_cdf_rw(spec, 40, "direct", PREC) - 1) < PREC.target_tol * 100


class TestEnumerationOracle:
    def test_cap_enforced(self):
        with pytest.raises(SpecError):
            oracle_enumerate_rw(PathEnsembleSpec("discrete", tuple(range(1, 6)),
                                                 tuple(range(1, 6)), 3))

    def test_width_bound_zero_when_too_tight(self):
        spec = PathEnsembleSpec("discrete", (1, 2, 3), (1, 2, 3), 1)
        assert oracle_enumerate_rw(spec, width_bound=4) == 0
