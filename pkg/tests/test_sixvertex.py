import random

import mpmath as mp
import pytest

from framedet.numerics import PrecisionConfig
from framedet.symbols import SixVertexWeights
from framedet.sixvertex import (CoincidentParameterError, SixVertexSpec, ik_partition,
                                oracle_enumerate_sixvertex, sixv_partition,
                                sixv_refined_op_form)

PREC = PrecisionConfig(256)


def disordered(t=0, gamma=None):
    with PREC.workprec():
        return SixVertexWeights("disordered", t, gamma if gamma is not None else mp.pi / 3, PREC)


class TestEnumeration:
    def test_state_counts_are_asm_numbers(self):
        w = disordered()
        counts = [oracle_enumerate_sixvertex(SixVertexSpec(w, n), PREC, unit_weights=True)
                  for n in (1, 2, 3, 4)]
        assert counts == [1, 2, 7, 42]

    def test_n1_single_state_weight_c(self):
        with PREC.workprec():
            w = disordered()
            val = oracle_enumerate_sixvertex(SixVertexSpec(w, 1), PREC)
            assert abs(val - w.c()) < PREC.target_tol

    def test_cap(self):
        with pytest.raises(ValueError):
            oracle_enumerate_sixvertex(SixVertexSpec(disordered(), 5), PREC)


class TestIzerginKorepin:
    def test_n1_reduces_to_c(self):
        with PREC.workprec():
            w = disordered()
            spec = SixVertexSpec(w, 1, (mp.mpf("0.05"),), (mp.mpf("0.1"),))
            assert abs(ik_partition(spec, PREC) - w.c()) < 100 * PREC.target_tol

    @pytest.mark.parametrize("n", [2, 3])
    def test_matches_weighted_enumeration(self, n):
        rng = random.Random(100 + n)
        with PREC.workprec():
            w = disordered()
            for _ in range(5):
                chis = tuple(sorted(mp.mpf(rng.uniform(-0.2, 0.2)) for _ in range(n)))
                psis = tuple(sorted(mp.mpf(rng.uniform(-0.1, 0.3)) for _ in range(n)))
                spec = SixVertexSpec(w, n, chis, psis)
                Z = ik_partition(spec, PREC)
                E = oracle_enumerate_sixvertex(spec, PREC)
                assert abs(Z - E) / abs(Z) < mp.mpf(10) ** (-20)

    def test_permutation_symmetry(self):
        with PREC.workprec():
            w = disordered()
            chis = tuple(mp.mpf(v) for v in ("-0.15", "0.02", "0.11"))
            psis = tuple(mp.mpf(v) for v in ("0.07", "-0.03", "0.21"))
            Z1 = ik_partition(SixVertexSpec(w, 3, chis, psis), PREC)
            Z2 = ik_partition(SixVertexSpec(w, 3, (chis[2], chis[0], chis[1]), psis), PREC)
            Z3 = ik_partition(SixVertexSpec(w, 3, chis, (psis[1], psis[2], psis[0])), PREC)
            assert abs(Z1 - Z2) / abs(Z1) < mp.mpf(10) ** (-40)
            assert abs(Z1 - Z3) / abs(Z1) < mp.mpf(10) ** (-40)

    def test_coincident_rejected(self):
        with PREC.workprec():
            w = disordered()
            with pytest.raises(CoincidentParameterError):
                ik_partition(SixVertexSpec(w, 2, (mp.mpf(0), mp.mpf(0)),
                                           (mp.mpf("0.1"), mp.mpf("0.2"))), PREC)


class TestHomogeneous:
    def test_abc_point_counts(self):
        with PREC.workprec():
            w = disordered()
            for n, count in ((1, 1), (2, 2), (3, 7), (4, 42)):
                Z = sixv_partition(SixVertexSpec(w, n), "homogeneous", PREC)
                ratio = Z / (mp.sqrt(3) / 2) ** (n * n)
                assert abs(ratio - count) / count < mp.mpf(10) ** (-20)

    def test_n1_is_c(self):
        with PREC.workprec():
            w = disordered(t=mp.mpf("0.25"), gamma=mp.mpf("1.1"))
            Z = sixv_partition(SixVertexSpec(w, 1), "homogeneous", PREC)
            assert abs(Z - w.c()) < 100 * PREC.target_tol

    @pytest.mark.parametrize("phase,t,gamma", [
        ("disordered", "0.3", "1.2"),
        ("ferroelectric", "1.0", "0.4"),
        ("antiferroelectric", "0.2", "1.5"),
    ])
    def test_all_phases_vs_enumeration(self, phase, t, gamma):
        with PREC.workprec():
            w = SixVertexWeights(phase, mp.mpf(t), mp.mpf(gamma), PREC)
            for n in (2, 3, 4):
                Z = sixv_partition(SixVertexSpec(w, n), "homogeneous", PREC)
                E = oracle_enumerate_sixvertex(SixVertexSpec(w, n), PREC)
                assert abs(Z - E) / abs(Z) < mp.mpf(10) ** (-40)


class TestRefined:
    def test_refined_vs_partial_enumeration(self):
        with PREC.workprec():
            w = SixVertexWeights("disordered", mp.mpf("0.3"), mp.mpf("1.2"), PREC)
            xi = mp.mpf("0.17")
            for n in (2, 3, 4):
                Z = sixv_partition(SixVertexSpec(w, n, xi2=xi), "refined", PREC)
                spec_e = SixVertexSpec(w, n, tuple([0] * n),
                                       tuple([w.t] * (n - 1) + [mp.mpf(w.t) + xi]))
                E = oracle_enumerate_sixvertex(spec_e, PREC)
                assert abs(Z - E) / abs(Z) < mp.mpf(10) ** (-40)

    def test_refined_op_form_agrees(self):
        with PREC.workprec():
            w = SixVertexWeights("disordered", mp.mpf("0.3"), mp.mpf("1.2"), PREC)
            for n in (2, 3, 4):
                spec = SixVertexSpec(w, n, xi2=mp.mpf("0.17"))
                det_form = sixv_partition(spec, "refined", PREC)
                op_form = sixv_refined_op_form(spec, PREC)
                assert abs(det_form - op_form) / abs(det_form) < mp.mpf(10) ** (-40)

    def test_doubly_refined_vs_enumeration(self):
        with PREC.workprec():
            w = SixVertexWeights("disordered", mp.mpf("0.3"), mp.mpf("1.2"), PREC)
            xi1, xi2 = mp.mpf("0.11"), mp.mpf("0.17")
            for n in (2, 3, 4):
                Z = sixv_partition(SixVertexSpec(w, n, xi1=xi1, xi2=xi2),
                                   "doubly_refined", PREC)
                spec_e = SixVertexSpec(w, n, tuple([0] * (n - 1) + [-xi1]),
                                       tuple([w.t] * (n - 1) + [mp.mpf(w.t) + xi2]))
                E = oracle_enumerate_sixvertex(spec_e, PREC)
                assert abs(Z - E) / abs(Z) < mp.mpf(10) ** (-40)

    def test_small_xi_approaches_homogeneous(self):
        with PREC.workprec():
            w = SixVertexWeights("disordered", mp.mpf("0.3"), mp.mpf("1.2"), PREC)
            hom = sixv_partition(SixVertexSpec(w, 3), "homogeneous", PREC)
            prev = None
            for xi in (mp.mpf("0.01"), mp.mpf("0.001")):
                ref = sixv_partition(SixVertexSpec(w, 3, xi2=xi), "refined", PREC)
                gap = abs(ref - hom) / abs(hom)
                if prev is not None:
                    assert gap < prev
                prev = gap
            assert prev < mp.mpf(10) ** (-3)

    def test_zero_offset_rejected(self):
        with PREC.workprec():
            w = disordered(t=mp.mpf("0.1"))
            with pytest.raises(ValueError):
                sixv_partition(SixVertexSpec(w, 3, xi2=0), "refined", PREC)
