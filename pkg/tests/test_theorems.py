import json
import math

import pytest

from hqz import (AffineBallMap, ComplexSeries, HypothesisViolation,
                 PlanarHarmonicMap, fuzz_search, map_from_json,
                 phi_of_m, random_qr_map, v_norm, verify_T1, verify_T2,
                 verify_T2_strip, verify_T3_affine)

# frozen oracle values (midpoint Riemann sums at 2^22 nodes, closed forms
# where available): the sharp-bound margin of f = 1 + z/2 at r = 1, K = 1
MARGIN_1_PLUS_HALF_Z = 0.0010937220471223


def analytic(*coeffs) -> PlanarHarmonicMap:
    return PlanarHarmonicMap(g=ComplexSeries(tuple(coeffs)),
                             h=ComplexSeries.zero())


class TestVerifyT2:
    def test_degenerate_constant_equality(self, q):
        rep = verify_T2(analytic(1.0), 1.0, q, K=1.0)
        assert rep.lhs == 1.0
        assert rep.rhs == 1.0
        assert rep.margin == 0.0

    def test_one_plus_half_z_margin(self, q):
        rep = verify_T2(analytic(1.0, 0.5), 1.0, q, K=1.0)
        assert rep.margin == pytest.approx(MARGIN_1_PLUS_HALF_Z, abs=1e-9)
        assert rep.margin > 0.0
        # order of magnitude of the leading 3 b^4 / 64 term at b = 1/2
        assert rep.margin < 0.005

    def test_corpus_margins_nonnegative(self, q_fast):
        for seed in range(15):
            for k in (0.0, 0.3):
                m = random_qr_map(seed, k)
                rep = verify_T2(m, 1.0, q_fast)
                assert rep.margin >= -1e-9

    def test_hypothesis_checks(self, q):
        with pytest.raises(HypothesisViolation):
            verify_T2(analytic(1.0 + 0.5j, 0.5), 1.0, q, K=1.0)  # v(0) != 0
        with pytest.raises(HypothesisViolation):
            verify_T2(analytic(0.5, 1.0), 1.0, q, K=1.0)  # u sign-changes

    def test_v_norm_bounded_by_f_norm(self, q_fast):
        for seed in range(8):
            m = random_qr_map(seed, 0.3)
            rep = verify_T2(m, 1.0, q_fast)
            assert v_norm(m, 1.0, q_fast) <= rep.lhs + 1e-9

    def test_report_serialization_deterministic(self, q):
        a = verify_T2(analytic(1.0, 0.5), 1.0, q, K=1.0).to_json()
        b = verify_T2(analytic(1.0, 0.5), 1.0, q, K=1.0).to_json()
        assert a == b
        payload = json.loads(a)
        assert payload["theorem_id"] == "T2"


class TestVerifyT2Strip:
    def test_n1_value(self, q):
        rep = verify_T2_strip(1, q)
        assert rep.lhs == pytest.approx(2.0 / math.pi, abs=1e-9)
        assert rep.margin > 0.0

    def test_n32_gap(self, q):
        rep = verify_T2_strip(32, q)
        assert 0.0 < rep.margin < 2.0 / 33.0

    def test_strictly_increasing_in_n(self, q):
        values = [verify_T2_strip(n, q).lhs for n in range(1, 17)]
        assert all(b > a for a, b in zip(values[:-1], values[1:]))
        assert all(v < 1.0 for v in values)


class TestVerifyT1:
    def test_constant_map_margin_positive(self, q):
        rep = verify_T1(analytic(0.5), 1.0, 0.01, q, K=1.0)
        assert rep.lhs == pytest.approx(0.5, abs=1e-12)
        assert rep.params["zygmund_plus"] == 0.0
        assert rep.margin > 0.0

    def test_margin_with_estimated_constant(self, q_fast):
        for seed in range(5):
            m = random_qr_map(seed, 0.3)
            rep = verify_T1(m, 1.0, 1.0, q_fast)
            assert rep.margin >= -rep.quad_error
            assert rep.params["empirical_constant"] > 0.0

    def test_k1_corpus_reports_classical_envelope(self, q_fast):
        # analytic corpus: empirical constant stays far below the classical
        # envelope A ||u log+ u|| + B with A = 1, B = 6 pi e
        for seed in range(5):
            m = random_qr_map(seed, 0.0)
            rep = verify_T1(m, 1.0, 1.0, q_fast, K=1.0)
            envelope = rep.params["zygmund_plus"] + 6.0 * math.pi * math.e
            assert rep.lhs <= envelope

    def test_rejects_nonpositive_constant(self, q):
        with pytest.raises(HypothesisViolation):
            verify_T1(analytic(0.5), 1.0, 0.0, q, K=1.0)


class TestVerifyT3:
    def test_constant_family_zero_margin(self, q):
        rep = verify_T3_affine(AffineBallMap(n=3, c=1.0, a=0.0), q)
        assert rep.lhs == pytest.approx(0.0, abs=1e-14)
        assert rep.rhs == pytest.approx(0.0, abs=1e-14)

    def test_m2_family(self, q):
        rep = verify_T3_affine(AffineBallMap(n=3, c=4.0, a=2.0), q)
        assert rep.lhs == pytest.approx(1.0 / 3.0, abs=1e-8)
        assert rep.rhs == pytest.approx(phi_of_m(2.0), abs=1e-8)
        assert rep.margin >= 0.0

    def test_gap_closes_as_m_grows(self, q):
        gaps = [verify_T3_affine(AffineBallMap(n=3, c=m * m, a=m), q).margin
                for m in (2.0, 5.0, 10.0, 20.0)]
        assert all(b < a for a, b in zip(gaps[:-1], gaps[1:]))
        assert all(g >= 0.0 for g in gaps)

    @pytest.mark.parametrize("n", range(2, 9))
    def test_small_a_ratio_near_limit(self, n, q):
        rep = verify_T3_affine(AffineBallMap(n=n, c=1.0, a=0.01), q)
        assert rep.margin >= -1e-9
        ratio = rep.lhs / rep.params["Y"]
        assert abs(ratio - (n - 1)) / (n - 1) < 0.05

    def test_hypothesis_guard(self, q):
        with pytest.raises(HypothesisViolation):
            verify_T3_affine(AffineBallMap(n=3, c=1.0, a=1.5), q)


class TestFuzzSearch:
    def test_empty_corpus_vacuous(self, q_fast):
        s = fuzz_search(0, 0.3, 16, q_fast)
        assert s.seeds == 0
        assert s.worst_margin == math.inf
        assert s.best_ratio == 0.0
        assert s.witness == ""

    def test_singleton_matches_direct_verification(self, q_fast):
        s = fuzz_search(1, 0.0, 16, q_fast)
        m = random_qr_map(0, 0.0)
        rep = verify_T2(m, 1.0, q_fast)
        assert s.worst_margin == pytest.approx(rep.margin, abs=1e-12)
        assert s.best_ratio == pytest.approx(rep.lhs / rep.rhs, abs=1e-12)

    def test_deterministic(self, q_fast):
        a = fuzz_search(5, 0.3, 16, q_fast)
        b = fuzz_search(5, 0.3, 16, q_fast)
        assert a == b

    def test_witness_round_trips(self, q_fast):
        s = fuzz_search(5, 0.3, 16, q_fast)
        m = map_from_json(s.witness)
        assert m.k_declared == 0.3

    def test_margins_nonnegative_small_corpus(self, q_fast):
        s = fuzz_search(25, 0.5, 16, q_fast)
        assert s.worst_margin >= -1e-9
        assert s.best_ratio <= 1.0 + 1e-12

    def test_analytic_corpus_ratio_approaches_one(self, q_fast):
        # near-constant draws with u(0) near the entropy maximizer push the
        # two sides together, so the tightness probe closes in on 1
        s = fuzz_search(50, 0.0, 16, q_fast)
        assert s.best_ratio <= 1.0 + 1e-12
        assert s.best_ratio > 0.99
