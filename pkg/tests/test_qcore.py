"""Core evaluation: values against independent oracles, tails, domain checks."""

from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from qdigamma import (
    DeformParams,
    DomainError,
    SeriesKind,
    Tolerance,
    TruncationNotConverged,
    brute_force_series,
    ln_gamma_pq,
    ln_gamma_qk,
    psi_pq,
    psi_pq_prime,
    psi_qk,
    psi_qk_limit,
    psi_qk_prime,
    q_bracket,
)

from conftest import brute_ln_gamma_qk, brute_psi_pq, brute_psi_qk, brute_psi_qk_prime

# Values frozen from the plain-loop oracles in conftest (20000 terms).
PSI_QK_1_HALF_K1 = -0.4205290343560458      # brute_psi_qk(1, 0.5, 1)
PSI_QK_2_HALF_K1 = 0.27261814620389946      # brute_psi_qk(2, 0.5, 1)
PSI_QK_1_HALF_K2 = -0.47521995082163354     # brute_psi_qk(1, 0.5, 2)
PSI_QK_PRIME_1_HALF_K1 = 1.3183793521481786  # brute_psi_qk_prime(1, 0.5, 1)


class TestQBracket:
    def test_p1_is_one_for_any_q(self):
        for q in (0.1, 0.5, 0.9, 0.999):
            assert q_bracket(1, q) == pytest.approx(1.0, abs=1e-15)

    def test_direct_arithmetic(self):
        assert q_bracket(3, 0.5) == pytest.approx(1.75, abs=1e-15)
        assert q_bracket(10, 0.9) == pytest.approx((1 - 0.9 ** 10) / 0.1, rel=1e-15)

    def test_domain(self):
        with pytest.raises(DomainError):
            q_bracket(0, 0.5)
        with pytest.raises(DomainError):
            q_bracket(2, 1.0)
        with pytest.raises(DomainError):
            q_bracket(2, -0.1)

    @given(q=st.floats(0.01, 0.99), p=st.integers(1, 200))
    @settings(max_examples=60, deadline=None)
    def test_positive_and_increasing_in_p(self, q, p):
        v = q_bracket(p, q)
        assert v > 0.0
        if q ** p > 1e-10:  # increment q^p still representable against v
            assert q_bracket(p + 1, q) > v
        else:
            assert q_bracket(p + 1, q) >= v


class TestPsiQK:
    def test_large_t_approaches_limit(self, qk_half):
        res = psi_qk(100.0, qk_half)
        assert res.value == pytest.approx(-math.log(0.5), abs=1e-13)

    def test_oracle_values(self):
        for (t, q, k), expected in [
            ((1.0, 0.5, 1.0), PSI_QK_1_HALF_K1),
            ((2.0, 0.5, 1.0), PSI_QK_2_HALF_K1),
            ((1.0, 0.5, 2.0), PSI_QK_1_HALF_K2),
        ]:
            res = psi_qk(t, DeformParams.qk(q, k))
            assert res.value == pytest.approx(expected, abs=5e-13)
            # re-derive the frozen constant from the plain-loop oracle
            assert brute_psi_qk(t, q, k) == pytest.approx(expected, abs=1e-14)

    def test_result_contract(self, qk_half):
        tol = Tolerance(abs_tol=1e-10, n_max=100000)
        res = psi_qk(0.7, qk_half, tol)
        assert res.tail_bound <= tol.abs_tol
        assert 1 <= res.terms_used <= tol.n_max

    def test_domain_errors(self, qk_half):
        with pytest.raises(DomainError):
            psi_qk(0.0, qk_half)
        with pytest.raises(DomainError):
            psi_qk(-1.0, qk_half)
        with pytest.raises(DomainError):
            psi_qk(1.0, DeformParams.pq(2, 0.5))
        with pytest.raises(DomainError):
            DeformParams.qk(q=1.0, k=1.0)
        with pytest.raises(DomainError):
            DeformParams.qk(q=0.5, k=0.0)

    def test_not_converged_reports_best_bound(self):
        params = DeformParams.qk(q=0.99, k=1.0)
        with pytest.raises(TruncationNotConverged) as exc_info:
            psi_qk(0.5, params, Tolerance(abs_tol=1e-13, n_max=50))
        assert exc_info.value.best_bound > 1e-13
        assert exc_info.value.terms_used == 50

    @given(
        q=st.floats(0.05, 0.9),
        k=st.floats(0.3, 3.0),
        s=st.floats(0.1, 4.0),
        dt=st.floats(0.01, 3.0),
    )
    @settings(max_examples=60, deadline=None)
    def test_nondecreasing_and_below_limit(self, q, k, s, dt):
        params = DeformParams.qk(q, k)
        lo = psi_qk(s, params)
        hi = psi_qk(s + dt, params)
        assert lo.value <= hi.value + 2.0 * (lo.tail_bound + hi.tail_bound)
        assert hi.value <= psi_qk_limit(params)


class TestPsiQKPrime:
    def test_oracle_value(self, qk_half):
        res = psi_qk_prime(1.0, qk_half)
        assert res.value == pytest.approx(PSI_QK_PRIME_1_HALF_K1, abs=5e-13)
        assert brute_psi_qk_prime(1.0, 0.5, 1.0) == pytest.approx(PSI_QK_PRIME_1_HALF_K1, abs=1e-14)

    @given(q=st.floats(0.05, 0.9), k=st.floats(0.3, 3.0), t=st.floats(0.05, 50.0))
    @settings(max_examples=60, deadline=None)
    def test_nonnegative(self, q, k, t):
        assert psi_qk_prime(t, DeformParams.qk(q, k)).value >= 0.0

    def test_matches_central_difference(self):
        rng = random.Random(2024)
        h = 1e-5
        for _ in range(25):
            q, k, t = rng.uniform(0.2, 0.9), rng.uniform(0.3, 3.0), rng.uniform(0.2, 3.0)
            params = DeformParams.qk(q, k)
            fd = (psi_qk(t + h, params).value - psi_qk(t - h, params).value) / (2 * h)
            assert psi_qk_prime(t, params).value == pytest.approx(fd, abs=1e-6)

    def test_second_order_decay(self):
        # high-curvature points where the h^2 truncation term dominates
        tight = Tolerance(abs_tol=1e-15)
        for q, k, t in [(0.5, 1.0, 0.4), (0.8, 0.5, 0.6), (0.7, 2.0, 0.3)]:
            params = DeformParams.qk(q, k)
            d = psi_qk_prime(t, params, tight).value

            def disc(h):
                fd = (psi_qk(t + h, params, tight).value - psi_qk(t - h, params, tight).value) / (2 * h)
                return abs(d - fd)

            d1, d2 = disc(1e-4), disc(5e-5)
            assert d1 >= 1e-9, "probe point lost its curvature"
            assert 3.0 <= d1 / d2 <= 5.0
            # a decade in h is two orders in the discrepancy
            assert 50.0 <= d1 / disc(1e-5) <= 200.0


class TestPsiPQ:
    def test_single_term_closed_form(self):
        # [1]_q = 1 so the lead vanishes and the one term is q/(1-q)
        res = psi_pq(1.0, DeformParams.pq(1, 0.5))
        assert res.value == pytest.approx(math.log(0.5), abs=1e-15)
        assert res.tail_bound == 0.0
        assert res.terms_used == 1

    def test_two_term_example(self):
        expected = math.log(1.5) + math.log(0.5) * (1.0 + 1.0 / 3.0)
        res = psi_pq(1.0, DeformParams.pq(2, 0.5))
        assert res.value == pytest.approx(expected, abs=1e-15)

    def test_three_term_oracle(self):
        res = psi_pq(2.0, DeformParams.pq(3, 0.9))
        assert res.value == pytest.approx(brute_psi_pq(2.0, 3, 0.9), abs=1e-14)

    def test_prime_single_term(self):
        res = psi_pq_prime(1.0, DeformParams.pq(1, 0.5))
        assert res.value == pytest.approx(math.log(0.5) ** 2, abs=1e-15)

    @given(q=st.floats(0.05, 0.95), p=st.integers(1, 60), t=st.floats(0.05, 20.0))
    @settings(max_examples=60, deadline=None)
    def test_prime_positive(self, q, p, t):
        assert psi_pq_prime(t, DeformParams.pq(p, q)).value > 0.0

    def test_matches_central_difference(self):
        # 1e-8 needs the h^2 curvature term small, hence t bounded away from 0
        rng = random.Random(77)
        h = 1e-5
        for _ in range(25):
            q, p, t = rng.uniform(0.2, 0.9), rng.randint(1, 40), rng.uniform(0.5, 3.0)
            params = DeformParams.pq(p, q)
            fd = (psi_pq(t + h, params).value - psi_pq(t - h, params).value) / (2 * h)
            assert psi_pq_prime(t, params).value == pytest.approx(fd, abs=1e-8)

    def test_monotone_pairs_zero_slack(self):
        rng = random.Random(31)
        for _ in range(50):
            q, p = rng.uniform(0.05, 0.95), rng.randint(1, 40)
            s = rng.uniform(0.1, 5.0)
            t = s + rng.uniform(0.001, 3.0)
            params = DeformParams.pq(p, q)
            assert psi_pq(s, params).value <= psi_pq(t, params).value
            assert psi_pq_prime(s, params).value >= psi_pq_prime(t, params).value


class TestLnGammaQK:
    def test_value_one_at_k(self):
        for q, k in [(0.5, 1.0), (0.5, 2.0), (0.3, 0.7), (0.9, 3.5)]:
            res = ln_gamma_qk(k, DeformParams.qk(q, k))
            assert abs(res.value) <= 1e-12

    def test_q_gamma_of_two_is_one(self):
        # Gamma_{q,1}(2) = [1]_q = 1, i.e. log value 0
        res = ln_gamma_qk(2.0, DeformParams.qk(0.5, 1.0))
        assert abs(res.value) <= 1e-13
        assert brute_ln_gamma_qk(2.0, 0.5, 1.0) == pytest.approx(0.0, abs=1e-14)

    def test_central_difference_gives_psi(self):
        rng = random.Random(5)
        h = 1e-5
        for _ in range(20):
            q, k, t = rng.uniform(0.2, 0.9), rng.uniform(0.3, 3.0), rng.uniform(0.3, 4.0)
            params = DeformParams.qk(q, k)
            fd = (ln_gamma_qk(t + h, params).value - ln_gamma_qk(t - h, params).value) / (2 * h)
            assert fd == pytest.approx(psi_qk(t, params).value, abs=1e-6)

    def test_oracle_value(self):
        res = ln_gamma_qk(1.3, DeformParams.qk(0.6, 1.7))
        assert res.value == pytest.approx(brute_ln_gamma_qk(1.3, 0.6, 1.7), abs=1e-12)


class TestLnGammaPQ:
    def test_telescoped_value(self):
        # Gamma_pq(1) = [p]_q / [p+1]_q by telescoping
        res = ln_gamma_pq(1.0, DeformParams.pq(2, 0.5))
        assert res.value == pytest.approx(math.log(6.0 / 7.0), abs=1e-14)

    def test_p1_closed_form(self):
        for q in (0.2, 0.5, 0.8):
            res = ln_gamma_pq(1.0, DeformParams.pq(1, q))
            assert res.value == pytest.approx(math.log(1.0 / (1.0 + q)), abs=1e-14)

    def test_telescope_general_p(self):
        for p in range(1, 21):
            res = ln_gamma_pq(1.0, DeformParams.pq(p, 0.7))
            expected = math.log(q_bracket(p, 0.7) / q_bracket(p + 1, 0.7))
            assert res.value == pytest.approx(expected, abs=1e-12)

    def test_derivative_is_shifted_series_not_psi_pq(self):
        # The finite digamma sum and the log-gamma product are two distinct
        # conventions: d/dt ln Gamma_pq equals
        # ln[p]_q + ln q * sum_{n=0..p} q^(t+n)/(1 - q^(t+n)),
        # which differs from psi_pq's sum over q^(nt)/(1-q^n) for p finite.
        h = 1e-5
        for p, q, t in [(1, 0.5, 1.0), (3, 0.7, 0.8), (8, 0.4, 2.0)]:
            params = DeformParams.pq(p, q)
            fd = (ln_gamma_pq(t + h, params).value - ln_gamma_pq(t - h, params).value) / (2 * h)
            ln_q = math.log(q)
            shifted = math.log(q_bracket(p, q)) + ln_q * math.fsum(
                math.exp((t + n) * ln_q) / -math.expm1((t + n) * ln_q) for n in range(0, p + 1)
            )
            assert fd == pytest.approx(shifted, abs=1e-8)
            gap_predicted = abs(shifted - psi_pq(t, params).value)
            assert abs(fd - psi_pq(t, params).value) == pytest.approx(gap_predicted, abs=1e-8)


class TestTailSoundness:
    def test_partial_sum_gap_below_bound(self):
        rng = random.Random(99)
        for _ in range(40):
            q, k, t = rng.uniform(0.1, 0.9), rng.uniform(0.3, 3.0), rng.uniform(0.2, 4.0)
            params = DeformParams.qk(q, k)
            tol = Tolerance(abs_tol=10.0 ** rng.uniform(-12, -6))
            res = psi_qk(t, params, tol)
            n = max(res.terms_used, 1)
            lo = brute_force_series(SeriesKind.PSI_QK, t, params, n)
            hi = brute_force_series(SeriesKind.PSI_QK, t, params, 4 * n)
            assert abs(lo - hi) <= res.tail_bound + 1e-15

            res_p = psi_qk_prime(t, params, tol)
            n = max(res_p.terms_used, 1)
            lo = brute_force_series(SeriesKind.PSI_QK_PRIME, t, params, n)
            hi = brute_force_series(SeriesKind.PSI_QK_PRIME, t, params, 4 * n)
            assert abs(lo - hi) <= res_p.tail_bound + 1e-15

    def test_ln_gamma_tail(self):
        rng = random.Random(7)
        for _ in range(15):
            q, k, t = rng.uniform(0.1, 0.9), rng.uniform(0.3, 3.0), rng.uniform(0.2, 4.0)
            params = DeformParams.qk(q, k)
            res = ln_gamma_qk(t, params)
            n = max(res.terms_used, 1)
            lo = brute_force_series(SeriesKind.LNGAMMA_QK, t, params, n)
            hi = brute_force_series(SeriesKind.LNGAMMA_QK, t, params, 4 * n)
            assert abs(lo - hi) <= res.tail_bound + 1e-15
