"""Degeneration scans: identity at k=1, q->1- trends, p->infinity rate."""

from __future__ import annotations

import json
import math
import random

import pytest

from qdigamma import (
    DeformParams,
    DomainError,
    classical_digamma,
    limit_combined_pq,
    limit_k_to_1,
    limit_p_to_inf,
    limit_q_to_1_pq,
    limit_q_to_1_qk,
    p_digamma_ref,
    psi_pq,
    psi_qk,
)
from qdigamma._jsonfmt import dumps


class TestKToOneSubstitution:
    def test_random_points_within_allowance(self):
        rng = random.Random(13)
        for _ in range(30):
            t, q = rng.uniform(0.2, 5.0), rng.uniform(0.1, 0.9)
            check = limit_k_to_1(t, q)
            assert check.ok
            assert check.gap <= check.allowance

    def test_example_point(self):
        check = limit_k_to_1(2.0, 0.5)
        assert check.value == pytest.approx(psi_qk(2.0, DeformParams.qk(0.5, 1.0)).value, abs=1e-15)
        assert check.ok


class TestQToOneQK:
    def test_classical_target_at_k1(self):
        report = limit_q_to_1_qk(1.0, 1.0, j_max=5)
        assert report.target_values[0] == pytest.approx(classical_digamma(1.0).value, abs=1e-14)
        assert report.monotone_tail
        assert report.final_gap < 1e-2
        assert report.passed
        assert report.discrepancy is None

    def test_k_digamma_target_at_t_equals_k(self):
        k = 2.0
        report = limit_q_to_1_qk(k, k, j_max=5)
        expected = (math.log(k) + classical_digamma(1.0).value) / k
        assert report.target_values[0] == pytest.approx(expected, abs=1e-14)
        assert report.monotone_tail
        assert report.final_gap < 1e-2

    def test_gaps_shrink_with_j(self):
        report = limit_q_to_1_qk(1.5, 0.7, j_max=5)
        gaps = [g for _, g in report.sequence]
        assert all(b < a for a, b in zip(gaps, gaps[1:]))

    def test_j_max_validation(self):
        with pytest.raises(DomainError):
            limit_q_to_1_qk(1.0, 1.0, j_max=2)


class TestQToOnePQ:
    def test_p1_discrepancy_is_flagged(self):
        # the finite sum's own limit sits 0.5 away from the p-digamma target
        report = limit_q_to_1_pq(1.0, 1, j_max=5)
        assert not report.passed
        assert report.discrepancy is not None
        assert report.final_gap == pytest.approx(0.5, abs=1e-3)
        assert report.monotone_tail

    def test_large_p_passes_with_flag(self):
        report = limit_q_to_1_pq(1.0, 200, j_max=5)
        assert report.passed
        assert report.monotone_tail
        assert report.final_gap < 1e-2
        # the residual offset ~1/(p+1) is still reported, never absorbed
        assert report.discrepancy is not None
        assert report.target_values[0] == pytest.approx(p_digamma_ref(1.0, 200).value, abs=1e-14)


class TestPToInfinity:
    def test_example_scan(self):
        report = limit_p_to_inf(1.0, 0.5, [1, 2, 5, 10, 20])
        gaps = [g for _, g in report.sequence]
        assert all(b < a for a, b in zip(gaps, gaps[1:]))
        assert gaps[-1] < 1e-5
        assert report.passed
        assert report.cert_bounds is not None

    def test_gap_respects_certified_bound(self):
        rng = random.Random(3)
        for _ in range(10):
            t, q = rng.uniform(0.3, 3.0), rng.uniform(0.2, 0.8)
            report = limit_p_to_inf(t, q, [1, 2, 4, 8, 16, 32])
            for (_, gap), bound in zip(report.sequence, report.cert_bounds):
                assert gap <= bound + 1e-12

    def test_p1_gap_value(self):
        report = limit_p_to_inf(1.0, 0.5, [1, 2])
        expected = abs(
            psi_pq(1.0, DeformParams.pq(1, 0.5)).value
            - psi_qk(1.0, DeformParams.qk(0.5, 1.0)).value
        )
        assert report.sequence[0][1] == pytest.approx(expected, abs=1e-15)

    def test_p_list_validation(self):
        with pytest.raises(DomainError):
            limit_p_to_inf(1.0, 0.5, [5, 2])
        with pytest.raises(DomainError):
            limit_p_to_inf(1.0, 0.5, [])


class TestCombinedPQ:
    def test_trends_to_classical(self):
        report = limit_combined_pq(1.0, j_max=5)
        assert report.target_values[0] == pytest.approx(-0.5772156649015329, abs=1e-12)
        assert report.monotone_tail
        assert report.final_gap < 1e-4
        assert report.passed


class TestReportSerialization:
    def test_roundtrip(self):
        report = limit_p_to_inf(1.0, 0.5, [1, 2, 5])
        doc = json.loads(dumps(report.as_dict()))
        assert doc["schema_version"] == "1"
        assert doc["monotone_tail"] == report.monotone_tail
        assert doc["final_gap"] == report.final_gap
        assert len(doc["sequence"]) == 3
        assert len(doc["cert_bounds"]) == 3

    def test_substitution_roundtrip(self):
        doc = json.loads(dumps(limit_k_to_1(1.0, 0.5).as_dict()))
        assert doc["ok"] is True
        assert doc["gap"] <= doc["allowance"]
