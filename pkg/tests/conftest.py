"""Shared test-local oracles.

These are deliberately plain Python loops, independent of the package's
chunked/certified evaluation path, so they can serve as second routes for
the same quantities.
"""

from __future__ import annotations

import math

import pytest
from hypothesis import settings

settings.register_profile("deterministic", derandomize=True, deadline=None)
settings.load_profile("deterministic")


def brute_psi_qk(t: float, q: float, k: float, n_terms: int = 20000) -> float:
    """-ln(1-q)/k + ln q * sum_{n=1..N} q^(n t) / (1 - q^(n k)), plain loop."""
    ln_q = math.log(q)
    total = 0.0
    for n in range(1, n_terms + 1):
        total += math.exp(n * t * ln_q) / -math.expm1(n * k * ln_q)
    return -math.log1p(-q) / k + ln_q * total


def brute_psi_qk_prime(t: float, q: float, k: float, n_terms: int = 20000) -> float:
    ln_q = math.log(q)
    total = 0.0
    for n in range(1, n_terms + 1):
        total += n * math.exp(n * t * ln_q) / -math.expm1(n * k * ln_q)
    return ln_q * ln_q * total


def brute_psi_pq(t: float, p: int, q: float) -> float:
    ln_q = math.log(q)
    total = 0.0
    for n in range(1, p + 1):
        total += math.exp(n * t * ln_q) / -math.expm1(n * ln_q)
    return math.log((1.0 - q ** p) / (1.0 - q)) + ln_q * total


def brute_ln_gamma_qk(t: float, q: float, k: float, n_terms: int = 20000) -> float:
    ln_q = math.log(q)
    total = 0.0
    for n in range(n_terms):
        total += math.log1p(-math.exp((n + 1) * k * ln_q)) - math.log1p(-math.exp((t + n * k) * ln_q))
    return total - (t / k - 1.0) * math.log1p(-q)


@pytest.fixture
def qk_half():
    from qdigamma import DeformParams

    return DeformParams.qk(q=0.5, k=1.0)


def pytest_runtest_logreport(report):
    """One visible pass/fail line per acceptance criterion."""
    if report.when != "call" or "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    import re
    import sys

    m = re.search(r"test_criterion_(\d+)", report.nodeid)
    if m:
        status = "PASS" if report.passed else "FAIL"
        sys.stderr.write(f"[acceptance] criterion {m.group(1)}: {status}\n")
        sys.stderr.flush()
