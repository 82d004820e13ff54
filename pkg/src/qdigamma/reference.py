"""Independent oracles: classical, k- and p-analogue digammas, plain partial sums.

These routines deliberately share no truncation or stopping machinery with
the certified evaluators in ``qcore``; they exist so tests and limit scans
can cross-check values against a second, simpler route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError
from .params import DeformParams, Family

__all__ = [
    "OracleMethod",
    "OracleValue",
    "SeriesKind",
    "classical_digamma",
    "k_digamma_ref",
    "p_digamma_ref",
    "brute_force_series",
]


class OracleMethod(str, Enum):
    ASYMPTOTIC_SHIFT = "asymptotic_shift"
    BRUTE_SUM = "brute_sum"


@dataclass(frozen=True)
class OracleValue:
    value: float
    method: OracleMethod


# Asymptotic coefficients B_{2m}/(2m) for m = 1..6; with the recurrence shift
# to x >= 10 the first omitted term is below 1e-15, comfortably inside the
# 1e-12 accuracy contract.
_SHIFT_THRESHOLD = 10.0
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
)


def classical_digamma(t: float) -> OracleValue:
    """psi(t) to <= 1e-12 absolute error.

    Shifts the argument above 10 with psi(t+1) = psi(t) + 1/t, then applies
    the asymptotic expansion ln x - 1/(2x) - sum B_{2m}/(2m x^{2m}) through
    the 1/x^12 term.
    """
    x = float(t)
    if not (x > 0.0) or not math.isfinite(x):
        raise DomainError(f"t={t!r} must be a positive finite real")
    shift = 0.0
    while x < _SHIFT_THRESHOLD:
        shift -= 1.0 / x
        x += 1.0
    y = 1.0 / (x * x)
    poly = 0.0
    for c in reversed(_STIRLING):
        poly = y * (c + poly)
    value = shift + math.log(x) - 0.5 / x - poly
    return OracleValue(value, OracleMethod.ASYMPTOTIC_SHIFT)


def k_digamma_ref(t: float, k: float) -> OracleValue:
    """k-digamma (ln k + psi(t/k)) / k, from Gamma_k(t) = k^(t/k - 1) Gamma(t/k).

    This is the q -> 1- limit target of psi_qk.
    """
    if not (k > 0.0) or not math.isfinite(k):
        raise DomainError(f"k={k!r} must be a positive finite real")
    return OracleValue((math.log(k) + classical_digamma(t / k).value) / k, OracleMethod.ASYMPTOTIC_SHIFT)


def p_digamma_ref(t: float, p: int) -> OracleValue:
    """p-digamma ln p - sum_{n=0..p} 1/(t+n), from Gamma_p(t) = p! p^t / (t...(t+p)).

    This is the q -> 1- limit target used for the PQ family.
    """
    if int(p) != p or p < 1:
        raise DomainError(f"p={p!r} must be an integer >= 1")
    if not (t > 0.0) or not math.isfinite(t):
        raise DomainError(f"t={t!r} must be a positive finite real")
    harmonic = math.fsum(1.0 / (t + n) for n in range(0, int(p) + 1))
    return OracleValue(math.log(p) - harmonic, OracleMethod.BRUTE_SUM)


class SeriesKind(str, Enum):
    PSI_QK = "psi_qk"
    PSI_QK_PRIME = "psi_qk_prime"
    LNGAMMA_QK = "ln_gamma_qk"


def brute_force_series(kind: SeriesKind, t: float, params: DeformParams, n_terms: int) -> float:
    """Plain partial sum of a QK series to exactly n_terms, no early stopping.

    Used to validate the certified tail bounds: the difference between the
    partial sums at N and 4N must stay below the bound reported at N.
    """
    if n_terms < 1:
        raise DomainError(f"n_terms={n_terms!r} must be >= 1")
    if not (t > 0.0) or not math.isfinite(t):
        raise DomainError(f"t={t!r} must be a positive finite real")
    params.require(Family.QK)
    q, k = params.q, params.k
    ln_q = math.log(q)
    n = np.arange(1, n_terms + 1, dtype=np.float64)
    if kind is SeriesKind.PSI_QK:
        s = float(np.sum(np.exp(n * (t * ln_q)) / (-np.expm1(n * (k * ln_q)))))
        return -math.log1p(-q) / k + ln_q * s
    if kind is SeriesKind.PSI_QK_PRIME:
        s = float(np.sum(n * np.exp(n * (t * ln_q)) / (-np.expm1(n * (k * ln_q)))))
        return ln_q * ln_q * s
    if kind is SeriesKind.LNGAMMA_QK:
        m = n - 1.0  # product index runs from 0
        s = float(
            np.sum(np.log1p(-np.exp((k + m * k) * ln_q)) - np.log1p(-np.exp((t + m * k) * ln_q)))
        )
        return s - (t / k - 1.0) * math.log1p(-q)
    raise DomainError(f"unknown series kind {kind!r}")
