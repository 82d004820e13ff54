"""Deformed digamma and log-gamma evaluation with certified truncation error.

QK family (base q in (0,1), step k > 0), all series over n >= 1:

    psi_qk(t)      = -ln(1-q)/k + ln(q) * sum q^(n*t) / (1 - q^(n*k))
    psi_qk'(t)     =  (ln q)^2  * sum n * q^(n*t) / (1 - q^(n*k))
    ln Gamma_qk(t) =  sum_{n>=0} [ln(1 - q^((n+1)k)) - ln(1 - q^(t+nk))]
                      - (t/k - 1) * ln(1-q)

psi_qk is the exact t-derivative of ln Gamma_qk (expand each product factor
geometrically and swap the double sum), Gamma_qk(k) = 1, and q -> 1-
recovers the k-digamma (ln k + psi(t/k)) / k.

PQ family (integer p >= 1), finite sums over n = 1..p:

    psi_pq(t)      = ln[p]_q + ln(q) * sum q^(n*t) / (1 - q^n)
    psi_pq'(t)     = (ln q)^2 * sum n * q^(n*t) / (1 - q^n)
    ln Gamma_pq(t) = t*ln[p]_q + sum_{n=1..p} ln[n]_q - sum_{n=0..p} ln[t+n]_q

with the q-bracket [x]_q = (1 - q^x) / (1 - q).

Truncation control for the infinite series: with r = q^t, the factor
1/(1 - q^(n*k)) is at most 1/(1 - q^k) for n >= 1, so the tail after N
terms is dominated by an explicit geometric (or arithmetico-geometric)
expression.  Evaluation stops at the first N whose majorant falls below
the requested tolerance, never on raw term size.  All powers of q are
formed in log space, so large t cannot underflow the products.
"""

from __future__ import annotations

import math

import numpy as np

from ._series import geometric_terms_needed, sum_terms
from .errors import DomainError, TruncationNotConverged
from .params import DEFAULT_TOL, DeformParams, EvalResult, Family, Tolerance

__all__ = [
    "q_bracket",
    "ln_q_bracket",
    "psi_qk",
    "psi_qk_prime",
    "psi_pq",
    "psi_pq_prime",
    "ln_gamma_qk",
    "ln_gamma_pq",
    "psi_qk_limit",
    "psi_pq_limit",
]

# Relative headroom on every certified majorant so the reported bound still
# dominates the true tail after double rounding of the bound expression.
_SAFETY = 1.0 + 1e-12


def _check_t(t: float) -> float:
    t = float(t)
    if not (t > 0.0) or not math.isfinite(t):
        raise DomainError(f"t={t!r} must be a positive finite real")
    return t


def q_bracket(p: int, q: float) -> float:
    """q-analogue of the integer p: [p]_q = (1 - q^p) / (1 - q)."""
    if int(p) != p or p < 1:
        raise DomainError(f"p={p!r} must be an integer >= 1")
    if not (0.0 < q < 1.0):
        raise DomainError(f"q={q!r} must lie strictly inside (0,1)")
    ln_q = math.log(q)
    return math.expm1(p * ln_q) / math.expm1(ln_q)


def ln_q_bracket(x: float, ln_q: float) -> float:
    """ln [x]_q for real x > 0, given ln(q); exact for q^x underflowing to 0."""
    return math.log1p(-math.exp(x * ln_q)) - math.log1p(-math.exp(ln_q))


def psi_qk_limit(params: DeformParams) -> float:
    """Supremum of psi_qk: the t -> infinity limit -ln(1-q)/k."""
    params.require(Family.QK)
    return -math.log1p(-params.q) / params.k


def psi_pq_limit(params: DeformParams) -> float:
    """Supremum of psi_pq: the t -> infinity limit ln[p]_q."""
    params.require(Family.PQ)
    return ln_q_bracket(params.p, math.log(params.q))


def psi_qk(t: float, params: DeformParams, tol: Tolerance = DEFAULT_TOL) -> EvalResult:
    """(q,k)-digamma at t with a certified truncation bound.

    Tail majorant after N terms: |ln q| * r^(N+1) / ((1-q^k)(1-r)) with
    r = q^t.
    """
    t = _check_t(t)
    params.require(Family.QK)
    q, k = params.q, params.k
    ln_q = math.log(q)
    lead = -math.log1p(-q) / k

    ln_r = t * ln_q
    r = math.exp(ln_r)
    if r == 0.0:  # every series term underflows; limit value is exact
        return EvalResult(lead, 0.0, 0)
    one_minus_r = -math.expm1(ln_r)
    one_minus_qk = -math.expm1(k * ln_q)
    if one_minus_r <= 0.0:
        raise TruncationNotConverged(
            f"series ratio q^t indistinguishable from 1 at t={t!r}", math.inf, 0
        )

    coeff = _SAFETY * -ln_q / (one_minus_qk * one_minus_r)
    n = geometric_terms_needed(ln_r, coeff, tol.abs_tol, tol.n_max)
    if n > tol.n_max:
        best = coeff * math.exp((tol.n_max + 1) * ln_r)
        raise TruncationNotConverged(
            f"tail bound stuck at {best:.3e} > {tol.abs_tol:.3e} after {tol.n_max} terms",
            best,
            tol.n_max,
        )

    s = sum_terms(lambda m: np.exp(m * ln_r) / (-np.expm1(m * (k * ln_q))), 1, n)
    tail = coeff * math.exp((n + 1) * ln_r)
    return EvalResult(lead + ln_q * s, tail, n)


def _prime_tail(ln_r: float, one_minus_r: float, coeff: float, n: int) -> float:
    # coeff * sum_{m>N} m r^m = coeff * r^(N+1) ((N+1)(1-r) + r) / (1-r)^2
    r = math.exp(ln_r)
    return coeff * math.exp((n + 1) * ln_r) * ((n + 1) * one_minus_r + r) / (one_minus_r * one_minus_r)


def psi_qk_prime(t: float, params: DeformParams, tol: Tolerance = DEFAULT_TOL) -> EvalResult:
    """Derivative of the (q,k)-digamma; value is nonnegative by construction.

    Tail majorant after N terms: (ln q)^2/(1-q^k) * r^(N+1)((N+1)(1-r)+r)/(1-r)^2.
    """
    t = _check_t(t)
    params.require(Family.QK)
    q, k = params.q, params.k
    ln_q = math.log(q)

    ln_r = t * ln_q
    r = math.exp(ln_r)
    if r == 0.0:
        return EvalResult(0.0, 0.0, 0)
    one_minus_r = -math.expm1(ln_r)
    one_minus_qk = -math.expm1(k * ln_q)
    if one_minus_r <= 0.0:
        raise TruncationNotConverged(
            f"series ratio q^t indistinguishable from 1 at t={t!r}", math.inf, 0
        )

    coeff = _SAFETY * ln_q * ln_q / one_minus_qk
    # geometric seed, then widen until the arithmetico-geometric majorant fits
    n = geometric_terms_needed(ln_r, coeff / one_minus_r, tol.abs_tol, tol.n_max)
    n = min(n, tol.n_max)
    while _prime_tail(ln_r, one_minus_r, coeff, n) > tol.abs_tol:
        if n >= tol.n_max:
            raise TruncationNotConverged(
                f"tail bound stuck above {tol.abs_tol:.3e} after {tol.n_max} terms",
                _prime_tail(ln_r, one_minus_r, coeff, tol.n_max),
                tol.n_max,
            )
        overshoot = _prime_tail(ln_r, one_minus_r, coeff, n) / tol.abs_tol
        n = min(tol.n_max, n + max(1, math.ceil(math.log(overshoot) / -ln_r)))

    s = sum_terms(lambda m: m * np.exp(m * ln_r) / (-np.expm1(m * (k * ln_q))), 1, n)
    tail = _prime_tail(ln_r, one_minus_r, coeff, n)
    return EvalResult(ln_q * ln_q * s, tail, n)


def ln_gamma_qk(t: float, params: DeformParams, tol: Tolerance = DEFAULT_TOL) -> EvalResult:
    """Log of the (q,k)-gamma function, evaluated entirely in log space.

    Tail certified via |ln(1-x)| <= x/(1-x) on both product tails:
    after N factor pairs the remainder is at most
    q^((N+1)k)/(1-q^k)^2 + q^(t+Nk)/((1-q^t)(1-q^k)).
    """
    t = _check_t(t)
    params.require(Family.QK)
    q, k = params.q, params.k
    ln_q = math.log(q)
    lead = -(t / k - 1.0) * math.log1p(-q)

    ln_s = k * ln_q
    one_minus_qk = -math.expm1(ln_s)
    one_minus_qt = -math.expm1(t * ln_q)
    if one_minus_qk <= 0.0 or one_minus_qt <= 0.0:
        raise TruncationNotConverged(
            f"product ratio indistinguishable from 1 at t={t!r}, k={k!r}", math.inf, 0
        )

    def tail_at(n: int) -> float:
        piece_num = math.exp((n + 1) * ln_s) / (one_minus_qk * one_minus_qk)
        piece_den = math.exp(t * ln_q + n * ln_s) / (one_minus_qt * one_minus_qk)
        return _SAFETY * (piece_num + piece_den)

    n = geometric_terms_needed(ln_s, 1.0 / (one_minus_qk * one_minus_qk), 0.5 * tol.abs_tol, tol.n_max)
    n = min(n, tol.n_max)
    while tail_at(n) > tol.abs_tol:
        if n >= tol.n_max:
            raise TruncationNotConverged(
                f"tail bound stuck above {tol.abs_tol:.3e} after {tol.n_max} factor pairs",
                tail_at(tol.n_max),
                tol.n_max,
            )
        n = min(tol.n_max, n + max(1, math.ceil(math.log(tail_at(n) / tol.abs_tol) / -ln_s)))

    # numerator exponent written as k + m*k so that t = k cancels bitwise
    s = sum_terms(
        lambda m: np.log1p(-np.exp((k + m * k) * ln_q)) - np.log1p(-np.exp((t + m * k) * ln_q)),
        0,
        n - 1,
    )
    return EvalResult(s + lead, tail_at(n), n)


def psi_pq(t: float, params: DeformParams) -> EvalResult:
    """(p,q)-digamma at t: an exact finite sum (tail bound 0)."""
    t = _check_t(t)
    params.require(Family.PQ)
    q, p = params.q, params.p
    ln_q = math.log(q)
    s = sum_terms(lambda m: np.exp(m * (t * ln_q)) / (-np.expm1(m * ln_q)), 1, p)
    return EvalResult(ln_q_bracket(p, ln_q) + ln_q * s, 0.0, p)


def psi_pq_prime(t: float, params: DeformParams) -> EvalResult:
    """Derivative of the (p,q)-digamma: exact finite sum, nonnegative."""
    t = _check_t(t)
    params.require(Family.PQ)
    q, p = params.q, params.p
    ln_q = math.log(q)
    s = sum_terms(lambda m: m * np.exp(m * (t * ln_q)) / (-np.expm1(m * ln_q)), 1, p)
    return EvalResult(ln_q * ln_q * s, 0.0, p)


def ln_gamma_pq(t: float, params: DeformParams) -> EvalResult:
    """Log of the (p,q)-gamma function: exact finite computation in log space."""
    t = _check_t(t)
    params.require(Family.PQ)
    q, p = params.q, params.p
    ln_q = math.log(q)
    ln1mq = math.log1p(-math.exp(ln_q))
    factorial_part = sum_terms(lambda m: np.log1p(-np.exp(m * ln_q)), 1, p) - p * ln1mq
    shifted_part = sum_terms(lambda m: np.log1p(-np.exp((t + m) * ln_q)), 0, p) - (p + 1) * ln1mq
    value = t * ln_q_bracket(p, ln_q) + factorial_part - shifted_part
    return EvalResult(value, 0.0, p)
