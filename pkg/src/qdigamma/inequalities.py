"""Ratio inequalities for deformed digammas and their grid verification.

For six positive constants (a, b, c, d, alpha, beta) with a + b*t <= c + d*t
and beta*d <= alpha*b, the ratio

    G(t) = psi(a + b*t)^alpha / psi(c + d*t)^beta

is nondecreasing on [0, inf) wherever both psi values are positive, which
yields G(0) <= G(t) <= G(1) on [0,1] and G(t) >= G(1) beyond.  The engine
here checks those bounds, the underlying cross product

    alpha*b * psi(c+dt) * psi'(a+bt)  -  beta*d * psi(a+bt) * psi'(c+dt) >= 0,

and plain monotonicity of psi and psi', over deterministic seeded grids.
Margins are signed (>= 0 means the inequality holds) and every comparison
carries a slack covering truncation and rounding, so a reported violation
can never be a numerical artifact.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .errors import DomainError, NoPositiveRegion, NoRootInBracket, PositivityViolated, TruncationNotConverged
from .params import DEFAULT_TOL, DeformParams, EvalResult, Family, Tolerance
from .qcore import psi_pq, psi_pq_prime, psi_pq_limit, psi_qk, psi_qk_prime

__all__ = [
    "RatioSpec",
    "GridSpec",
    "SpecVerdict",
    "VerificationReport",
    "Suite",
    "validate_spec",
    "ratio_G",
    "ratio_H",
    "check_lemma_cross",
    "verify_bounds",
    "find_positive_threshold",
    "make_verification_grid",
]

SCHEMA_VERSION = "1"

# Base inequality slack; the effective per-point slack is
# max(EPS_BASE, 10 * propagated tail bounds) for ratio/cross checks and
# exactly 2 * (sum of tail bounds) for the raw monotonicity checks.
EPS_BASE = 1e-9

# Smallest argument at which a bracketing scan will evaluate psi before
# concluding the function is already positive everywhere reachable.
T_FLOOR = 1e-6


@dataclass(frozen=True)
class RatioSpec:
    """Constants defining a ratio G/H; invariants checked on construction."""

    a: float
    b: float
    c: float
    d: float
    alpha: float
    beta: float

    def __post_init__(self):
        for name in ("a", "b", "c", "d", "alpha", "beta"):
            v = getattr(self, name)
            if not (v > 0.0) or not math.isfinite(v):
                raise DomainError(f"{name}={v!r} must be positive and finite")
        if self.a > self.c:
            raise DomainError(f"need a <= c, got a={self.a!r}, c={self.c!r}")
        if self.a + self.b > self.c + self.d:
            raise DomainError("need a + b <= c + d for ordering on [0,1]")
        if self.beta * self.d > self.alpha * self.b:
            raise DomainError("need beta*d <= alpha*b")

    def lower_arg(self, t: float) -> float:
        return self.a + self.b * t

    def upper_arg(self, t: float) -> float:
        return self.c + self.d * t

    def as_dict(self) -> dict:
        return {
            "a": self.a, "b": self.b, "c": self.c, "d": self.d,
            "alpha": self.alpha, "beta": self.beta,
        }


@dataclass(frozen=True)
class GridSpec:
    """Deterministic sampling plan: a t-grid plus (params, spec) pairs."""

    t_min: float
    t_max: float
    t_count: int
    pairs: tuple
    seed: int

    def __post_init__(self):
        if self.t_count < 2:
            raise DomainError(f"t_count={self.t_count!r} must be >= 2")
        if not (self.t_min < self.t_max):
            raise DomainError("need t_min < t_max")

    def t_values(self) -> list:
        return [float(x) for x in np.linspace(self.t_min, self.t_max, self.t_count)]

    def as_dict(self) -> dict:
        pairs = []
        for params, spec in self.pairs:
            p = {"family": params.family.value, "q": params.q}
            if params.family is Family.QK:
                p["k"] = params.k
            else:
                p["p"] = params.p
            pairs.append({"params": p, "spec": spec.as_dict()})
        return {
            "t_min": self.t_min, "t_max": self.t_max, "t_count": self.t_count,
            "seed": self.seed, "pairs": pairs,
        }


@dataclass(frozen=True)
class SpecVerdict:
    valid: bool
    reasons: tuple
    psi_lower_left: float
    psi_upper_left: float


@dataclass
class VerificationReport:
    suite: str
    grid: GridSpec
    passed: bool
    worst_violation: float
    worst_point: Optional[dict]
    checks_run: int
    skipped: int = 0
    errors: tuple = ()
    epsilon: float = EPS_BASE

    def as_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "grid": self.grid.as_dict(),
            "passed": self.passed,
            "worst_violation": self.worst_violation,
            "worst_point": self.worst_point,
            "checks_run": self.checks_run,
            "skipped": self.skipped,
            "errors": list(self.errors),
            "epsilon": self.epsilon,
        }


class Suite(str, Enum):
    QK_THEOREM = "qk-theorem"
    QK_COROLLARY = "qk-corollary"
    PQ_THEOREM = "pq-theorem"
    PQ_COROLLARY = "pq-corollary"
    LEMMA_CROSS = "lemma-cross"
    MONOTONE_PSI = "monotone-psi"
    MONOTONE_PSI_PRIME = "monotone-psi-prime"


def _psi(t: float, params: DeformParams, tol: Tolerance) -> EvalResult:
    if params.family is Family.QK:
        return psi_qk(t, params, tol)
    return psi_pq(t, params)


def _psi_prime(t: float, params: DeformParams, tol: Tolerance) -> EvalResult:
    if params.family is Family.QK:
        return psi_qk_prime(t, params, tol)
    return psi_pq_prime(t, params)


def validate_spec(
    spec: RatioSpec,
    params: DeformParams,
    t_range: tuple = (0.0, 1.0),
    tol: Tolerance = DEFAULT_TOL,
) -> SpecVerdict:
    """Check the ratio preconditions over [t_min, t_max].

    Positivity is checked at the left endpoints only: psi is nondecreasing,
    so psi(a + b*t_min) > tail and psi(c + d*t_min) > tail cover the whole
    range.  The argument ordering is linear, so both endpoints suffice.
    """
    t_lo, t_hi = float(t_range[0]), float(t_range[1])
    if t_lo < 0.0 or t_hi < t_lo:
        raise DomainError(f"bad t_range {t_range!r}")
    reasons = []
    for t_end in (t_lo, t_hi):
        if spec.lower_arg(t_end) > spec.upper_arg(t_end):
            reasons.append(f"argument ordering fails at t={t_end:g}")
    lo = _psi(spec.lower_arg(t_lo), params, tol)
    hi = _psi(spec.upper_arg(t_lo), params, tol)
    if lo.value - lo.tail_bound <= 0.0:
        reasons.append(
            f"psi({spec.lower_arg(t_lo):g}) = {lo.value:.6g} not certainly positive"
        )
    if hi.value - hi.tail_bound <= 0.0:
        reasons.append(
            f"psi({spec.upper_arg(t_lo):g}) = {hi.value:.6g} not certainly positive"
        )
    return SpecVerdict(not reasons, tuple(reasons), lo.value, hi.value)


def _ratio(spec: RatioSpec, t: float, params: DeformParams, tol: Tolerance) -> EvalResult:
    if t < 0.0:
        raise DomainError(f"t={t!r} must be nonnegative")
    x = _psi(spec.lower_arg(t), params, tol)
    y = _psi(spec.upper_arg(t), params, tol)
    x_low = x.value - x.tail_bound
    y_low = y.value - y.tail_bound
    if x_low <= 0.0 or y_low <= 0.0:
        raise PositivityViolated(
            f"psi not certainly positive at t={t:g} "
            f"(psi_num={x.value:.6g}, psi_den={y.value:.6g}, {params.label()})"
        )
    # exp of the log expression: no overflow for large exponents, and the
    # truncation error propagates linearly through the logs
    value = math.exp(spec.alpha * math.log(x.value) - spec.beta * math.log(y.value))
    rel = spec.alpha * x.tail_bound / x_low + spec.beta * y.tail_bound / y_low
    return EvalResult(value, value * rel, x.terms_used + y.terms_used)


def ratio_G(spec: RatioSpec, t: float, params: DeformParams, tol: Tolerance = DEFAULT_TOL) -> EvalResult:
    """QK-family ratio psi_qk(a+bt)^alpha / psi_qk(c+dt)^beta."""
    params.require(Family.QK)
    return _ratio(spec, t, params, tol)


def ratio_H(spec: RatioSpec, t: float, params: DeformParams) -> EvalResult:
    """PQ-family ratio psi_pq(a+bt)^alpha / psi_pq(c+dt)^beta (zero tail)."""
    params.require(Family.PQ)
    return _ratio(spec, t, params, DEFAULT_TOL)


def _cross(spec: RatioSpec, t: float, params: DeformParams, tol: Tolerance):
    """Cross margin and its propagated numerical slack."""
    if t < 0.0:
        raise DomainError(f"t={t!r} must be nonnegative")
    x = _psi(spec.lower_arg(t), params, tol)
    y = _psi(spec.upper_arg(t), params, tol)
    if x.value - x.tail_bound <= 0.0 or y.value - y.tail_bound <= 0.0:
        raise PositivityViolated(
            f"psi not certainly positive at t={t:g} ({params.label()})"
        )
    xp = _psi_prime(spec.lower_arg(t), params, tol)
    yp = _psi_prime(spec.upper_arg(t), params, tol)
    ab, bd = spec.alpha * spec.b, spec.beta * spec.d
    margin = ab * y.value * xp.value - bd * x.value * yp.value
    slack = ab * (abs(y.value) * xp.tail_bound + xp.value * y.tail_bound) + bd * (
        abs(x.value) * yp.tail_bound + yp.value * x.tail_bound
    )
    return margin, slack


def check_lemma_cross(spec: RatioSpec, t: float, params: DeformParams, tol: Tolerance = DEFAULT_TOL) -> float:
    """Signed margin alpha*b*psi(c+dt)*psi'(a+bt) - beta*d*psi(a+bt)*psi'(c+dt).

    Nonnegative whenever the precondition (argument ordering, exponent
    condition, positivity) holds; it is the numerator of d/dt ln G times
    psi(a+bt)*psi(c+dt).
    """
    margin, _ = _cross(spec, t, params, tol)
    return margin


def _eps_for(slack: float) -> float:
    return max(EPS_BASE, 10.0 * slack)


def verify_bounds(suite, grid: GridSpec, tol: Tolerance = DEFAULT_TOL) -> VerificationReport:
    """Run one inequality suite over every grid point.

    Signed margin convention: margin >= 0 means the inequality holds at the
    point.  Specs failing their preconditions are counted as skipped, never
    as failures; evaluation errors at individual points are recorded.
    The report is deterministic given the grid.
    """
    suite = Suite(suite)
    t_vals = grid.t_values()
    checks_run = 0
    skipped = 0
    errors = []
    worst = math.inf
    worst_point = None
    violated = False

    def record(margin: float, eps_pt: float, point: dict):
        nonlocal checks_run, worst, worst_point, violated
        checks_run += 1
        if margin < worst:
            worst = margin
            worst_point = point
        if margin < -eps_pt:
            violated = True

    ratio_suites = {Suite.QK_THEOREM, Suite.QK_COROLLARY, Suite.PQ_THEOREM, Suite.PQ_COROLLARY}

    for i, (params, spec) in enumerate(grid.pairs):
        try:
            if suite in ratio_suites or suite is Suite.LEMMA_CROSS:
                lo = min(grid.t_min, 1.0) if suite in (Suite.QK_COROLLARY, Suite.PQ_COROLLARY) else grid.t_min
                verdict = validate_spec(spec, params, (lo, grid.t_max), tol)
                if not verdict.valid:
                    skipped += 1
                    continue

            if suite in (Suite.QK_THEOREM, Suite.PQ_THEOREM):
                g_lo = _ratio(spec, t_vals[0], params, tol)
                g_hi = _ratio(spec, t_vals[-1], params, tol)
                for t in t_vals:
                    g_t = _ratio(spec, t, params, tol)
                    record(g_t.value - g_lo.value, _eps_for(g_t.tail_bound + g_lo.tail_bound),
                           {"pair_index": i, "t": t, "check": "lower"})
                    record(g_hi.value - g_t.value, _eps_for(g_hi.tail_bound + g_t.tail_bound),
                           {"pair_index": i, "t": t, "check": "upper"})
            elif suite in (Suite.QK_COROLLARY, Suite.PQ_COROLLARY):
                g_one = _ratio(spec, 1.0, params, tol)
                for t in t_vals:
                    g_t = _ratio(spec, t, params, tol)
                    record(g_t.value - g_one.value, _eps_for(g_t.tail_bound + g_one.tail_bound),
                           {"pair_index": i, "t": t, "check": "corollary"})
            elif suite is Suite.LEMMA_CROSS:
                for t in t_vals:
                    margin, slack = _cross(spec, t, params, tol)
                    record(margin, _eps_for(slack), {"pair_index": i, "t": t, "check": "cross"})
            elif suite is Suite.MONOTONE_PSI:
                vals = [_psi(t, params, tol) for t in t_vals]
                for j in range(len(vals) - 1):
                    s_res, t_res = vals[j], vals[j + 1]
                    record(t_res.value - s_res.value, 2.0 * (s_res.tail_bound + t_res.tail_bound),
                           {"pair_index": i, "s": t_vals[j], "t": t_vals[j + 1], "check": "psi-nondecreasing"})
            elif suite is Suite.MONOTONE_PSI_PRIME:
                vals = [_psi_prime(t, params, tol) for t in t_vals]
                for j in range(len(vals) - 1):
                    s_res, t_res = vals[j], vals[j + 1]
                    record(s_res.value - t_res.value, 2.0 * (s_res.tail_bound + t_res.tail_bound),
                           {"pair_index": i, "s": t_vals[j], "t": t_vals[j + 1], "check": "psi-prime-nonincreasing"})
        except (PositivityViolated, TruncationNotConverged) as exc:
            errors.append(f"pair {i}: {type(exc).__name__}: {exc}")

    if checks_run == 0:
        worst = 0.0
    return VerificationReport(
        suite=suite.value,
        grid=grid,
        passed=not violated and not errors,
        worst_violation=worst,
        worst_point=worst_point,
        checks_run=checks_run,
        skipped=skipped,
        errors=tuple(errors),
        epsilon=EPS_BASE,
    )


def find_positive_threshold(params: DeformParams, tol: Tolerance = DEFAULT_TOL) -> float:
    """Root t0 of psi = 0, located by bracketing and bisection.

    psi is nondecreasing with a negative small-t regime, so the root is
    unique; every argument above t0 satisfies the positivity precondition.
    Bisection runs to 1e-12 argument width.

    Raises NoPositiveRegion when psi never becomes positive (PQ with p = 1,
    where the supremum ln[1]_q = 0) and NoRootInBracket when psi is already
    positive at the smallest evaluable argument.
    """
    if params.family is Family.PQ and psi_pq_limit(params) <= 0.0:
        raise NoPositiveRegion(
            f"psi_pq stays negative for {params.label()}: supremum ln[p]_q <= 0"
        )

    def f(t: float) -> float:
        return _psi(t, params, tol).value

    hi = max(1.0, params.k) if params.family is Family.QK else 1.0
    while f(hi) <= 0.0:
        hi *= 2.0
        if hi > 1e9:
            raise NoPositiveRegion(f"psi never positive up to t=1e9 for {params.label()}")
    lo = hi / 2.0
    while f(lo) > 0.0:
        lo /= 2.0
        if lo < T_FLOOR:
            raise NoRootInBracket(
                f"psi already positive at the argument floor {T_FLOOR:g} for {params.label()}",
                floor=T_FLOOR,
            )
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if f(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _sample_params(rng: random.Random, family: Family) -> DeformParams:
    q = rng.uniform(0.1, 0.9)
    if family is Family.QK:
        return DeformParams.qk(q=q, k=rng.uniform(0.3, 3.0))
    return DeformParams.pq(p=rng.randint(2, 30), q=q)


def make_verification_grid(
    family,
    n_specs: int,
    t_count: int,
    seed: int,
    t_min: float = 0.0,
    t_max: float = 1.0,
    tol: Tolerance = DEFAULT_TOL,
) -> GridSpec:
    """Sample n_specs valid (params, spec) pairs, reproducibly from the seed.

    Arguments are placed above each parameter set's positivity threshold, so
    the preconditions hold by construction.  When t_max > 1 the slopes are
    sampled with d >= b so the argument ordering holds on the whole range.
    The first two pairs exercise the exact boundary cases a=c, b=d,
    alpha=beta (ratio identically 1) and beta*d = alpha*b.
    """
    family = Family(family)
    rng = random.Random(f"{family.value}:{seed}:{n_specs}")
    full_range = t_max > 1.0
    pairs = []
    while len(pairs) < n_specs:
        params = _sample_params(rng, family)
        try:
            t0 = find_positive_threshold(params, tol)
        except NoRootInBracket as exc:
            t0 = exc.floor
        except (NoPositiveRegion, TruncationNotConverged):
            continue
        a = t0 + 0.1 + rng.uniform(0.0, 4.9)
        idx = len(pairs)
        if idx == 0:
            # degenerate: identical numerator and denominator, margins all 0
            b = rng.uniform(0.1, 3.0)
            alpha = rng.uniform(0.25, 3.0)
            spec = RatioSpec(a=a, b=b, c=a, d=b, alpha=alpha, beta=alpha)
        elif idx == 1:
            # exponent condition tight: beta*d = alpha*b exactly
            b = rng.uniform(0.1, 3.0)
            alpha = rng.uniform(0.25, 3.0)
            spec = RatioSpec(a=a, b=b, c=a + rng.uniform(0.1, 2.0), d=b, alpha=alpha, beta=alpha)
        else:
            b = rng.uniform(0.05, 3.0)
            beta = rng.uniform(0.25, 2.0)
            if full_range:
                alpha = beta * rng.uniform(1.0, 2.5)
                d = b * (1.0 + rng.uniform(0.0, 0.999) * (alpha / beta - 1.0))
            else:
                alpha = rng.uniform(0.25, 3.0)
                d = b * (alpha / beta) * rng.uniform(0.05, 0.999)
            gap = max(0.0, b - d) + rng.uniform(0.01, 2.0)
            spec = RatioSpec(a=a, b=b, c=a + gap, d=d, alpha=alpha, beta=beta)
        pairs.append((params, spec))
    return GridSpec(t_min=t_min, t_max=t_max, t_count=t_count, pairs=tuple(pairs), seed=seed)
