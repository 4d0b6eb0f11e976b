"""Statistical verification: KS tests, hinge-based convex order, moment bounds.

P-values use the asymptotic Kolmogorov distribution, accurate for sample
sizes of a few dozen and up (documented regime n >= 35). Convex order
between one-dimensional laws is certified through the generating family of
hinge functions psi_a(x) = (x - a)_+ along a fixed direction; in higher
dimension a finite direction battery is a necessary-condition check, not a
full test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.special import betaln, kolmogorov
from scipy.stats import norm

from .measures import EmpiricalSample, GoverningMeasure, RngStream, describe
from .stickbreak import DEFAULT_POLICY, TruncationPolicy, stick_mean_draws
from .measures import draw_measure

__all__ = [
    "KSReport",
    "HingeCurve",
    "OrderReport",
    "MomentInequalityReport",
    "ks_one_sample",
    "ks_two_sample",
    "hinge_curve",
    "convex_order_check",
    "beta_identity_check",
    "beta_identity_second_moments",
    "moment_inequality_check",
]


@dataclass(frozen=True)
class KSReport:
    """Kolmogorov-Smirnov outcome; m is None for the one-sample test."""

    statistic: float
    n: int
    m: Optional[int]
    p_value: float
    level: float
    passed: bool

    def __str__(self):
        size = f"n={self.n}" if self.m is None else f"n={self.n},m={self.m}"
        return f"KS D={self.statistic:.5f} ({size}) p={self.p_value:.4g} passed={self.passed}"


def _values_1d(sample) -> np.ndarray:
    if isinstance(sample, EmpiricalSample):
        return sample.values()
    arr = np.asarray(sample, dtype=float)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise ValueError("expected a one-dimensional sample")
    return arr


def ks_one_sample(sample, cdf: Callable[[np.ndarray], np.ndarray], level: float = 0.001) -> KSReport:
    """Sup gap between the empirical CDF and a given CDF, with asymptotic p-value."""
    x = np.sort(_values_1d(sample))
    n = x.shape[0]
    if n < 10:
        raise ValueError("one-sample KS needs n >= 10")
    f = np.asarray(cdf(x), dtype=float)
    if not np.all(np.isfinite(f)):
        raise ValueError("cdf returned non-finite values")
    grid = np.arange(n, dtype=float)
    d_plus = np.max((grid + 1.0) / n - f)
    d_minus = np.max(f - grid / n)
    d = max(d_plus, d_minus)
    p = float(kolmogorov(math.sqrt(n) * d))
    return KSReport(statistic=float(d), n=n, m=None, p_value=p, level=level, passed=p > level)


def ks_two_sample(x, y, level: float = 0.001) -> KSReport:
    """Sup gap between two empirical CDFs, effective size nm/(n+m)."""
    xs = np.sort(_values_1d(x))
    ys = np.sort(_values_1d(y))
    n, m = xs.shape[0], ys.shape[0]
    if min(n, m) < 10:
        raise ValueError("two-sample KS needs n, m >= 10")
    pooled = np.concatenate([xs, ys])
    cdf_x = np.searchsorted(xs, pooled, side="right") / n
    cdf_y = np.searchsorted(ys, pooled, side="right") / m
    d = float(np.max(np.abs(cdf_x - cdf_y)))
    en = math.sqrt(n * m / (n + m))
    p = float(kolmogorov(en * d))
    return KSReport(statistic=d, n=n, m=m, p_value=p, level=level, passed=p > level)


@dataclass(frozen=True)
class HingeCurve:
    """Monte Carlo estimates of E[(<f, X> - a)_+] over a threshold grid."""

    direction: np.ndarray
    thresholds: np.ndarray
    estimates: np.ndarray
    half_widths: np.ndarray
    confidence: float
    n: int

    def __post_init__(self):
        est = np.asarray(self.estimates, dtype=float)
        if np.any(est < 0) or np.any(np.diff(est) > 1e-12):
            raise ValueError("hinge estimates must be nonnegative and non-increasing")


def hinge_curve(
    sample: EmpiricalSample,
    f=None,
    grid=None,
    confidence: float = 0.99,
) -> HingeCurve:
    """Hinge means along direction f at each threshold, with normal CIs."""
    if f is None:
        if sample.dimension != 1:
            raise ValueError("direction f is required for multivariate samples")
        f = np.ones(1)
    f = np.asarray(f, dtype=float).reshape(sample.dimension)
    proj = sample.draws @ f
    if grid is None:
        grid = np.quantile(proj, np.linspace(0.1, 0.9, 9))
    grid = np.sort(np.asarray(grid, dtype=float))
    n = proj.shape[0]
    z = norm.ppf(0.5 + confidence / 2.0)
    hinge = np.maximum(proj[None, :] - grid[:, None], 0.0)
    est = hinge.mean(axis=1)
    hw = z * hinge.std(axis=1, ddof=1) / math.sqrt(n)
    return HingeCurve(
        direction=f, thresholds=grid, estimates=est, half_widths=hw, confidence=confidence, n=n
    )


@dataclass(frozen=True)
class OrderReport:
    """Outcome of the decreasing-in-t convex-order battery.

    For each adjacent intensity pair (s, t) with s < t and every threshold a,
    the hinge mean at t may exceed the one at s only within CI slack; sample
    means must agree within slack as well (convex order preserves the mean).
    A violation records (s, t, a, margin) with margin the CI-adjusted excess;
    mean mismatches use a = nan.
    """

    intensities: np.ndarray
    thresholds: np.ndarray
    gaps: np.ndarray  # (pairs, thresholds): estimate_t - estimate_s
    slacks: np.ndarray
    violations: list
    consistent: bool
    confidence: float


def convex_order_check(
    samples: Sequence[tuple[float, EmpiricalSample]],
    f=None,
    grid=None,
    confidence: float = 0.99,
) -> OrderReport:
    """Check that hinge means decrease as the intensity label increases.

    samples is [(t_1, sample_1), ...] with t_1 < ... < t_K; each sample is
    tested against the next via one-sided hinge comparisons, Bonferroni
    corrected across all comparisons, plus a two-sided mean-equality check.
    """
    if len(samples) == 0:
        raise ValueError("samples must be nonempty")
    ts = np.array([float(t) for t, _ in samples])
    if np.any(np.diff(ts) <= 0):
        raise ValueError("intensities must be strictly increasing")
    dims = {s.dimension for _, s in samples}
    if len(dims) != 1:
        raise ValueError("samples must share one dimension")
    d = dims.pop()
    if f is None:
        if d != 1:
            raise ValueError("direction f is required for multivariate samples")
        f = np.ones(1)
    f = np.asarray(f, dtype=float).reshape(d)
    projs = [s.draws @ f for _, s in samples]
    if grid is None:
        grid = np.quantile(projs[0], np.linspace(0.1, 0.9, 9))
    grid = np.sort(np.asarray(grid, dtype=float))
    n_pairs = len(samples) - 1
    n_comp = max(n_pairs * (len(grid) + 1), 1)
    alpha_each = (1.0 - confidence) / n_comp
    z_hinge = norm.isf(alpha_each)
    z_mean = norm.isf(alpha_each / 2.0)

    gaps = np.zeros((n_pairs, len(grid)))
    slacks = np.zeros_like(gaps)
    violations = []
    for i in range(n_pairs):
        lo, hi = projs[i], projs[i + 1]
        for j, a in enumerate(grid):
            h_lo = np.maximum(lo - a, 0.0)
            h_hi = np.maximum(hi - a, 0.0)
            se = math.hypot(
                h_lo.std(ddof=1) / math.sqrt(len(lo)), h_hi.std(ddof=1) / math.sqrt(len(hi))
            )
            gaps[i, j] = h_hi.mean() - h_lo.mean()
            slacks[i, j] = z_hinge * se
            if gaps[i, j] > slacks[i, j]:
                violations.append((ts[i], ts[i + 1], float(a), float(gaps[i, j] - slacks[i, j])))
        se_mean = math.hypot(lo.std(ddof=1) / math.sqrt(len(lo)), hi.std(ddof=1) / math.sqrt(len(hi)))
        mean_gap = abs(hi.mean() - lo.mean())
        if mean_gap > z_mean * se_mean:
            violations.append((ts[i], ts[i + 1], float("nan"), float(mean_gap - z_mean * se_mean)))
    return OrderReport(
        intensities=ts,
        thresholds=grid,
        gaps=gaps,
        slacks=slacks,
        violations=violations,
        consistent=not violations,
        confidence=confidence,
    )


def beta_identity_second_moments(a: float, b: float, u_params=None) -> tuple[float, float]:
    """Closed-form second moments of (1-U)X_b + U X_a and of X_b.

    X_s ~ beta(s, s) and U ~ beta(*u_params) independent; u_params defaults
    to (2a, b - a), the mixing law under which the identity holds exactly.
    """
    if u_params is None:
        u_params = (2.0 * a, b - a)
    u1, u2 = u_params
    s = u1 + u2
    eu = u1 / s
    eu2 = u1 * (u1 + 1.0) / (s * (s + 1.0))
    e1mu2 = 1.0 - 2.0 * eu + eu2
    euu = eu - eu2
    m2a = (a + 1.0) / (2.0 * (2.0 * a + 1.0))
    m2b = (b + 1.0) / (2.0 * (2.0 * b + 1.0))
    mix = e1mu2 * m2b + 2.0 * euu * 0.25 + eu2 * m2a
    return float(mix), float(m2b)


def beta_identity_check(
    a: float,
    b: float,
    n: int,
    rng: RngStream,
    u_params=None,
    level: float = 0.001,
) -> KSReport:
    """Two-sample KS of (1-U)X_b + U X_a against fresh X_b draws.

    With X_s ~ beta(s, s), U ~ beta(2a, b - a) independent and 0 < a < b, the
    two laws coincide. Passing a different u_params deliberately breaks the
    identity (negative control).
    """
    if not 0 < a < b:
        raise ValueError("need 0 < a < b")
    if u_params is None:
        u_params = (2.0 * a, b - a)
    gen = rng.generator()
    xb = gen.beta(b, b, size=n)
    xa = gen.beta(a, a, size=n)
    u = gen.beta(u_params[0], u_params[1], size=n)
    mix = (1.0 - u) * xb + u * xa
    fresh = gen.beta(b, b, size=n)
    return ks_two_sample(mix, fresh, level=level)


@dataclass(frozen=True)
class MomentInequalityReport:
    """Monte Carlo check of the moment bounds along the curve.

    For s >= 1 the mean law cannot beat the base law: E|X_t|^s <= E|B|^s.
    For 0 < s < 1 the ratio E|X_t|^s / E|B|^s is bounded by
    t * Beta(t, s) = t * Gamma(t) Gamma(s) / Gamma(t + s).
    """

    s: float
    t: float
    lhs: float
    lhs_se: float
    rhs: float
    rhs_se: float
    bound: float
    bound_kind: str  # 'direct' for s >= 1, 'ratio' for s < 1
    satisfied: bool


def moment_inequality_check(
    measure: GoverningMeasure,
    t: float,
    s: float,
    n: int,
    rng: RngStream,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> MomentInequalityReport:
    if s <= 0:
        raise ValueError("s must be positive")
    gen = rng.generator()
    x = stick_mean_draws(measure, t, n, policy, gen)
    b = draw_measure(measure, n, gen)
    xs = np.linalg.norm(x, axis=1) ** s
    bs = np.linalg.norm(b, axis=1) ** s
    lhs, lhs_se = float(xs.mean()), float(xs.std(ddof=1) / math.sqrt(n))
    rhs, rhs_se = float(bs.mean()), float(bs.std(ddof=1) / math.sqrt(n))
    if s >= 1.0:
        bound = rhs
        satisfied = lhs <= rhs + 3.0 * math.hypot(lhs_se, rhs_se)
        kind = "direct"
    else:
        bound = float(t * math.exp(betaln(t, s)))
        ratio = lhs / rhs
        ratio_se = ratio * math.hypot(lhs_se / lhs, rhs_se / rhs)
        satisfied = ratio <= bound + 3.0 * ratio_se
        kind = "ratio"
    return MomentInequalityReport(
        s=s,
        t=t,
        lhs=lhs,
        lhs_se=lhs_se,
        rhs=rhs,
        rhs_se=rhs_se,
        bound=bound,
        bound_kind=kind,
        satisfied=satisfied,
    )
