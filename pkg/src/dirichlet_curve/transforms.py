"""Stieltjes and log transforms, the sampling identity for the Dirichlet mean,
and the residuals whose vanishing characterizes Cauchy base measures.

All transforms are taken at points z in the open upper half-plane.  For real
integration variables w, the difference w - z then lies strictly in the lower
half-plane, so principal-branch logarithms and non-integer powers of (w - z)
never cross the negative-real cut.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from numpy.random import Generator
from scipy import integrate
from scipy.special import betaln

from .measures import (
    Beta,
    BetaPrime,
    Cauchy1D,
    DiscreteAtoms,
    EmpiricalSample,
    GoverningMeasure,
    Uniform01,
)
from .stickbreak import DEFAULT_POLICY, TruncationPolicy, stick_mean_draws

__all__ = [
    "UpperHalfPoint",
    "stieltjes",
    "stieltjes_derivative",
    "log_transform",
    "CRResidual",
    "cr_identity_residual",
    "ode_residual",
    "power_identity_residual",
]


@dataclass(frozen=True)
class UpperHalfPoint:
    """A point z with Im z > 0, the domain of the transforms in this module."""

    z: complex

    def __post_init__(self):
        z = complex(self.z)
        if not z.imag > 0:
            raise ValueError("Im z must be strictly positive")
        object.__setattr__(self, "z", z)


def _as_upper(z) -> complex:
    if isinstance(z, UpperHalfPoint):
        return z.z
    return UpperHalfPoint(complex(z)).z


def _beta_params(alpha) -> tuple:
    if isinstance(alpha, Uniform01):
        return 1.0, 1.0
    return alpha.a, alpha.b


def _quad_complex(f, lo, hi, tol, **kw) -> complex:
    re, _ = integrate.quad(lambda w: f(w).real, lo, hi, epsabs=tol, epsrel=tol,
                           limit=200, **kw)
    im, _ = integrate.quad(lambda w: f(w).imag, lo, hi, epsabs=tol, epsrel=tol,
                           limit=200, **kw)
    return complex(re, im)


def _beta_integral(alpha, f, tol) -> complex:
    """integral of f(w) against a beta-type density, with the algebraic
    endpoint factors w^(a-1) (1-w)^(b-1) folded into the quadrature weight."""
    a, b = _beta_params(alpha)
    norm = math.exp(-betaln(a, b))
    return _quad_complex(lambda w: norm * f(w), 0.0, 1.0, tol,
                         weight="alg", wvar=(a - 1.0, b - 1.0))


def _beta_prime_integral(alpha, f, tol) -> complex:
    """integral of f(w) against a beta prime density, split at w = 1 so the
    possible algebraic singularity at 0 sits in a quadrature weight."""
    a, b = alpha.a, alpha.b
    norm = math.exp(-betaln(a, b))

    def head(w):
        return norm * (1.0 + w) ** (-(a + b)) * f(w)

    def tail(w):
        return norm * w ** (a - 1.0) * (1.0 + w) ** (-(a + b)) * f(w)

    val = _quad_complex(head, 0.0, 1.0, tol, weight="alg", wvar=(a - 1.0, 0.0))
    re, _ = integrate.quad(lambda w: tail(w).real, 1.0, np.inf,
                           epsabs=tol, epsrel=tol, limit=200)
    im, _ = integrate.quad(lambda w: tail(w).imag, 1.0, np.inf,
                           epsabs=tol, epsrel=tol, limit=200)
    return val + complex(re, im)


def _integrate_against(alpha, f, tol) -> complex:
    """integral of f(w) alpha(dw) for one-dimensional alpha, dispatching on family."""
    if isinstance(alpha, DiscreteAtoms):
        if alpha.dimension != 1:
            raise ValueError("transforms are one-dimensional")
        vals = np.array([f(w) for w in alpha.points[:, 0]])
        return complex(np.dot(alpha.weights, vals))
    if isinstance(alpha, EmpiricalSample):
        if alpha.dimension != 1:
            raise ValueError("transforms are one-dimensional")
        return complex(np.mean(f(alpha.values())))
    if isinstance(alpha, (Uniform01, Beta)):
        return _beta_integral(alpha, f, tol)
    if isinstance(alpha, BetaPrime):
        return _beta_prime_integral(alpha, f, tol)
    raise TypeError(f"no transform integration for {type(alpha).__name__}")


def stieltjes(alpha, z, quadrature_tol: float = 1e-10) -> complex:
    """y(z) = integral of alpha(dw) / (w - z), Im z > 0.

    Closed form for Cauchy and atomic measures, weighted quadrature for
    beta-type densities, plain average for empirical samples.
    """
    z = _as_upper(z)
    if isinstance(alpha, Cauchy1D):
        return 1.0 / (alpha.w.conjugate() - z)
    return _integrate_against(alpha, lambda w: 1.0 / (w - z), quadrature_tol)


def stieltjes_derivative(alpha, k: int, z, quadrature_tol: float = 1e-10) -> complex:
    """k-th derivative y^(k)(z) = k! * integral of alpha(dw) / (w - z)^(k+1).

    Computed from the integral representation, never by numeric
    differentiation, so it stays stable for k up to 6 and beyond.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    z = _as_upper(z)
    fact = math.factorial(k)
    if isinstance(alpha, Cauchy1D):
        return fact / (alpha.w.conjugate() - z) ** (k + 1)
    return fact * _integrate_against(
        alpha, lambda w: (w - z) ** (-(k + 1.0)), quadrature_tol
    )


def log_transform(alpha, z, quadrature_tol: float = 1e-10) -> complex:
    """g(z) = -integral of log(w - z) alpha(dw), principal branch, Im z > 0.

    Satisfies g'(z) = y(z).  For Cauchy measures g(z) = -log(conj(w) - z).
    """
    z = _as_upper(z)
    if isinstance(alpha, Cauchy1D):
        return -np.log(alpha.w.conjugate() - z)
    return -_integrate_against(alpha, lambda w: np.log(w - z), quadrature_tol)


def _log_fourier_mean(alpha, s: float, tol: float) -> complex:
    """integral of log(1 - i s x) alpha(dx); the integrand has positive real
    part 1 in its argument, so the principal log is unambiguous."""
    if s == 0.0:
        return 0.0 + 0.0j
    if isinstance(alpha, Cauchy1D):
        w = alpha.w if s > 0 else alpha.w.conjugate()
        return complex(np.log(1.0 - 1j * s * w))
    return _integrate_against(alpha, lambda x: np.log(1.0 - 1j * s * x), tol)


@dataclass(frozen=True)
class CRResidual:
    """Monte Carlo vs quadrature comparison of the mean-sampling identity.

    lhs is the MC average of (1 - isX)^(-t) (Fourier form, at frequency s) or
    (X - z)^(-t) (Stieltjes form, at the upper-half-plane point z) over draws
    X of the Dirichlet mean; rhs is the corresponding exact transform of the
    base measure; residual = |lhs - rhs| and mc_se is the MC standard error
    of the lhs."""

    form: str
    t: float
    point: complex
    mc_n: int
    lhs: complex
    rhs: complex
    residual: float
    mc_se: float

    def compatible_with_zero(self, n_se: float = 3.0) -> bool:
        return self.residual <= n_se * self.mc_se

    def __str__(self):
        tag = "s" if self.form == "fourier" else "z"
        return (
            f"identity[{self.form}] t={self.t:g} {tag}={self.point:g}: "
            f"|LHS-RHS|={self.residual:.3e} (mc se {self.mc_se:.3e}, n={self.mc_n})"
        )


def _complex_mean_se(vals: np.ndarray) -> float:
    n = len(vals)
    return math.sqrt((np.var(vals.real) + np.var(vals.imag)) / n)


def cr_identity_residual(
    alpha,
    t: float,
    mc_n: int,
    gen: Generator,
    s: Optional[float] = None,
    z: Optional[Union[complex, UpperHalfPoint]] = None,
    policy: TruncationPolicy = DEFAULT_POLICY,
    quadrature_tol: float = 1e-10,
) -> CRResidual:
    """Check the sampling identity for the Dirichlet mean at one test point.

    Fourier form (pass s):    E (1 - isX)^(-t) = exp(-t integral log(1-isx) alpha(dx)),
    Stieltjes form (pass z):  E (X - z)^(-t)   = exp(-t integral log(x-z) alpha(dx)),

    with X distributed as the Dirichlet mean for (alpha, t), sampled by stick
    breaking.  Exactly one of s and z must be given.  Both sides use the
    principal branch; on the left the draws X are real, so the powers are
    evaluated as exp(-t log(.)) without crossing the cut.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    if (s is None) == (z is None):
        raise ValueError("pass exactly one of s (Fourier) or z (Stieltjes)")
    x = stick_mean_draws(alpha, t, mc_n, policy, gen)[:, 0]
    if s is not None:
        vals = np.exp(-t * np.log(1.0 - 1j * s * x))
        rhs = np.exp(-t * _log_fourier_mean(alpha, s, quadrature_tol))
        form, point = "fourier", complex(s)
    else:
        zz = _as_upper(z)
        vals = np.exp(-t * np.log(x - zz))
        rhs = np.exp(t * log_transform(alpha, zz, quadrature_tol))
        form, point = "stieltjes", zz
    lhs = complex(vals.mean())
    return CRResidual(
        form=form,
        t=t,
        point=point,
        mc_n=mc_n,
        lhs=lhs,
        rhs=complex(rhs),
        residual=abs(lhs - rhs),
        mc_se=_complex_mean_se(vals),
    )


def ode_residual(alpha, n: int, z, quadrature_tol: float = 1e-10) -> complex:
    """n y(z) y^(n-1)(z) - y^(n)(z); identically zero iff alpha is Cauchy.

    For the Cauchy family y^(k) = k!/(conj(w) - z)^(k+1) turns the expression
    into an algebraic identity; any other base measure leaves a residual
    bounded away from zero on compact sets of the upper half-plane.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    z = _as_upper(z)
    y = stieltjes(alpha, z, quadrature_tol)
    y_lo = stieltjes_derivative(alpha, n - 1, z, quadrature_tol)
    y_hi = stieltjes_derivative(alpha, n, z, quadrature_tol)
    return n * y * y_lo - y_hi


def power_identity_residual(
    alpha, n: int, m: int, z, quadrature_tol: float = 1e-10
) -> complex:
    """(y^(n-1)/(n-1)!)^m - (y^(m-1)/(m-1)!)^n for n < m; zero iff alpha is Cauchy."""
    if not 1 <= n < m:
        raise ValueError("need 1 <= n < m")
    z = _as_upper(z)
    lo = stieltjes_derivative(alpha, n - 1, z, quadrature_tol) / math.factorial(n - 1)
    hi = stieltjes_derivative(alpha, m - 1, z, quadrature_tol) / math.factorial(m - 1)
    return lo**m - hi**n
