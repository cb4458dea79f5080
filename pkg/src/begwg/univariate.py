"""Univariate exponentiated generalized Weibull-Gompertz (EGWG) distribution.

The CDF is ``G(x)**alpha`` with the base CDF

    G(x) = 1 - exp(-H(x)),    H(x) = a * x**b * (exp(c * x**d) - 1).

Internally everything is computed from ``t = log(x)`` so that the very small
quantiles produced by small shape parameters stay representable, and every
``1 - exp(.)`` / ``exp(.) - 1`` goes through ``expm1`` / ``log1p``.

Special cases (Chen, Xie, Gompertz, generalized exponential, ...) are plain
parameter choices and are not given separate types.

Density at the origin
---------------------
Near zero the density behaves like ``alpha * (a*c)**alpha * (b+d) *
x**((b+d)*alpha - 1)``.  ``pdf(p, 0)`` returns that limit when it is finite
(0 when the exponent is positive, ``(a*c)**alpha`` when it is zero) and 0 when
it diverges; it never returns NaN.
"""
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import exprel

from ._config import DEFAULT_CONFIG
from ._validation import (as_points, as_probabilities, check_count,
                          check_positive_param, check_rng, scalar_or_array)
from .exceptions import ConvergenceError

__all__ = [
    "EgwgParams", "cdf", "log_cdf", "pdf", "log_pdf", "survival",
    "log_survival", "hazard", "quantile", "sample",
]

_LN2 = np.log(2.0)


@dataclass(frozen=True)
class EgwgParams:
    """Scale ``a``, shapes ``b``, ``d``, acceleration ``c``, exponent ``alpha``."""

    a: float
    b: float
    c: float
    d: float
    alpha: float

    def __post_init__(self):
        for name in ("a", "b", "c", "d", "alpha"):
            object.__setattr__(self, name, check_positive_param(getattr(self, name), name))

    def with_alpha(self, alpha):
        return replace(self, alpha=alpha)


# ---------------------------------------------------------------------------
# log-space kernels; ``t`` is log(x), arrays of any shape

def _log_expm1_from_log(logz):
    """log(exp(z) - 1) given log(z)."""
    z = np.exp(logz)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        small = logz + np.log(exprel(np.minimum(z, 1.0)))
        large = z + np.log1p(-np.exp(-z))
    return np.where(z < 1.0, small, large)


def _log_neg_log1mexp(logw):
    """log(-log(1 - w)) given log(w), for 0 < w < 1."""
    w = np.exp(logw)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(w < 1e-8, 1.0 + 0.5 * w, -np.log1p(-w) / np.where(w > 0, w, 1.0))
        small = logw + np.log(ratio)
        large = np.log(-np.log(-np.expm1(logw)))
    return np.where(w < 0.5, small, large)


def _kernel(t, p):
    """Return (log z, log H, H, log G) at t = log x, with z = c * x**d."""
    logz = np.log(p.c) + p.d * t
    logH = np.log(p.a) + p.b * t + _log_expm1_from_log(logz)
    with np.errstate(over="ignore"):
        H = np.exp(logH)
    with np.errstate(divide="ignore", invalid="ignore"):
        small = logH + np.log(exprel(-np.minimum(H, _LN2)))
        large = np.log1p(-np.exp(-H))
    logG = np.where(H < _LN2, small, large)
    return logz, logH, H, logG


def _log_pdf_t(t, p, alpha=None):
    alpha = p.alpha if alpha is None else alpha
    logz, _, H, logG = _kernel(t, p)
    z = np.exp(logz)
    with np.errstate(over="ignore", invalid="ignore"):
        val = (np.log(p.a * p.b * alpha) + (p.b - 1.0) * t - H + z + logz
               + np.log(exprel(-z) + p.d / p.b) + (alpha - 1.0) * logG)
    return np.where(np.isinf(H), -np.inf, val)


def _log_survival_t(t, p, alpha=None):
    alpha = p.alpha if alpha is None else alpha
    _, _, H, logG = _kernel(t, p)
    y = alpha * logG
    log_neg_y = np.log(alpha) + _log_neg_log1mexp(-H)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = log_neg_y + np.log(exprel(y))
    # H overflow means the survival is exactly representable as 0
    val = np.where(np.isinf(H), -np.inf, val)
    return np.where(np.isneginf(t), 0.0, val)


def _log_cdf_t(t, p, alpha=None):
    alpha = p.alpha if alpha is None else alpha
    return alpha * _kernel(t, p)[3]


def _origin_pdf(p):
    expo = (p.b + p.d) * p.alpha - 1.0
    if expo > 0.0:
        return 0.0
    if expo == 0.0:
        return (p.a * p.c) ** p.alpha
    return 0.0


def _log_t(x):
    with np.errstate(divide="ignore"):
        return np.log(x)


# ---------------------------------------------------------------------------
# public x-space API

def log_cdf(p, x):
    x = as_points(x)
    return scalar_or_array(_log_cdf_t(_log_t(x), p))


def cdf(p, x):
    """``[1 - exp(-a x^b (exp(c x^d) - 1))]**alpha``; 0 at the origin."""
    x = as_points(x)
    return scalar_or_array(np.exp(_log_cdf_t(_log_t(x), p)))


def survival(p, x):
    x = as_points(x)
    return scalar_or_array(-np.expm1(_log_cdf_t(_log_t(x), p)))


def log_survival(p, x):
    x = as_points(x)
    t = _log_t(x)
    return scalar_or_array(np.where(x == 0.0, 0.0, _log_survival_t(t, p)))


def log_pdf(p, x):
    """Natural log of the density, evaluated without forming the density."""
    x = as_points(x)
    t = _log_t(x)
    with np.errstate(divide="ignore"):
        origin = np.log(_origin_pdf(p))
    return scalar_or_array(np.where(x == 0.0, origin, _log_pdf_t(t, p)))


def pdf(p, x):
    x = as_points(x)
    t = _log_t(x)
    out = np.where(x == 0.0, _origin_pdf(p), np.exp(_log_pdf_t(t, p)))
    return scalar_or_array(out)


def hazard(p, x):
    """Failure rate ``pdf / survival`` computed as a log difference."""
    x = as_points(x, allow_zero=False)
    t = np.log(x)
    with np.errstate(invalid="ignore"):
        out = np.exp(_log_pdf_t(t, p) - _log_survival_t(t, p))
    return scalar_or_array(out)


def _log_target(u, alpha):
    # log H* with G(x*) = u**(1/alpha)
    return _log_neg_log1mexp(np.log(u) / alpha)


def _log_quantile(p, u, config=DEFAULT_CONFIG):
    """Solve log H(e^y) = log H* for y by bracketed, safeguarded Newton."""
    u = np.asarray(u, dtype=float)
    target = _log_target(u, p.alpha)
    flat = target.ravel()

    def g(y, tgt):
        return _kernel(y, p)[1] - tgt

    def slope(y):
        z = np.exp(np.log(p.c) + p.d * y)
        return p.b + p.d / exprel(-z)

    # upper end: x = 1 doubled until the CDF passes u
    hi = np.zeros_like(flat)
    for _ in range(config.max_doublings + 1):
        short = g(hi, flat) < 0.0
        if not short.any():
            break
        hi[short] += _LN2
    else:
        raise ConvergenceError("quantile bracket expansion exceeded its bound")
    lo = np.where(hi > 0.0, hi - _LN2, -1.0)
    step = 1.0
    for _ in range(config.max_doublings + 1):
        high = g(lo, flat) > 0.0
        if not high.any():
            break
        step *= 2.0
        lo[high] -= step
    else:
        raise ConvergenceError("quantile bracket expansion exceeded its bound")

    # small-x asymptote H ~ a c x^(b+d) as a starting point
    y = np.clip((flat - np.log(p.a * p.c)) / (p.b + p.d), lo, hi)
    active = np.ones(flat.shape, dtype=bool)
    for _ in range(config.max_newton):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        ya = y[idx]
        ga = g(ya, flat[idx])
        neg = ga < 0.0
        lo[idx] = np.where(neg, ya, lo[idx])
        hi[idx] = np.where(neg, hi[idx], ya)
        with np.errstate(invalid="ignore"):
            step_y = ya - ga / slope(ya)
        bad = ~((step_y > lo[idx]) & (step_y < hi[idx]))
        new = np.where(bad, 0.5 * (lo[idx] + hi[idx]), step_y)
        done = (ga == 0.0) | (np.abs(new - ya) <= 4.0 * np.finfo(float).eps * np.maximum(1.0, np.abs(ya)))
        y[idx] = np.where(ga == 0.0, ya, new)
        active[idx[done]] = False
    else:
        raise ConvergenceError("quantile refinement did not converge")
    y = y.reshape(u.shape)
    resid = np.abs(np.exp(_log_cdf_t(y, p)) - u)
    if np.any(resid > config.root_tol):
        raise ConvergenceError(f"quantile residual {resid.max():.3g} exceeds {config.root_tol:g}")
    return y


def quantile(p, u, config=DEFAULT_CONFIG):
    """Inverse CDF; ``u`` must lie strictly inside (0, 1)."""
    u = as_probabilities(u)
    # quantiles below the float range (tiny alpha) are clamped, not rounded to 0
    x = np.maximum(np.exp(_log_quantile(p, u, config)), np.finfo(float).tiny)
    return scalar_or_array(x)


def _uniforms(rng, n):
    # midpoints of a 2**-53 grid: never exactly 0 or 1
    return (rng.integers(0, 2**53, size=n, dtype=np.int64) + 0.5) / 2.0**53


def sample(p, rng, n, config=DEFAULT_CONFIG):
    """Draw ``n`` variates by inverting the CDF at uniforms from ``rng``."""
    n = check_count(n)
    rng = check_rng(rng)
    if n == 0:
        return np.empty(0)
    return quantile(p, _uniforms(rng, n), config)
