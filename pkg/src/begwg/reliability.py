"""Reliability measures of the bivariate EGWG distribution.

Survival, failure rates (Basu's scalar rate, Cox's vector, Johnson-Kotz
hazard gradient), reversed hazards and mean waiting times.  Everything is
computed in log space from the latent-variable representation
``X_i = max(U_i, U_3)``; no monotonicity classification is attempted.
"""
from typing import NamedTuple

import numpy as np

from . import univariate as uv
from ._config import DEFAULT_CONFIG
from ._quad import quad
from ._validation import as_points, check_which, scalar_or_array
from .bivariate import (_joint_log_cdf_t, _joint_log_pdf_t, _log_G,
                        _region_out, _regions)
from .exceptions import DomainError

__all__ = [
    "HazardVector", "GradientPair", "joint_survival", "log_joint_survival",
    "bvfr", "cox_vector", "hazard_gradient", "reversed_hazard",
    "reversed_hazard_gradient", "mean_waiting_time_marginal",
    "mean_waiting_time_joint",
]


class HazardVector(NamedTuple):
    h_diag: float  # failure rate of min(X1, X2) at min(x1, x2)
    h_12: float    # component 1 given component 2 has failed
    h_21: float    # component 2 given component 1 has failed


class GradientPair(NamedTuple):
    g1: float
    g2: float


def _log1mexp(y):
    """log(1 - exp(y)) for y <= 0."""
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(y > -np.log(2.0), np.log(-np.expm1(y)), np.log1p(-np.exp(y)))


def _pair_t(x1, x2, allow_zero):
    x1 = as_points(x1, "x1", allow_zero=allow_zero)
    x2 = as_points(x2, "x2", allow_zero=allow_zero)
    x1, x2 = np.broadcast_arrays(x1, x2)
    with np.errstate(divide="ignore"):
        return x1, x2, np.log(x1), np.log(x2)


def _log_q(p, t):
    # log of the base density dG/dx
    return uv._log_pdf_t(t, p._laws[5])


def _log_survival_t(p, t1, t2):
    """log P(X1 > x1, X2 > x2) without inclusion-exclusion cancellation.

    For x1 <= x2:  R = S3(x2) + S2(x2) * (F3(x2) - F1(x1) F3(x1)),
    with F_k, S_k the CDF and survival of the latent U_k; mirrored otherwise.
    """
    a1, a2, a3 = p.alphas
    lo, hi = np.minimum(t1, t2), np.maximum(t1, t2)
    lG_lo, lG_hi = _log_G(p, lo), _log_G(p, hi)
    first = t1 <= t2
    a_lo = np.where(first, a1, a2)
    a_hi = np.where(first, a2, a1)
    base = p._laws[5]
    log_s3 = uv._log_survival_t(hi, base, alpha=a3)
    log_s_hi = uv._log_survival_t(hi, base, alpha=a_hi)
    with np.errstate(invalid="ignore"):
        spread = np.where(lo == hi, 0.0, lG_lo - lG_hi)
    gap = _log1mexp(a_lo * lG_lo + a3 * spread)
    return np.logaddexp(log_s3, a3 * lG_hi + log_s_hi + gap)


def log_joint_survival(p, x1, x2):
    x1, x2, t1, t2 = _pair_t(x1, x2, allow_zero=True)
    return scalar_or_array(_log_survival_t(p, t1, t2))


def joint_survival(p, x1, x2):
    """``P(X1 > x1, X2 > x2) = 1 - F_X1(x1) - F_X2(x2) + F(x1, x2)``."""
    return scalar_or_array(np.exp(log_joint_survival(p, x1, x2)))


def _finite_or_raise(log_den, what):
    if np.any(np.isneginf(log_den)):
        raise DomainError(f"{what} underflows to 0 at the requested point")


# Past this, rounding of log R alone (|log R| * eps) exceeds ~1e-6 relative
# error in any ratio over R, so survival-based rates are refused.
_SURVIVAL_LOG_FLOOR = -1e-6 / np.finfo(float).eps


def _survival_or_raise(log_r, what):
    _finite_or_raise(log_r, what)
    if np.any(log_r < _SURVIVAL_LOG_FLOOR):
        raise DomainError(f"{what} is too far in the tail for a double-precision rate")


def bvfr(p, x1, x2):
    """Basu's bivariate failure rate ``f / R`` with the density's region tag."""
    x1, x2, t1, t2 = _pair_t(x1, x2, allow_zero=False)
    log_r = _log_survival_t(p, t1, t2)
    _survival_or_raise(log_r, "joint survival")
    val = np.exp(_joint_log_pdf_t(p, t1, t2) - log_r)
    return scalar_or_array(val), _region_out(_regions(x1, x2))


def _log_min_density(p, t):
    # f_S = f_X1 + f_X2 - f_max, all EGWG densities
    s1, _, _, s2, mx, _ = p._laws
    la, lb, lt = uv._log_pdf_t(t, s1), uv._log_pdf_t(t, s2), uv._log_pdf_t(t, mx)
    top = np.logaddexp(la, lb)
    return top + _log1mexp(np.minimum(lt - top, 0.0))


def cox_vector(p, x1, x2):
    """Cox's failure-rate vector ``(h(min), h_12(x1 | x2), h_21(x2 | x1))``.

    The first entry is the failure rate of ``min(X1, X2)``; the conditional
    entries reduce to the univariate EGWG hazards with shapes ``alpha1`` and
    ``alpha2``.
    """
    x1, x2, t1, t2 = _pair_t(x1, x2, allow_zero=False)
    m = np.minimum(t1, t2)
    log_r = _log_survival_t(p, m, m)
    _survival_or_raise(log_r, "survival of the minimum")
    h = np.exp(_log_min_density(p, m) - log_r)
    h12 = uv.hazard(p.component(p.alpha1), x1)
    h21 = uv.hazard(p.component(p.alpha2), x2)
    return HazardVector(scalar_or_array(h), h12, h21)


def hazard_gradient(p, x1, x2):
    """Johnson-Kotz hazard gradient ``(-d/dx1 log R, -d/dx2 log R)``.

    Undefined on the diagonal, where the one-sided derivatives differ.
    """
    x1, x2, t1, t2 = _pair_t(x1, x2, allow_zero=False)
    if np.any(x1 == x2):
        raise DomainError("hazard gradient is not defined on the diagonal x1 == x2")
    a1, a2, a3 = p.alphas
    A, B = a1 + a3, a2 + a3
    base = p._laws[5]
    lG1, lG2 = _log_G(p, t1), _log_G(p, t2)
    lq1, lq2 = _log_q(p, t1), _log_q(p, t2)
    log_r = _log_survival_t(p, t1, t2)
    _survival_or_raise(log_r, "joint survival")
    below = x1 < x2
    with np.errstate(divide="ignore", invalid="ignore"):
        # x1 < x2
        g1_b = np.log(A) + lq1 + (A - 1) * lG1 + uv._log_survival_t(t2, base, alpha=a2)
        g2_b = lq2 + (B - 1) * lG2 + np.log(a3 + a2 * np.exp(_log1mexp(A * lG1 - a3 * lG2)))
        # x1 > x2
        g1_a = lq1 + (A - 1) * lG1 + np.log(a3 + a1 * np.exp(_log1mexp(B * lG2 - a3 * lG1)))
        g2_a = np.log(B) + lq2 + (B - 1) * lG2 + uv._log_survival_t(t1, base, alpha=a1)
    g1 = np.exp(np.where(below, g1_b, g1_a) - log_r)
    g2 = np.exp(np.where(below, g2_b, g2_a) - log_r)
    return GradientPair(scalar_or_array(g1), scalar_or_array(g2))


def reversed_hazard(p, x1, x2):
    """Bivariate reversed hazard ``f / F`` with the density's region tag."""
    x1, x2, t1, t2 = _pair_t(x1, x2, allow_zero=False)
    log_F = _joint_log_cdf_t(p, t1, t2)
    _finite_or_raise(log_F, "joint CDF")
    val = np.exp(_joint_log_pdf_t(p, t1, t2) - log_F)
    return scalar_or_array(val), _region_out(_regions(x1, x2))


def reversed_hazard_gradient(p, x1, x2):
    """Marginal reversed hazards ``f_Xi / F_Xi`` at ``x1`` and ``x2``."""
    x1, x2, t1, t2 = _pair_t(x1, x2, allow_zero=False)
    out = []
    for law, t in ((p._laws[0], t1), (p._laws[3], t2)):
        log_F = uv._log_cdf_t(t, law)
        _finite_or_raise(log_F, "marginal CDF")
        out.append(scalar_or_array(np.exp(uv._log_pdf_t(t, law) - log_F)))
    return GradientPair(*out)


def _check_time(t, name):
    return float(as_points(t, name, allow_zero=False))


def mean_waiting_time_marginal(p, which, t, config=DEFAULT_CONFIG):
    """Mean time elapsed since failure of ``X_which`` given failure by ``t``.

    ``(1 / F(t)) * integral_0^t F(x) dx``, by adaptive quadrature.  The
    integrand is scaled by ``F(t)`` so the result is always in ``(0, t)``.
    """
    law = p.marginal(check_which(which))
    t = _check_time(t, "t")
    log_Ft = float(uv._log_cdf_t(np.log(t), law))
    _finite_or_raise(log_Ft, "marginal CDF")

    def integrand(x):
        with np.errstate(divide="ignore"):
            return np.exp(uv._log_cdf_t(np.log(x), law) - log_Ft)

    return quad(integrand, 0.0, t, config)


def mean_waiting_time_joint(p, t1, t2, config=DEFAULT_CONFIG):
    """``(1 / F(t1, t2)) * double integral of F`` over ``[0, t1] x [0, t2]``.

    The inner integral is split at the diagonal so each piece sees a single
    smooth branch of the joint CDF.
    """
    t1 = _check_time(t1, "t1")
    t2 = _check_time(t2, "t2")
    log_Ft = float(_joint_log_cdf_t(p, np.log(t1), np.log(t2)))
    _finite_or_raise(log_Ft, "joint CDF")

    def scaled(x1, x2):
        with np.errstate(divide="ignore"):
            return np.exp(_joint_log_cdf_t(p, np.log(x1), np.log(x2)) - log_Ft)

    def inner(x1):
        if x1 < t2:
            return (quad(lambda x2: scaled(x1, x2), 0.0, x1, config)
                    + quad(lambda x2: scaled(x1, x2), x1, t2, config))
        return quad(lambda x2: scaled(x1, x2), 0.0, t2, config)

    return quad(inner, 0.0, t1, config, points=[t2] if t2 < t1 else None)
