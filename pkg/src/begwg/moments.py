"""Raw moments of the marginals ``X_i ~ EGWG(a, b, c, d, alpha_i + alpha_3)``.

Adaptive quadrature is the reference.  :func:`raw_moment_series` is an
independent convergent expansion used as a cross-check: expanding
``G**(s - 1)`` binomially and integrating by parts gives

    E[X^r] = sum_m (-1)^m C(s - 1, m) * s / (m + 1) * mu_r(a (m + 1)),

where ``mu_r(lam)`` is the r-th moment of the ``alpha = 1`` law with scale
``lam``.  For integer ``s`` the sum is finite.  The termwise-integrated
quadruple series is also provided (:func:`raw_moment_series_termwise`);
its ``k = 0`` terms divide by zero and its inner terms integrate growing
exponentials, so it never reports convergence.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import binom, gammaln

from . import univariate as uv
from ._config import DEFAULT_CONFIG
from ._quad import quad_log_density
from ._validation import check_which
from .exceptions import DomainError

__all__ = [
    "SeriesControl", "SeriesResult", "raw_moment_quadrature", "raw_moment_series",
    "raw_moment_series_termwise",
]

_LOG_MAX = np.log(np.finfo(float).max)


@dataclass(frozen=True)
class SeriesControl:
    """Truncation rule for the moment series.

    Parameters
    ----------
    tol : float
        Stop once the estimated remaining tail is below ``tol * |partial sum|``.
    max_terms_per_index : int
        Hard cap on the number of terms of each summation index.
    min_tail_checks : int
        Consecutive passing tail checks required before stopping.
    """

    tol: float = 1e-10
    max_terms_per_index: int = 200
    min_tail_checks: int = 3

    def __post_init__(self):
        if not self.tol > 0:
            raise DomainError("tol must be > 0")
        if int(self.max_terms_per_index) < 1:
            raise DomainError("max_terms_per_index must be >= 1")
        if int(self.min_tail_checks) < 1:
            raise DomainError("min_tail_checks must be >= 1")


@dataclass(frozen=True)
class SeriesResult:
    value: float
    terms_used: int
    converged: bool

    def __iter__(self):
        return iter((self.value, self.terms_used, self.converged))


def _check_order(r):
    if isinstance(r, bool) or not isinstance(r, (int, np.integer)) or r < 0:
        raise DomainError(f"moment order must be a non-negative integer, got {r!r}")
    return int(r)


def _law_moment(law, r, config):
    if r == 0:
        return 1.0
    lo = float(uv._log_quantile(law, config.tail_prob, config))
    hi = float(uv._log_quantile(law, 1.0 - config.tail_prob, config))
    mid = float(uv._log_quantile(law, 0.5, config))
    log_integrand = lambda t: uv._log_pdf_t(t, law) + r * t
    if np.max(log_integrand(np.linspace(lo, hi, 65)) + hi) >= _LOG_MAX:
        raise OverflowError(f"x**{r} * pdf is not representable on the support")
    return quad_log_density(log_integrand, lo, hi, config, points=[mid])


def raw_moment_quadrature(p, which, r, config=DEFAULT_CONFIG):
    """``E[X_which ** r]`` by adaptive quadrature of ``x**r * pdf`` in log-x.

    The range is cut where the marginal CDF and survival drop below
    ``config.tail_prob``.  ``r = 0`` returns exactly 1.
    """
    r = _check_order(r)
    return _law_moment(p.marginal(check_which(which)), r, config)


def _binom_weights(beta):
    """Yield ``(-1)**m * C(beta, m)`` by the stable ratio recurrence."""
    w, m = 1.0, 0
    while True:
        yield w
        w *= -(beta - m) / (m + 1)
        m += 1


def raw_moment_series(p, which, r, ctl=SeriesControl(), config=DEFAULT_CONFIG):
    """Series form of ``E[X_which ** r]``.

    Returns
    -------
    SeriesResult
        ``(value, terms_used, converged)``.  ``converged`` is False when the
        term cap is hit before the tail test passes ``ctl.min_tail_checks``
        times in a row; the partial sum is returned as ``value``.
    """
    r = _check_order(r)
    law = p.marginal(check_which(which))
    if r == 0:
        return SeriesResult(1.0, 0, True)
    s = law.alpha
    beta = s - 1.0
    finite = beta >= 0 and float(beta).is_integer()
    n_terms = int(beta) + 1 if finite else None

    terms = []
    passes = 0
    for m, w in enumerate(_binom_weights(beta)):
        if finite and m >= n_terms:
            return SeriesResult(math.fsum(terms), len(terms), True)
        if m >= ctl.max_terms_per_index:
            return SeriesResult(math.fsum(terms), len(terms), False)
        scaled = uv.EgwgParams(law.a * (m + 1), law.b, law.c, law.d, 1.0)
        terms.append(w * s / (m + 1) * _law_moment(scaled, r, config))
        if finite or m < 2:
            continue
        # fixed-sign power-law tail: |t_m| ~ C m^-q  =>  tail ~ |t_m| m / (q - 1)
        t_prev, t_cur = abs(terms[-2]), abs(terms[-1])
        total = abs(math.fsum(terms))
        if t_cur == 0.0:
            tail = 0.0
        else:
            q = math.log(t_prev / t_cur) / math.log(m / (m - 1))
            tail = t_cur * m / (q - 1.0) if q > 1.0 else math.inf
        passes = passes + 1 if tail <= ctl.tol * total else 0
        if passes >= ctl.min_tail_checks:
            return SeriesResult(math.fsum(terms), len(terms), True)
    raise AssertionError("unreachable")


def raw_moment_series_termwise(p, which, r, ctl=SeriesControl()):
    """Termwise-integrated quadruple series over ``m, j, k <= j, l``.

    Evaluated literally in the index order ``m, j, k, l``; stops at the first
    non-finite partial sum (the ``k = 0`` terms divide by ``(c k)**...``).
    Never reports convergence.
    """
    r = _check_order(r)
    law = p.marginal(check_which(which))
    a, b, c, d, s = law.a, law.b, law.c, law.d, law.alpha
    n = int(ctl.max_terms_per_index)
    total, used = 0.0, 0
    with np.errstate(all="ignore"):
        for m in range(n):
            wm = (-1.0) ** m * binom(s - 1, m)
            for j in range(n):
                for k in range(j + 1):
                    for l in range(n):
                        e1 = (r + b * (j + 1) + l * d) / d
                        e2 = (r + b * (j + 1) + d * (l - 1)) / d + 1
                        ck = np.float64(c * k)
                        log_head = (l * np.log(np.float64(c)) + j * np.log(a * (1 + m))
                                    - gammaln(j + 1) - gammaln(l + 1))
                        head = ((-1.0) ** (j + k) * wm * binom(j, k) * np.exp(log_head)
                                / (d * ck ** e1))
                        body = (((1 + j) ** l - np.float64(j) ** l) * np.exp(gammaln(e2))
                                + d * (1 + j) ** l / (np.float64(k) * b) * np.exp(gammaln(e1 + 1)))
                        total += a * b * s / d * head * body
                        used += 1
                        if not np.isfinite(total):
                            return SeriesResult(float(total), used, False)
    return SeriesResult(float(total), used, False)
