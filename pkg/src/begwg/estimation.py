"""Maximum likelihood for ``(alpha1, alpha2, alpha3)`` with fixed base parameters.

Pairs are split by the sign of ``x1 - x2``.  The log-likelihood is linear in
the per-group sums of ``log G`` plus ``log`` terms in the shape parameters,
so it is concave and the observed information depends only on the group
counts.  ``alpha3`` is profiled out by solving its score equation, and the
remaining two shapes are found by damped Newton on the profile likelihood.
"""
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy import optimize, stats

from . import univariate as uv
from ._validation import check_pairs
from .exceptions import BoundaryError, DomainError

__all__ = [
    "DEFAULT_BASE", "PairedSample", "Classification", "FitOptions", "FitResult",
    "ObservedInformation", "InformationCriteria", "CovarianceCI", "classify",
    "log_likelihood", "score", "hessian", "profile_alpha3", "fit_mle",
    "observed_information", "covariance_and_ci", "wald_intervals",
    "information_criteria", "REFERENCE_FIT", "REFERENCE_BEGD",
]

DEFAULT_BASE = (0.1, 0.2, 0.2, 0.5)
K_PARAMS = 3

# Reference results for the NFL scoring-times data, kept for side-by-side
# reports.  The bivariate exponentiated Gompertz row is quoted only.
REFERENCE_FIT = {
    "alpha_hat": (0.0323, 0.186, 0.406),
    "neg_log_likelihood": 354.03,
    "aic": 714.06,
    "caic": 714.69,
    "bic": 359.63,
    "covariance": ((0.0005173, 0.0000052, -0.000426),
                   (0.0000052, 0.0021423, -0.000125),
                   (-0.000426, -0.000125, 0.0102564)),
    "ci": ((0.0, 0.077), (0.0955, 0.277), (0.207, 0.605)),
}
REFERENCE_BEGD = {
    "params": {"alpha1": 0.043, "alpha2": 0.528, "alpha3": 1.037, "lambda": 0.787},
    "k": 4,
    "neg_log_likelihood": 370.41,
    "aic": 748.82,
    "caic": 749.90,
    "bic": 377.88,
}


# ---------------------------------------------------------------------------
# data containers

@dataclass(frozen=True)
class PairedSample:
    """Ordered ``(x1, x2)`` lifetimes, stored as an ``(n, 2)`` float array."""

    pairs: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pairs, dtype=float)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        arr = check_pairs(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "pairs", arr)

    def __len__(self):
        return self.pairs.shape[0]

    @property
    def x1(self):
        return self.pairs[:, 0]

    @property
    def x2(self):
        return self.pairs[:, 1]

    def swapped(self):
        return PairedSample(self.pairs[:, ::-1])


@dataclass(frozen=True)
class Classification:
    """Index groups: 1 for ``x1 < x2``, 2 for ``x1 > x2``, 3 for ties."""

    group1: np.ndarray
    group2: np.ndarray
    group3: np.ndarray

    @property
    def n1(self):
        return int(self.group1.size)

    @property
    def n2(self):
        return int(self.group2.size)

    @property
    def n3(self):
        return int(self.group3.size)

    @property
    def counts(self):
        return (self.n1, self.n2, self.n3)

    @property
    def n(self):
        return self.n1 + self.n2 + self.n3


def classify(s, tie_tol=0.0):
    """Assign each pair to a group; ``|x1 - x2| <= tie_tol`` counts as a tie."""
    tie_tol = float(tie_tol)
    if not tie_tol >= 0:
        raise DomainError("tie_tol must be >= 0")
    diff = s.x1 - s.x2
    tie = np.abs(diff) <= tie_tol
    return Classification(np.flatnonzero(~tie & (diff < 0)),
                          np.flatnonzero(~tie & (diff > 0)),
                          np.flatnonzero(tie))


# ---------------------------------------------------------------------------
# likelihood

class _Stats(NamedTuple):
    n1: int
    n2: int
    n3: int
    s11: float  # sum of log G(x1) over group 1
    s12: float  # log G(x2), group 1
    s21: float  # log G(x1), group 2
    s22: float  # log G(x2), group 2
    s3: float   # log G(x), ties
    const: float  # shape-free part: sum of log base densities


def _tie_values(s, cls):
    # near-ties (tie_tol > 0) are evaluated at the pair midpoint
    return 0.5 * (s.x1[cls.group3] + s.x2[cls.group3])


def _stats(fixed, cls, s):
    base = uv.EgwgParams(*fixed, 1.0)
    g1, g2 = cls.group1, cls.group2
    pts = [s.x1[g1], s.x2[g1], s.x1[g2], s.x2[g2], _tie_values(s, cls)]
    sums, const = [], []
    for x in pts:
        t = np.log(x)
        lG = uv._kernel(t, base)[3]
        lq = uv._log_pdf_t(t, base)
        if not (np.all(np.isfinite(lG)) and np.all(np.isfinite(lq))):
            raise DomainError("an observation has zero base CDF or density at these base parameters")
        sums.append(math.fsum(lG))
        const.append(math.fsum(lq))
    return _Stats(cls.n1, cls.n2, cls.n3, *sums, math.fsum(const))


def _check_theta(theta):
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (3,) or not np.all(np.isfinite(theta)) or np.any(theta <= 0):
        raise DomainError("theta must be three finite positive shapes")
    return theta


def _xlogy(n, v):
    return n * math.log(v) if n else 0.0


def _loglik(st, theta):
    a1, a2, a3 = theta
    return (_xlogy(st.n1, a2) + _xlogy(st.n1, a1 + a3) + _xlogy(st.n2, a2 + a3)
            + _xlogy(st.n2, a1) + _xlogy(st.n3, a3)
            + (a1 + a3 - 1) * st.s11 + (a2 - 1) * st.s12 + (a1 - 1) * st.s21
            + (a2 + a3 - 1) * st.s22 + (a1 + a2 + a3 - 1) * st.s3 + st.const)


def _score(st, theta):
    a1, a2, a3 = theta
    A, B = a1 + a3, a2 + a3
    return np.array([
        st.n1 / A + st.n2 / a1 + st.s11 + st.s21 + st.s3,
        st.n1 / a2 + st.n2 / B + st.s12 + st.s22 + st.s3,
        st.n1 / A + st.n2 / B + st.n3 / a3 + st.s11 + st.s22 + st.s3,
    ])


def _hessian(counts, theta):
    n1, n2, n3 = counts
    a1, a2, a3 = theta
    uA, uB = n1 / (a1 + a3) ** 2, n2 / (a2 + a3) ** 2
    return -np.array([
        [uA + n2 / a1**2, 0.0, uA],
        [0.0, n1 / a2**2 + uB, uB],
        [uA, uB, uA + uB + n3 / a3**2],
    ])


def log_likelihood(theta, fixed, cls, s):
    """Log-likelihood of the sample, including all shape-free terms."""
    return _loglik(_stats(fixed, cls, s), _check_theta(theta))


def score(theta, fixed, cls, s):
    """Gradient of :func:`log_likelihood` with respect to the three shapes."""
    return _score(_stats(fixed, cls, s), _check_theta(theta))


def hessian(theta, cls):
    """Second derivatives; only the group counts enter."""
    return _hessian(cls.counts, _check_theta(theta))


# ---------------------------------------------------------------------------
# profile in alpha3

def _profile(st, a1, a2, tol=1e-10):
    def phi(a3):
        return (st.n1 / (a1 + a3) + st.n2 / (a2 + a3) + (st.n3 / a3 if st.n3 else 0.0)
                + st.s11 + st.s22 + st.s3)

    def dphi(a3):
        return -(st.n1 / (a1 + a3) ** 2 + st.n2 / (a2 + a3) ** 2 + st.n3 / a3**2)

    limit = st.s11 + st.s22 + st.s3          # phi(+inf)
    if limit >= 0:
        raise BoundaryError("alpha3 score stays non-negative: the MLE diverges")
    if st.n3 == 0 and st.n1 / a1 + st.n2 / a2 + limit <= 0:
        raise BoundaryError("no tied pairs and the alpha3 score is negative for all alpha3 > 0: "
                            "the MLE is on the boundary alpha3 = 0")
    # phi is strictly decreasing, so bracket in log(alpha3) and refine
    lo, hi = -1.0, 1.0
    while phi(math.exp(lo)) <= 0:
        lo -= 2.0
        if lo < -700:
            raise BoundaryError("alpha3 root is below the representable range")
    while phi(math.exp(hi)) >= 0:
        hi += 2.0
        if hi > 700:
            raise BoundaryError("alpha3 root is above the representable range")
    u = optimize.brentq(lambda v: phi(math.exp(v)), lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps)
    a3 = math.exp(u)
    for _ in range(5):
        f = phi(a3)
        if abs(f) < 0.1 * tol:
            break
        a3 = max(a3 - f / dphi(a3), 0.5 * a3)
    return a3


def profile_alpha3(alpha1, alpha2, fixed, cls, s):
    """The ``alpha3`` that zeroes the ``alpha3`` score for given ``alpha1``, ``alpha2``.

    Raises
    ------
    BoundaryError
        When no positive root exists (e.g. no ties and a negative score
        everywhere), so the maximiser sits at ``alpha3 = 0``.
    """
    _check_theta((alpha1, alpha2, 1.0))
    return _profile(_stats(fixed, cls, s), float(alpha1), float(alpha2))


# ---------------------------------------------------------------------------
# fitting

@dataclass(frozen=True)
class FitOptions:
    max_iter: int = 100
    tol: float = 1e-8       # score norm
    step_tol: float = 1e-10  # Newton step norm
    level: float = 0.95


class ObservedInformation(NamedTuple):
    matrix: np.ndarray


class InformationCriteria(NamedTuple):
    aic: float
    caic: float
    bic_paper: float
    bic_standard: float


class CovarianceCI(NamedTuple):
    covariance: np.ndarray
    ci: tuple


@dataclass
class FitResult:
    alpha_hat: tuple
    log_likelihood: float
    aic: float
    caic: float
    bic_paper: float
    bic_standard: float
    covariance: np.ndarray
    ci: tuple
    converged: bool
    iterations: int
    ci_unclamped: tuple = ()
    counts: tuple = ()
    score: np.ndarray = field(default_factory=lambda: np.zeros(3))

    JSON_KEYS = ("alpha_hat", "log_likelihood", "aic", "caic", "bic_paper",
                 "bic_standard", "covariance", "ci", "converged", "iterations")

    def to_dict(self):
        """Plain-Python mapping with exactly the documented JSON keys."""
        return {
            "alpha_hat": [float(v) for v in self.alpha_hat],
            "log_likelihood": float(self.log_likelihood),
            "aic": float(self.aic),
            "caic": float(self.caic),
            "bic_paper": float(self.bic_paper),
            "bic_standard": float(self.bic_standard),
            "covariance": np.asarray(self.covariance, dtype=float).tolist(),
            "ci": [[float(lo), float(hi)] for lo, hi in self.ci],
            "converged": bool(self.converged),
            "iterations": int(self.iterations),
        }


def observed_information(theta, cls):
    """Negated Hessian of the log-likelihood."""
    return ObservedInformation(-hessian(theta, cls))


def wald_intervals(theta, covariance, level=0.95, clamp=True):
    """``theta_i -/+ z * sqrt(var_i)``, optionally clamped below at 0."""
    if not 0 < level < 1:
        raise DomainError("level must lie in (0, 1)")
    z = stats.norm.ppf(0.5 + level / 2)
    se = np.sqrt(np.diag(covariance))
    lo, hi = np.asarray(theta) - z * se, np.asarray(theta) + z * se
    if clamp:
        lo = np.maximum(lo, 0.0)
    return tuple((float(a), float(b)) for a, b in zip(lo, hi))


def covariance_and_ci(info, theta, level=0.95):
    """Invert the information matrix and form clamped Wald intervals."""
    mat = np.asarray(getattr(info, "matrix", info), dtype=float)
    if mat.shape != (3, 3) or not np.all(np.isfinite(mat)):
        raise DomainError("information matrix must be a finite 3x3 array")
    if np.linalg.cond(mat) > 1.0 / np.finfo(float).eps:
        raise DomainError("information matrix is singular")
    cov = np.linalg.inv(mat)
    cov = 0.5 * (cov + cov.T)
    if np.any(np.diag(cov) < 0):
        raise DomainError("information matrix is not positive definite")
    return CovarianceCI(cov, wald_intervals(theta, cov, level))


def information_criteria(log_lik, k, n):
    """AIC, small-sample corrected AIC and two BIC conventions.

    ``bic_paper`` is ``-log_lik + k/2 * ln n`` (half the usual BIC);
    ``bic_standard`` is ``-2 log_lik + k ln n``.
    """
    if n <= k + 1:
        raise DomainError(f"need n > k + 1 for the corrected AIC (n={n}, k={k})")
    aic = -2.0 * log_lik + 2.0 * k
    caic = aic + 2.0 * k * (k + 1) / (n - k - 1)
    return InformationCriteria(aic, caic, -log_lik + 0.5 * k * math.log(n),
                               -2.0 * log_lik + k * math.log(n))


def _profile_newton(st, start, opts):
    """Damped Newton on the profile likelihood in (alpha1, alpha2)."""
    counts = (st.n1, st.n2, st.n3)

    def full(x):
        return np.array([x[0], x[1], _profile(st, x[0], x[1])])

    x = np.asarray(start, dtype=float)
    theta = full(x)
    value = _loglik(st, theta)
    for it in range(1, opts.max_iter + 1):
        g = _score(st, theta)
        H = _hessian(counts, theta)
        # Schur complement: Hessian of the profile likelihood
        Hp = H[:2, :2] - np.outer(H[:2, 2], H[2, :2]) / H[2, 2]
        step = -np.linalg.solve(Hp, g[:2])
        if np.linalg.norm(g) < opts.tol and np.linalg.norm(step) < opts.step_tol:
            return theta, it, True
        # keep both shapes positive, then backtrack on the profile value
        neg = step < 0
        t = min(1.0, 0.9 * np.min(-x[neg] / step[neg])) if neg.any() else 1.0
        slope = g[:2] @ step
        while True:
            cand = x + t * step
            try:
                cand_theta = full(cand)
                cand_value = _loglik(st, cand_theta)
            except BoundaryError:
                cand_value = -math.inf
            if cand_value >= value + 1e-4 * t * slope or t < 1e-12:
                break
            t *= 0.5
        if t < 1e-12 and cand_value < value:
            # no further ascent is representable; report where we stand
            g = _score(st, theta)
            return theta, it, bool(np.linalg.norm(g) < opts.tol)
        x, theta, value = cand, cand_theta, cand_value
    return theta, opts.max_iter, False


def fit_mle(fixed, s, tie_tol=0.0, options=FitOptions(), init=None):
    """Fit the three shape parameters by maximum likelihood.

    Parameters
    ----------
    fixed : tuple of float
        Base parameters ``(a, b, c, d)``.
    s : PairedSample
    tie_tol : float
        Pairs with ``|x1 - x2| <= tie_tol`` are ties.
    options : FitOptions
    init : pair of float, optional
        Starting ``(alpha1, alpha2)``; defaults to group proportions + 0.01.

    Raises
    ------
    BoundaryError
        If a group is empty in a way that puts the maximiser on the boundary.
    """
    cls = classify(s, tie_tol)
    n = cls.n
    if n <= K_PARAMS + 1:
        raise DomainError(f"need more than {K_PARAMS + 1} pairs to fit, got {n}")
    if cls.n1 == 0 or cls.n2 == 0:
        raise BoundaryError(f"group counts {cls.counts}: an empty off-diagonal group drives "
                            "alpha1 or alpha2 to 0")
    st = _stats(fixed, cls, s)
    start = (init if init is not None
             else (cls.n1 / n + 0.01, cls.n2 / n + 0.01))
    _check_theta((*start, 1.0))
    theta, iterations, converged = _profile_newton(st, start, options)

    ll = _loglik(st, theta)
    crit = information_criteria(ll, K_PARAMS, n)
    cov, ci = covariance_and_ci(observed_information(theta, cls), theta, options.level)
    return FitResult(
        alpha_hat=tuple(float(v) for v in theta), log_likelihood=ll,
        aic=crit.aic, caic=crit.caic, bic_paper=crit.bic_paper,
        bic_standard=crit.bic_standard, covariance=cov, ci=ci,
        converged=converged, iterations=iterations,
        ci_unclamped=wald_intervals(theta, cov, options.level, clamp=False),
        counts=cls.counts, score=_score(st, theta),
    )
