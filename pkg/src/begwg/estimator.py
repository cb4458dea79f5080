"""scikit-learn style front end for fitting the bivariate EGWG shapes."""
import numpy as np
from sklearn.base import BaseEstimator, DensityMixin
from sklearn.utils.validation import check_is_fitted

from . import bivariate
from ._validation import check_pairs, check_rng
from .bivariate import BegwgParams
from .estimation import FitOptions, PairedSample, fit_mle


class BivariateEGWGD(DensityMixin, BaseEstimator):
    """Maximum-likelihood fit of ``(alpha1, alpha2, alpha3)`` for fixed ``(a, b, c, d)``.

    Parameters
    ----------
    a, b, c, d : float
        Fixed base parameters.
    tie_tol : float
        Pairs with ``|x1 - x2| <= tie_tol`` are treated as ties.
    level : float
        Coverage of the Wald intervals.
    max_iter : int
    tol : float
        Score-norm tolerance of the Newton iteration.

    Attributes
    ----------
    alpha_ : ndarray of shape (3,)
    params_ : BegwgParams
    result_ : FitResult
    n_features_in_ : int
    """

    def __init__(self, a=0.1, b=0.2, c=0.2, d=0.5, tie_tol=0.0, level=0.95,
                 max_iter=100, tol=1e-8):
        self.a = a
        self.b = b
        self.c = c
        self.d = d
        self.tie_tol = tie_tol
        self.level = level
        self.max_iter = max_iter
        self.tol = tol

    def fit(self, X, y=None):
        X = check_pairs(X)
        opts = FitOptions(max_iter=self.max_iter, tol=self.tol, level=self.level)
        fixed = (self.a, self.b, self.c, self.d)
        self.result_ = fit_mle(fixed, PairedSample(X), self.tie_tol, opts)
        self.alpha_ = np.array(self.result_.alpha_hat)
        self.params_ = BegwgParams.from_base(fixed, self.alpha_)
        self.n_features_in_ = 2
        return self

    def score_samples(self, X):
        """Log joint density per pair (diagonal pairs use the singular part)."""
        check_is_fitted(self)
        X = check_pairs(X)
        logf, _ = bivariate.joint_log_pdf(self.params_, X[:, 0], X[:, 1])
        return np.atleast_1d(logf)

    def score(self, X, y=None):
        """Total log-likelihood of ``X`` under the fitted model."""
        return float(np.sum(self.score_samples(X)))

    def sample(self, n_samples=1, random_state=None):
        check_is_fitted(self)
        return bivariate.sample(self.params_, check_rng(random_state), n_samples)
