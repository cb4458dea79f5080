"""Bivariate exponentiated generalized Weibull-Gompertz distribution.

Univariate law, Marshall-Olkin type bivariate model, reliability measures,
moments and maximum-likelihood fitting of the shape parameters.
"""
from . import bivariate, dataio, estimation, moments, reliability, univariate
from ._config import DEFAULT_CONFIG, QuadratureConfig
from .bivariate import BegwgParams, Region
from .dataio import load_csv, nfl_dataset, save_csv
from .estimation import (FitResult, PairedSample, classify, fit_mle,
                         information_criteria)
from .estimator import BivariateEGWGD
from .exceptions import BoundaryError, ConvergenceError, DataError, DomainError
from .moments import SeriesControl, raw_moment_quadrature, raw_moment_series
from .univariate import EgwgParams

__version__ = "0.1.0"

__all__ = [
    "bivariate", "dataio", "estimation", "moments", "reliability", "univariate",
    "DEFAULT_CONFIG", "QuadratureConfig", "BegwgParams", "Region", "EgwgParams",
    "PairedSample", "FitResult", "classify", "fit_mle", "information_criteria",
    "BivariateEGWGD", "SeriesControl", "raw_moment_quadrature", "raw_moment_series",
    "load_csv", "save_csv", "nfl_dataset", "BoundaryError", "ConvergenceError",
    "DataError", "DomainError",
]
