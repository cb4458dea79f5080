"""Adaptive quadrature in log-time, shared by every integral in the package."""
import warnings

import numpy as np
from scipy import integrate

from .exceptions import ConvergenceError


def quad(fn, lo, hi, config, points=None):
    """``scipy.integrate.quad`` that raises instead of warning."""
    if points is not None:
        points = [p for p in points if lo < p < hi] or None
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val, err = integrate.quad(fn, lo, hi, epsabs=config.quad_abs,
                                      epsrel=config.quad_rel, limit=config.limit,
                                      points=points)
        except integrate.IntegrationWarning as exc:
            raise ConvergenceError(f"quadrature did not converge: {exc}") from None
    return val


def quad_log_density(log_f, lo, hi, config, points=None):
    """Integrate ``f(x) dx`` over ``x in [e^lo, e^hi]`` given ``log f`` as a function of log x."""
    return quad(lambda t: np.exp(log_f(t) + t), lo, hi, config, points)
