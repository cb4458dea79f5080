"""Marshall-Olkin type bivariate EGWG distribution.

With independent ``U_k ~ EGWG(a, b, c, d, alpha_k)``, ``k = 1, 2, 3``, the pair
is ``X_i = max(U_i, U_3)``.  The shared ``U_3`` puts positive probability on
the diagonal ``X_1 = X_2``, so the distribution has an absolutely continuous
part on each side of the diagonal plus a singular part on it.  Densities come
back with a :class:`Region` tag because the diagonal density is a
one-dimensional density along the line and must not be added to the
two-dimensional ones.
"""
import enum
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import univariate as uv
from ._config import DEFAULT_CONFIG
from ._quad import quad, quad_log_density
from ._validation import (as_points, check_count, check_positive_param,
                          check_rng, check_which, scalar_or_array)

__all__ = [
    "BegwgParams", "Region", "joint_cdf", "joint_log_cdf", "joint_pdf",
    "joint_log_pdf", "singular_mass", "total_mass", "marginal_pdf",
    "marginal_cdf", "conditional_pdf", "min_cdf", "max_cdf", "sample",
]


class Region(enum.IntEnum):
    """Which side of the diagonal a point lies on (values match f1/f2/f3)."""

    BELOW = 1     # x1 < x2
    ABOVE = 2     # x1 > x2
    DIAGONAL = 3  # x1 == x2

    @property
    def label(self):
        return self.name.lower()


@dataclass(frozen=True)
class BegwgParams:
    a: float
    b: float
    c: float
    d: float
    alpha1: float
    alpha2: float
    alpha3: float

    def __post_init__(self):
        for name in ("a", "b", "c", "d", "alpha1", "alpha2", "alpha3"):
            object.__setattr__(self, name, check_positive_param(getattr(self, name), name))

    @classmethod
    def from_base(cls, base, alphas):
        return cls(*base, *alphas)

    @property
    def base(self):
        return (self.a, self.b, self.c, self.d)

    @property
    def alphas(self):
        return (self.alpha1, self.alpha2, self.alpha3)

    @property
    def alpha_sum(self):
        return self.alpha1 + self.alpha2 + self.alpha3

    def component(self, alpha):
        """EGWG law sharing the base parameters with shape ``alpha``."""
        return uv.EgwgParams(self.a, self.b, self.c, self.d, alpha)

    @cached_property
    def _laws(self):
        # (U_1+U_3 side, U_2, U_1, U_2+U_3 side, max, base)
        a1, a2, a3 = self.alphas
        return tuple(self.component(al) for al in
                     (a1 + a3, a2, a1, a2 + a3, self.alpha_sum, 1.0))

    def marginal(self, which):
        which = check_which(which)
        return self.component((self.alpha1 if which == 1 else self.alpha2) + self.alpha3)

    def swapped(self):
        """Relabelled law of ``(X2, X1)``."""
        return BegwgParams(self.a, self.b, self.c, self.d,
                           self.alpha2, self.alpha1, self.alpha3)


def _regions(x1, x2):
    return np.where(x1 < x2, Region.BELOW, np.where(x1 > x2, Region.ABOVE, Region.DIAGONAL))


def _region_out(reg):
    reg = np.asarray(reg)
    return Region(int(reg)) if reg.ndim == 0 else reg


def _t(x):
    with np.errstate(divide="ignore"):
        return np.log(x)


def _log_G(p, t):
    # log of the base (alpha = 1) CDF
    return uv._kernel(t, p._laws[5])[3]


def _joint_log_cdf_t(p, t1, t2):
    return (p.alpha1 * _log_G(p, t1) + p.alpha2 * _log_G(p, t2)
            + p.alpha3 * _log_G(p, np.minimum(t1, t2)))


def joint_log_cdf(p, x1, x2):
    x1, x2 = np.broadcast_arrays(as_points(x1, "x1"), as_points(x2, "x2"))
    return scalar_or_array(_joint_log_cdf_t(p, _t(x1), _t(x2)))


def joint_cdf(p, x1, x2):
    """``P(X1 <= x1, X2 <= x2) = F_U1(x1) F_U2(x2) F_U3(min(x1, x2))``."""
    return scalar_or_array(np.exp(joint_log_cdf(p, x1, x2)))


def _branch(p, region, t1, t2):
    s1, u2, u1, s2, mx, _ = p._laws
    if region == Region.BELOW:
        return uv._log_pdf_t(t1, s1) + uv._log_pdf_t(t2, u2)
    if region == Region.ABOVE:
        return uv._log_pdf_t(t1, u1) + uv._log_pdf_t(t2, s2)
    # f3 = alpha3 / (a1 + a2 + a3) times the density of the maximum
    return np.log(p.alpha3 / p.alpha_sum) + uv._log_pdf_t(t1, mx)


def _joint_log_pdf_t(p, t1, t2):
    if np.ndim(t1) == 0 and np.ndim(t2) == 0:
        region = Region.BELOW if t1 < t2 else Region.ABOVE if t1 > t2 else Region.DIAGONAL
        return _branch(p, region, t1, t2)
    t1, t2 = np.broadcast_arrays(t1, t2)
    return np.where(t1 < t2, _branch(p, Region.BELOW, t1, t2),
                    np.where(t1 > t2, _branch(p, Region.ABOVE, t1, t2),
                             _branch(p, Region.DIAGONAL, t1, t2)))


def joint_log_pdf(p, x1, x2):
    """Log of :func:`joint_pdf`; returns ``(log_density, region)``."""
    x1, x2 = np.broadcast_arrays(as_points(x1, "x1", allow_zero=False),
                                 as_points(x2, "x2", allow_zero=False))
    val = _joint_log_pdf_t(p, np.log(x1), np.log(x2))
    return scalar_or_array(val), _region_out(_regions(x1, x2))


def joint_pdf(p, x1, x2):
    """Density with its region tag.

    Off the diagonal the value is a density with respect to area; on the
    diagonal it is the density of the singular part with respect to length
    along ``x1 == x2``.  Region is decided by exact comparison.
    """
    logf, reg = joint_log_pdf(p, x1, x2)
    return scalar_or_array(np.exp(logf)), reg


def marginal_pdf(p, which, x):
    """Density of ``X_which``: EGWG with shape ``alpha_which + alpha3``."""
    x = as_points(x, allow_zero=False)
    return uv.pdf(p.marginal(which), x)


def marginal_cdf(p, which, x):
    return uv.cdf(p.marginal(which), x)


def max_cdf(p, t):
    """CDF of ``max(X1, X2)``: EGWG with shape ``alpha1 + alpha2 + alpha3``."""
    return uv.cdf(p.component(p.alpha_sum), t)


def min_cdf(p, t):
    """CDF of ``min(X1, X2)``: ``F_X1(t) + F_X2(t) - F(t, t)``."""
    t = as_points(t, "t")
    out = marginal_cdf(p, 1, t) + marginal_cdf(p, 2, t) - max_cdf(p, t)
    return scalar_or_array(np.clip(out, 0.0, 1.0))


def conditional_pdf(p, i, xi, xj):
    """Conditional law of ``X_i`` given ``X_j = xj``, ``i != j``.

    Computed as joint density over the marginal density of ``X_j``.  The
    region tag compares ``xi`` with ``xj``; on the diagonal the value is the
    conditional point mass ``P(X_i = xj | X_j = xj)``.
    """
    i = check_which(i)
    xi = as_points(xi, "xi", allow_zero=False)
    xj = as_points(xj, "xj", allow_zero=False)
    j = 2 if i == 1 else 1
    x1, x2 = (xi, xj) if i == 1 else (xj, xi)
    logf, _ = joint_log_pdf(p, x1, x2)
    val = np.exp(logf - uv.log_pdf(p.marginal(j), xj))
    return scalar_or_array(val), _region_out(_regions(*np.broadcast_arrays(xi, xj)))


def _support_window(p, config):
    """log-time range holding all but ``tail_prob`` of every component."""
    light = p.component(min(p.alphas))
    heavy = p.component(p.alpha_sum)
    lo = float(uv._log_quantile(light, config.tail_prob, config))
    hi = float(uv._log_quantile(heavy, 1.0 - config.tail_prob, config))
    mid = float(uv._log_quantile(heavy, 0.5, config))
    return lo, hi, mid


def singular_mass(p, config=DEFAULT_CONFIG):
    """``P(X1 == X2)``: integral of the diagonal density, by quadrature."""
    lo, hi, mid = _support_window(p, config)
    diag = lambda t: _joint_log_pdf_t(p, t, t)
    return quad_log_density(diag, lo, hi, config, points=[mid])


def total_mass(p, config=DEFAULT_CONFIG):
    """Mass of the below-diagonal, above-diagonal and diagonal parts.

    Each off-diagonal part is an iterated integral of the joint density whose
    inner range ends on the diagonal; the three parts sum to one.
    """
    lo, hi, mid = _support_window(p, config)

    def side(order):
        def outer(s):
            def inner(r):
                t1, t2 = (r, s) if order == Region.BELOW else (s, r)
                return np.exp(_joint_log_pdf_t(p, t1, t2) + r)
            return np.exp(s) * quad(inner, lo, s, config, points=[mid])
        return quad(outer, lo, hi, config, points=[mid])

    return side(Region.BELOW), side(Region.ABOVE), singular_mass(p, config)


def sample(p, rng, n, config=DEFAULT_CONFIG):
    """Exact draws ``(max(U1, U3), max(U2, U3))`` as an ``(n, 2)`` array.

    Pairs where ``U3`` is the largest of the three come out as exact ties.
    """
    n = check_count(n)
    rng = check_rng(rng)
    u1, u2, u3 = (uv.sample(p.component(al), rng, n, config) for al in p.alphas)
    return np.column_stack([np.maximum(u1, u3), np.maximum(u2, u3)])
