import math

import numpy as np
import pytest

from begwg import bivariate as bv
from begwg import moments as mo
from begwg.bivariate import BegwgParams
from begwg.exceptions import DomainError
from begwg.moments import SeriesControl

# marginal shapes: UNIT -> s = 2; BASE1 -> s = 1 with the default base
UNIT = BegwgParams(1, 1, 1, 1, 1, 1, 1)
BASE1 = BegwgParams(0.1, 0.2, 0.2, 0.5, 0.5, 0.5, 0.5)
P = BegwgParams(0.6, 1.2, 0.4, 0.8, 0.7, 1.3, 0.5)

# mpmath, 40 digits
EX_UNIT_S2 = 0.8803753208179418
EX2_UNIT_S2 = 0.8460894539581054
EX_BASE1 = 60.87147738493558
EX2_BASE1 = 6014.228799027695


def test_order_zero_is_one():
    assert mo.raw_moment_quadrature(P, 1, 0) == 1.0
    assert tuple(mo.raw_moment_series(P, 2, 0)) == (1.0, 0, True)


def test_bad_arguments():
    for r in (-1, 1.5, True, "2"):
        with pytest.raises(DomainError):
            mo.raw_moment_quadrature(P, 1, r)
    with pytest.raises(DomainError):
        mo.raw_moment_quadrature(P, 0, 1)
    with pytest.raises(DomainError):
        SeriesControl(tol=0.0)
    with pytest.raises(DomainError):
        SeriesControl(max_terms_per_index=0)


def test_quadrature_against_oracle():
    assert mo.raw_moment_quadrature(UNIT, 1, 1) == pytest.approx(EX_UNIT_S2, rel=1e-10)
    assert mo.raw_moment_quadrature(UNIT, 2, 2) == pytest.approx(EX2_UNIT_S2, rel=1e-10)
    # heavy right tail: the range must reach far past x = 400
    assert mo.raw_moment_quadrature(BASE1, 1, 1) == pytest.approx(EX_BASE1, rel=1e-9)
    assert mo.raw_moment_quadrature(BASE1, 1, 2) == pytest.approx(EX2_BASE1, rel=1e-9)


def test_series_integer_shape_is_finite_sum():
    val, used, ok = mo.raw_moment_series(UNIT, 1, 1)
    assert ok and used == 2
    assert val == pytest.approx(EX_UNIT_S2, rel=1e-10)
    res = mo.raw_moment_series(BASE1, 2, 2)
    assert res.converged and res.terms_used == 1


def test_series_converges_for_large_shape():
    q = BegwgParams(0.6, 1.2, 0.4, 0.8, 5.0, 1.3, 0.5)
    ctl = SeriesControl()
    for r in (1, 2):
        res = mo.raw_moment_series(q, 1, r, ctl)
        assert res.converged
        assert res.value == pytest.approx(mo.raw_moment_quadrature(q, 1, r), rel=10 * ctl.tol)


def test_series_term_cap_reports_non_convergence():
    res = mo.raw_moment_series(P, 1, 1, SeriesControl(max_terms_per_index=1))
    assert res.terms_used == 1 and not res.converged
    assert np.isfinite(res.value)


def test_series_slow_shape_is_honest():
    # s = 1.2: terms decay like m^-1.2, so 20 terms are far from the tail test
    res = mo.raw_moment_series(P, 1, 1, SeriesControl(max_terms_per_index=20))
    assert not res.converged


def test_termwise_series_never_converges():
    res = mo.raw_moment_series_termwise(P, 1, 1, SeriesControl(max_terms_per_index=3))
    assert not res.converged
    assert not math.isfinite(res.value)


def test_jensen_and_monotone_in_shape():
    m1 = mo.raw_moment_quadrature(P, 2, 1)
    m2 = mo.raw_moment_quadrature(P, 2, 2)
    assert m2 >= m1 ** 2
    means = [mo.raw_moment_quadrature(BegwgParams(0.6, 1.2, 0.4, 0.8, a, 1.0, 0.5), 1, 1)
             for a in (0.2, 0.8, 2.0, 6.0)]
    assert np.all(np.diff(means) > 0)


def test_monte_carlo_mean():
    X = bv.sample(P, np.random.default_rng(99), 200_000)
    for i in (1, 2):
        x = X[:, i - 1]
        ref = mo.raw_moment_quadrature(P, i, 1)
        assert abs(x.mean() - ref) < 4 * x.std(ddof=1) / np.sqrt(len(x))


def test_overflowing_moment_raises():
    with pytest.raises(OverflowError):
        mo.raw_moment_quadrature(BASE1, 1, 400)
