import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from begwg import bivariate as bv
from begwg import reliability as rel
from begwg import univariate as uv
from begwg.bivariate import BegwgParams, Region
from begwg.exceptions import DomainError

import oracles

UNIT = BegwgParams(1, 1, 1, 1, 1, 1, 1)
UNIT_M2 = BegwgParams(1, 1, 1, 1, 1, 1, 1)   # marginal shape alpha1 + alpha3 = 2
FITTED = BegwgParams(0.1, 0.2, 0.2, 0.5, 0.0323, 0.186, 0.406)
P = BegwgParams(0.6, 1.2, 0.4, 0.8, 0.7, 1.3, 0.5)

# mpmath references
BVFR_FITTED_5_10 = 3.843940787378347e-4
RH_MARGINAL_07 = 4.690869834411251
RH_MARGINAL_13 = 0.4778100723994737
MWT_MARGINAL_1 = 0.2645038121582064
MWT_JOINT_08_15 = 0.1385983883568074

pts = st.tuples(st.floats(0.05, 3.0), st.floats(0.05, 3.0))


def fd(fn, x):
    return oracles.central_diff(fn, x)


# -- survival ---------------------------------------------------------------

def test_survival_origin_and_identity():
    assert rel.joint_survival(P, 0.0, 0.0) == 1.0
    rng = np.random.default_rng(0)
    x1, x2 = rng.uniform(0.01, 3, 200), rng.uniform(0.01, 3, 200)
    lhs = (rel.joint_survival(P, x1, x2) + bv.marginal_cdf(P, 1, x1)
           + bv.marginal_cdf(P, 2, x2) - bv.joint_cdf(P, x1, x2))
    np.testing.assert_allclose(lhs, 1.0, atol=1e-14)


@pytest.mark.parametrize("x1,x2", [(0.3, 1.2), (2.0, 0.6), (1.1, 1.1), (0.01, 0.02), (8.0, 3.0)])
def test_survival_against_oracle(x1, x2):
    ref = float(oracles.joint_survival(x1, x2, *FITTED.base, *FITTED.alphas))
    assert rel.joint_survival(FITTED, x1, x2) == pytest.approx(ref, rel=1e-13)


def test_survival_deep_tail_keeps_precision():
    # inclusion-exclusion would return 0 (or noise) here
    x1, x2 = 2.5, 3.0
    ref = oracles.joint_survival(x1, x2, *UNIT.base, *UNIT.alphas)
    assert float(ref) < 1e-20
    assert rel.joint_survival(UNIT, x1, x2) == pytest.approx(float(ref), rel=1e-12)


@settings(max_examples=30, deadline=None)
@given(pts, st.floats(0.01, 0.5))
def test_survival_bounded_and_non_increasing(x, dx):
    x1, x2 = x
    R = rel.joint_survival(P, x1, x2)
    assert 0.0 <= R <= 1.0
    assert rel.joint_survival(P, x1 + dx, x2) <= R * (1 + 1e-14)
    assert rel.joint_survival(P, x1, x2 + dx) <= R * (1 + 1e-14)


# -- Basu rate --------------------------------------------------------------

def test_bvfr_golden_and_identity():
    val, reg = rel.bvfr(FITTED, 5.0, 10.0)
    assert reg is Region.BELOW
    assert val == pytest.approx(BVFR_FITTED_5_10, rel=1e-12)
    rng = np.random.default_rng(1)
    for x1, x2 in rng.uniform(0.05, 2.5, (50, 2)):
        h, _ = rel.bvfr(P, x1, x2)
        f, _ = bv.joint_pdf(P, x1, x2)
        R = 1 - bv.marginal_cdf(P, 1, x1) - bv.marginal_cdf(P, 2, x2) + bv.joint_cdf(P, x1, x2)
        assert h == pytest.approx(f / R, rel=1e-9)


def test_far_tail_rates_are_refused():
    # log R is about -2.6e23 here; no double-precision ratio survives that
    assert np.isfinite(rel.log_joint_survival(UNIT, 40.0, 50.0))
    with pytest.raises(DomainError):
        rel.bvfr(UNIT, 40.0, 50.0)
    with pytest.raises(DomainError):
        rel.hazard_gradient(UNIT, 40.0, 50.0)
    with pytest.raises(DomainError):
        rel.cox_vector(UNIT, 40.0, 50.0)


# -- Cox vector ---------------------------------------------------------------

def test_cox_conditional_rates_are_univariate_hazards():
    h = rel.cox_vector(P, 1.3, 0.6)
    assert h.h_12 == pytest.approx(uv.hazard(P.component(P.alpha1), 1.3), rel=1e-14)
    assert h.h_21 == pytest.approx(uv.hazard(P.component(P.alpha2), 0.6), rel=1e-14)
    assert min(h) >= 0


@pytest.mark.parametrize("x1,x2", [(0.5, 1.4), (1.7, 0.9)])
def test_cox_min_rate_is_log_derivative(x1, x2):
    m = min(x1, x2)
    h = rel.cox_vector(P, x1, x2).h_diag
    ref = fd(lambda t: -np.log1p(-bv.min_cdf(P, t)), m)
    assert h == pytest.approx(ref, rel=1e-5)


def test_cox_independence_limit():
    q = BegwgParams(0.7, 1.1, 0.5, 0.9, 1.3, 0.8, 1e-8)
    for x in (0.4, 1.2):
        h = rel.cox_vector(q, x, x + 1).h_diag
        added = uv.hazard(q.marginal(1), x) + uv.hazard(q.marginal(2), x)
        assert h == pytest.approx(added, rel=1e-5)


# -- hazard gradient ----------------------------------------------------------

@pytest.mark.parametrize("x1,x2", [(0.5, 2.0), (3.0, 1.2), (0.01, 0.02), (8.0, 3.0)])
def test_hazard_gradient_against_oracle(x1, x2):
    ref = oracles.neg_log_survival_grad(x1, x2, *FITTED.base, *FITTED.alphas)
    g = rel.hazard_gradient(FITTED, x1, x2)
    assert g.g1 == pytest.approx(float(ref[0]), rel=1e-11)
    assert g.g2 == pytest.approx(float(ref[1]), rel=1e-11)


@settings(max_examples=40, deadline=None)
@given(pts)
def test_hazard_gradient_finite_differences(x):
    x1, x2 = x
    if abs(x1 - x2) < 1e-3:
        return
    g = rel.hazard_gradient(P, x1, x2)
    lr = lambda a, b: rel.log_joint_survival(P, a, b)
    assert g.g1 == pytest.approx(-fd(lambda v: lr(v, x2), x1), rel=1e-5, abs=1e-9)
    assert g.g2 == pytest.approx(-fd(lambda v: lr(x1, v), x2), rel=1e-5, abs=1e-9)


def test_hazard_gradient_diagonal_is_error():
    with pytest.raises(DomainError):
        rel.hazard_gradient(P, 1.0, 1.0)


def test_hazard_gradient_swap_symmetry():
    g = rel.hazard_gradient(P, 0.4, 1.7)
    s = rel.hazard_gradient(P.swapped(), 1.7, 0.4)
    assert g.g1 == pytest.approx(s.g2, rel=1e-13)
    assert g.g2 == pytest.approx(s.g1, rel=1e-13)


def test_hazard_gradient_independence_limit():
    q = BegwgParams(0.7, 1.1, 0.5, 0.9, 1.3, 0.8, 1e-10)
    g = rel.hazard_gradient(q, 0.6, 1.4)
    assert g.g1 == pytest.approx(uv.hazard(q.marginal(1), 0.6), rel=1e-7)
    assert g.g2 == pytest.approx(uv.hazard(q.marginal(2), 1.4), rel=1e-7)


# -- reversed hazards ---------------------------------------------------------

def test_reversed_hazard_identity():
    rng = np.random.default_rng(2)
    for x1, x2 in rng.uniform(0.05, 2.5, (50, 2)):
        r, reg = rel.reversed_hazard(P, x1, x2)
        f, reg2 = bv.joint_pdf(P, x1, x2)
        assert reg == reg2
        assert r == pytest.approx(f / bv.joint_cdf(P, x1, x2), rel=1e-12)
    r3, reg = rel.reversed_hazard(P, 0.9, 0.9)
    assert reg is Region.DIAGONAL


def test_reversed_hazard_near_origin_factorises():
    # below the diagonal F = G1^(a1+a3) G2^a2, so the rate splits into two factors
    x1, x2 = 1e-300, 1.0
    r, reg = rel.reversed_hazard(FITTED, x1, x2)
    assert reg is Region.BELOW and np.isfinite(r)
    first = rel.reversed_hazard_gradient(FITTED, x1, x2).g1
    comp = FITTED.component(FITTED.alpha2)
    second = uv.pdf(comp, x2) / uv.cdf(comp, x2)
    assert r == pytest.approx(first * second, rel=1e-12)


def test_reversed_hazard_gradient_values():
    g = rel.reversed_hazard_gradient(UNIT_M2, 0.7, 1.3)
    assert g.g1 == pytest.approx(RH_MARGINAL_07, rel=1e-13)
    assert g.g2 == pytest.approx(RH_MARGINAL_13, rel=1e-13)
    for x in (0.3, 1.9):
        ref = fd(lambda v: np.log(bv.marginal_cdf(P, 2, v)), x)
        assert rel.reversed_hazard_gradient(P, 1.0, x).g2 == pytest.approx(ref, rel=1e-5)
        ratio = bv.marginal_pdf(P, 1, x) / bv.marginal_cdf(P, 1, x)
        assert rel.reversed_hazard_gradient(P, x, 1.0).g1 == pytest.approx(ratio, rel=1e-13)
    with pytest.raises(DomainError):
        rel.reversed_hazard_gradient(P, 0.0, 1.0)


# -- mean waiting times -------------------------------------------------------

def test_mwt_marginal_golden_and_bounds():
    assert rel.mean_waiting_time_marginal(UNIT_M2, 1, 1.0) == pytest.approx(MWT_MARGINAL_1, rel=1e-10)
    for t in (1e-3, 0.1, 1.0, 5.0):
        m = rel.mean_waiting_time_marginal(P, 2, t)
        assert 0 < m < t
    assert rel.mean_waiting_time_marginal(P, 1, 1e-4) < 1e-4


def test_mwt_marginal_definitional_rearrangement():
    t = 1.7
    Ft = bv.marginal_cdf(P, 1, t)
    direct = integrate.quad(lambda x: bv.marginal_cdf(P, 1, x), 0, t, epsabs=1e-13)[0]
    assert Ft * rel.mean_waiting_time_marginal(P, 1, t) == pytest.approx(direct, abs=1e-8)


def test_mwt_joint_golden_bounds_and_monotone():
    assert rel.mean_waiting_time_joint(UNIT, 0.8, 1.5) == pytest.approx(MWT_JOINT_08_15, rel=1e-9)
    grid = [0.4, 0.9, 1.6]
    vals = np.array([[rel.mean_waiting_time_joint(P, a, b) for b in grid] for a in grid])
    for a, row in zip(grid, vals):
        for b, v in zip(grid, row):
            assert 0 < v < a * b
    assert np.all(np.diff(vals, axis=0) >= -1e-12)
    assert np.all(np.diff(vals, axis=1) >= -1e-12)


def test_mwt_domain_errors():
    with pytest.raises(DomainError):
        rel.mean_waiting_time_marginal(P, 1, 0.0)
    with pytest.raises(DomainError):
        rel.mean_waiting_time_marginal(P, 3, 1.0)
    with pytest.raises(DomainError):
        rel.mean_waiting_time_joint(FITTED, 0.0, 1.0)
    assert 0 < rel.mean_waiting_time_joint(FITTED, 1e-300, 1.0) < 1e-300
