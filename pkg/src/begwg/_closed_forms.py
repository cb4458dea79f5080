"""Direct algebraic forms of the bivariate quantities, in plain x-space.

These are the long expanded expressions written in terms of the base CDF
``G`` and base density ``q`` (both with ``alpha = 1``).  They are numerically
naive (no log-space, cancellation in the survival brackets) and exist only so
the tests can check them against the stable implementations.  Where an
expression is known to be wrong in its commonly quoted form, both the quoted
variant and the corrected one are kept so the disagreement stays pinned down.
"""
import numpy as np


def base_G(p, x):
    x = np.asarray(x, dtype=float)
    H = p.a * x**p.b * np.expm1(p.c * x**p.d)
    return -np.expm1(-H)


def base_q(p, x):
    x = np.asarray(x, dtype=float)
    z = p.c * x**p.d
    H = p.a * x**p.b * np.expm1(z)
    return (p.a * p.b * x**(p.b - 1) * np.exp(-H + z)
            * (1 + p.c * p.d / p.b * x**p.d - np.exp(-z)))


# -- joint survival branches ------------------------------------------------

def survival_below(p, x1, x2):
    """R for x1 < x2."""
    a1, a2, a3 = p.alphas
    G1, G2 = base_G(p, x1), base_G(p, x2)
    rho = G1**(-a1 - a3) * G2**(-a2) - G2**(-a2) - G1**(-a1 - a3) * G2**a3 + 1
    return G1**(a1 + a3) * G2**a2 * rho


def survival_above(p, x1, x2):
    """R for x1 > x2."""
    a1, a2, a3 = p.alphas
    G1, G2 = base_G(p, x1), base_G(p, x2)
    rho = G1**(-a1) * G2**(-a2 - a3) - G1**(-a1) - G1**a3 * G2**(-a2 - a3) + 1
    return G1**a1 * G2**(a2 + a3) * rho


def survival_above_variant(p, x1, x2):
    """Quoted variant of :func:`survival_above` with ``G2**a3`` in place of ``G1**a3``.

    Not a survival function; kept only to document the discrepancy.
    """
    a1, a2, a3 = p.alphas
    G1, G2 = base_G(p, x1), base_G(p, x2)
    rho = G1**(-a1) * G2**(-a2 - a3) - G1**(-a1) - G2**a3 * G2**(-a2 - a3) + 1
    return G1**a1 * G2**(a2 + a3) * rho


def survival_diagonal(p, x):
    a1, a2, a3 = p.alphas
    G = base_G(p, x)
    s = a1 + a2 + a3
    return G**s * (1 + G**(-s) - G**(-a2) - G**(-a1))


# -- Basu failure rate ------------------------------------------------------

def _rho(p, x1, x2, below):
    a1, a2, a3 = p.alphas
    G1, G2 = base_G(p, x1), base_G(p, x2)
    if below:
        return G1**(-a1 - a3) * G2**(-a2) - G2**(-a2) - G1**(-a1 - a3) * G2**a3 + 1
    return G1**(-a1) * G2**(-a2 - a3) - G1**(-a1) - G1**a3 * G2**(-a2 - a3) + 1


def bvfr_below(p, x1, x2):
    a1, a2, a3 = p.alphas
    num = a2 * (a1 + a3) * base_q(p, x1) * base_q(p, x2)
    return num / (_rho(p, x1, x2, True) * base_G(p, x1) * base_G(p, x2))


def bvfr_above(p, x1, x2):
    a1, a2, a3 = p.alphas
    num = a1 * (a2 + a3) * base_q(p, x1) * base_q(p, x2)
    return num / (_rho(p, x1, x2, False) * base_G(p, x1) * base_G(p, x2))


def bvfr_diagonal(p, x):
    a1, a2, a3 = p.alphas
    G = base_G(p, x)
    s = a1 + a2 + a3
    return a3 * base_q(p, x) / G / (1 + G**(-s) - G**(-a2) - G**(-a1))


# -- Cox conditional rates --------------------------------------------------

def cox_conditional(p, alpha, x):
    G = base_G(p, x)
    return alpha * base_q(p, x) * G**(alpha - 1) / (1 - G**alpha)


# -- reversed hazards -------------------------------------------------------

def reversed_hazard_offdiag(p, i, x1, x2):
    """r_i for region i (1: x1 < x2, 2: x1 > x2)."""
    a = p.alphas
    coef = a[2 - i] * (a[i - 1] + a[2])
    return (coef * base_q(p, x1) * base_q(p, x2)
            / (base_G(p, x1) * base_G(p, x2)))


def reversed_hazard_diagonal(p, x):
    return p.alpha3 * base_q(p, x) / base_G(p, x)


def reversed_hazard_marginal(p, i, x):
    return (p.alphas[i - 1] + p.alpha3) * base_q(p, x) / base_G(p, x)


# -- conditional densities of X_i given X_j = x_j ---------------------------

def conditional_below(p, i, xi, xj):
    """x_i < x_j."""
    a = p.alphas
    ai, aj, a3 = a[i - 1], a[2 - i], a[2]
    return (aj * (ai + a3) * base_q(p, xi) * base_G(p, xi)**(ai + a3 - 1)
            / ((aj + a3) * base_G(p, xj)**a3))


def conditional_above(p, i, xi, xj):
    """x_i > x_j."""
    ai = p.alphas[i - 1]
    return ai * base_q(p, xi) * base_G(p, xi)**(ai - 1)


def conditional_diagonal(p, i, x):
    a = p.alphas
    return a[2] * base_G(p, x)**a[i - 1] / (a[2 - i] + a[2])


def conditional_diagonal_variant(p, i, x):
    """Variant with exponent ``alpha1 - 1`` and ``alpha2 + alpha3`` below.

    Differs from :func:`conditional_diagonal`; kept to document the discrepancy.
    """
    a1, a2, a3 = p.alphas
    return a3 * base_G(p, x)**(a1 - 1) / (a2 + a3)
