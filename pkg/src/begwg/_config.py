from dataclasses import dataclass


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and limits shared by every integral and root solve.

    Attributes
    ----------
    quad_abs, quad_rel : float
        Absolute / relative targets handed to ``scipy.integrate.quad``.
    limit : int
        Maximum number of adaptive subintervals.
    tail_prob : float
        Probability mass allowed to be dropped at each end of an infinite
        range when truncating to a finite one.
    root_tol : float
        Target for ``|cdf(quantile(u)) - u|``.
    max_doublings : int
        Bracket expansions allowed before a quantile search gives up.
    max_newton : int
        Iteration cap for the vectorised safeguarded Newton solver.
    """

    quad_abs: float = 1e-10
    quad_rel: float = 1e-10
    limit: int = 500
    tail_prob: float = 1e-14
    root_tol: float = 1e-12
    max_doublings: int = 1024
    max_newton: int = 200


DEFAULT_CONFIG = QuadratureConfig()
