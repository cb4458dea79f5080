"""Input validation helpers shared by the functional API and the estimator."""
import numbers

import numpy as np
from sklearn.utils.validation import check_array

from .exceptions import DomainError


def check_positive_param(value, name):
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be a real number, got {value!r}") from None
    if not np.isfinite(value) or value <= 0.0:
        raise DomainError(f"{name} must be finite and > 0, got {value!r}")
    return value


def as_points(x, name="x", allow_zero=True):
    """Convert to a float array and reject negative / non-finite entries."""
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite")
    if allow_zero:
        if np.any(arr < 0.0):
            raise DomainError(f"{name} must be >= 0")
    elif np.any(arr <= 0.0):
        raise DomainError(f"{name} must be > 0")
    return arr


def as_probabilities(u, name="u"):
    arr = np.asarray(u, dtype=float)
    if not np.all((arr > 0.0) & (arr < 1.0)):
        raise DomainError(f"{name} must lie strictly inside (0, 1)")
    return arr


def check_count(n, name="n"):
    if not isinstance(n, numbers.Integral) or n < 0:
        raise DomainError(f"{name} must be a non-negative integer, got {n!r}")
    return int(n)


def check_which(which):
    if which not in (1, 2):
        raise DomainError(f"which must be 1 or 2, got {which!r}")
    return which


def check_pairs(X):
    """Validate an ``(n, 2)`` array of strictly positive lifetimes."""
    X = check_array(X, dtype=np.float64, ensure_2d=True, ensure_min_samples=0)
    if X.shape[1] != 2:
        raise DomainError(f"expected 2 columns (x1, x2), got {X.shape[1]}")
    if np.any(X <= 0.0):
        raise DomainError("lifetimes must be > 0")
    return X


def check_rng(random_state):
    """Return a ``numpy.random.Generator``; ints seed a fresh PCG64 stream."""
    if isinstance(random_state, np.random.Generator):
        return random_state
    if random_state is None or isinstance(random_state, numbers.Integral):
        return np.random.default_rng(random_state)
    raise DomainError(f"cannot build a random stream from {random_state!r}")


def scalar_or_array(arr):
    arr = np.asarray(arr)
    return arr[()] if arr.ndim == 0 else arr
