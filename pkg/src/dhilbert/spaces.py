"""Truncated Taylor coefficient vectors and weighted Dirichlet norms.

``||f||_{D_alpha}**2 = sum_n (n+1)**(1-alpha) |a_n|**2``; alpha = 1 is the
Hardy space and alpha = 2 the Bergman space.
"""

import math

import numpy as np

from .errors import DomainError

__all__ = [
    "CoefficientFunction",
    "as_coefficients",
    "dirichlet_weights",
    "dirichlet_norm",
    "test_function",
    "adaptive_truncation",
    "truncation_tail",
    "MAX_TEST_COEFFS",
]

MAX_TEST_COEFFS = 2**16


class CoefficientFunction:
    """Real Taylor coefficients ``a_0 .. a_N`` of an analytic function."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        arr = np.array(coeffs, dtype=float).reshape(-1)
        if arr.size == 0:
            raise DomainError("a coefficient function needs at least one coefficient")
        if not np.all(np.isfinite(arr)):
            raise DomainError("coefficients must be finite")
        arr.setflags(write=False)
        self.coeffs = arr

    @property
    def truncation(self):
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def __repr__(self):
        return f"CoefficientFunction(N={self.truncation})"

    def __eq__(self, other):
        if not isinstance(other, CoefficientFunction):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    def __mul__(self, scalar):
        return CoefficientFunction(self.coeffs * float(scalar))

    __rmul__ = __mul__


def as_coefficients(f):
    if isinstance(f, CoefficientFunction):
        return f.coeffs
    return CoefficientFunction(f).coeffs


def dirichlet_weights(size, alpha):
    return np.arange(1, size + 1, dtype=float) ** (1.0 - float(alpha))


def dirichlet_norm(f, alpha):
    a = as_coefficients(f)
    # rescale so squares of tiny or huge coefficients stay representable
    big = float(np.max(np.abs(a)))
    if big == 0.0:
        return 0.0
    a = a / big
    return big * float(np.sqrt(np.sum(dirichlet_weights(a.size, alpha) * a * a)))


def adaptive_truncation(t, cutoff=1e-12, cap=MAX_TEST_COEFFS):
    """Smallest N with ``t**N < cutoff``, limited to ``cap - 1``."""
    if t <= 0.0:
        return 0
    N = math.ceil(math.log(cutoff) / math.log(t))
    if t**N >= cutoff:
        N += 1
    return min(N, cap - 1)


def test_function(t, alpha, N=None):
    """Coefficients of ``f_t(z) = (1-t**2)**(1-alpha/2) * sum_n t**n z**n``.

    With ``N=None`` the truncation is chosen so that ``t**N < 1e-12``.
    """
    t = float(t)
    if not 0.0 < t < 1.0:
        raise DomainError(f"t must lie in (0, 1), got {t}")
    if N is None:
        N = adaptive_truncation(t)
    N = int(N)
    if N < 0:
        raise DomainError(f"N must be >= 0, got {N}")
    pre = (1.0 - t * t) ** (1.0 - 0.5 * float(alpha))
    return CoefficientFunction(pre * t ** np.arange(N + 1, dtype=float))


def truncation_tail(t, alpha, N):
    """Upper bound on the squared D_alpha norm that ``f_t`` loses past index N.

    Bounds ``sum_{n>N} (n+1)**(1-alpha) (1-t**2)**(2-alpha) t**(2n)`` by a
    geometric series whose ratio dominates every consecutive term ratio.
    Returns ``inf`` if no such ratio below one exists for this N.
    """
    t = float(t)
    if not 0.0 <= t < 1.0:
        raise DomainError(f"t must lie in [0, 1), got {t}")
    if t == 0.0:
        return 0.0
    N = int(N)
    power = 1.0 - float(alpha)
    t2 = t * t
    first = (1.0 - t2) ** (2.0 - alpha) * (N + 2.0) ** power * t2 ** (N + 1)
    # consecutive term ratio ((n+2)/(n+1))**power * t**2 is largest at n = N+1
    ratio = max(1.0, ((N + 3.0) / (N + 2.0)) ** power) * t2
    if ratio >= 1.0:
        return math.inf
    return first / (1.0 - ratio)


# keep pytest from collecting the constructor when it is imported into a test module
test_function.__test__ = False
