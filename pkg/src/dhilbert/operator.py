"""Truncated Hankel operators on Taylor coefficients.

* ``H_mu``:  ``c_n = sum_k mu_{n+k} a_k``
* ``DH_mu``: ``b_n = (n+1) sum_k mu_{n+k} a_k = ((z H_mu f)(z))'``
* ``V_alpha`` and ``T_beta``: diagonal weights ``(n+1)**((1-alpha)/2)`` and
  ``(n+1)**((beta-1)/2)``
* ``S_mu``: the conjugated matrix
  ``(n+1)**((3-beta)/2) (k+1)**((alpha-1)/2) mu_{n+k}`` such that
  ``DH_mu = T_beta S_mu V_alpha``.

Dense matrices are indexed from zero: a ``TruncatedMatrix`` with ``rows=N``
covers output coefficients ``0 .. N-1``.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DomainError, ResourceError
from .measure import moment_sequence
from .spaces import CoefficientFunction, as_coefficients, dirichlet_norm

__all__ = [
    "MAX_ENTRIES",
    "TruncatedMatrix",
    "apply_h",
    "apply_dh",
    "derivative_identity_check",
    "v_alpha",
    "t_beta",
    "hankel_block",
    "dh_matrix",
    "s_mu_matrix",
    "factorization_check",
    "tail_block",
    "moment_constant",
    "well_defined_bound",
]

MAX_ENTRIES = 2**26
LABELS = ("S_mu", "tail_block", "raw_DH")


@dataclass(frozen=True)
class TruncatedMatrix:
    entries: np.ndarray
    label: str

    def __post_init__(self):
        if self.label not in LABELS:
            raise ValueError(f"unknown matrix label {self.label!r}")
        if self.entries.ndim != 2:
            raise ValueError("entries must be two-dimensional")
        if np.any(self.entries < 0):
            raise ValueError("operator matrices here are entrywise nonnegative")
        self.entries.setflags(write=False)

    @property
    def rows(self):
        return self.entries.shape[0]

    @property
    def cols(self):
        return self.entries.shape[1]

    def __matmul__(self, v):
        return self.entries @ v


def _moments(m, top):
    # moment_sequence needs N >= 1
    return moment_sequence(m, max(top, 1)).values[: top + 1]


def _hankel_apply(m, a, N):
    # c_n = sum_k mu_{n+k} a_k for n = 0..N, as a sliding dot product
    K = a.size - 1
    mu = _moments(m, N + K)
    return np.correlate(mu, a, mode="valid")


def apply_h(m, f, N):
    """Coefficients ``c_0 .. c_N`` of ``H_mu f``."""
    a = as_coefficients(f)
    N = int(N)
    if N < 0:
        raise DomainError(f"N must be >= 0, got {N}")
    return CoefficientFunction(_hankel_apply(m, a, N))


def apply_dh(m, f, N):
    """Coefficients ``b_0 .. b_N`` of ``DH_mu f``."""
    a = as_coefficients(f)
    N = int(N)
    if N < 0:
        raise DomainError(f"N must be >= 0, got {N}")
    weights = np.arange(1, N + 2, dtype=float)
    return CoefficientFunction(weights * _hankel_apply(m, a, N))


def derivative_identity_check(m, f, N):
    """Max deviation between ``DH_mu f`` and ``(z H_mu f)'``.

    The right-hand side is formed from a dense Hankel product and numpy's
    polynomial derivative, independently of :func:`apply_dh`.
    """
    a = as_coefficients(f)
    N = int(N)
    K = a.size - 1
    mu = _moments(m, N + K)
    hankel = scipy.linalg.hankel(mu[: N + 1], mu[N : N + K + 1])
    c = hankel @ a
    z_times = np.concatenate(([0.0], c))
    derivative = np.polynomial.polynomial.polyder(z_times)
    return float(np.max(np.abs(derivative - apply_dh(m, a, N).coeffs)))


def v_alpha(f, alpha):
    a = as_coefficients(f)
    w = np.arange(1, a.size + 1, dtype=float) ** (0.5 * (1.0 - alpha))
    return CoefficientFunction(w * a)


def t_beta(g, beta):
    b = as_coefficients(g)
    w = np.arange(1, b.size + 1, dtype=float) ** (0.5 * (beta - 1.0))
    return CoefficientFunction(w * b)


def _check_shape(N, K):
    N, K = int(N), int(K)
    if N < 1 or K < 1:
        raise DomainError(f"matrix dimensions must be positive, got {N}x{K}")
    if N * K > MAX_ENTRIES:
        raise ResourceError(f"{N}x{K} matrix exceeds the {MAX_ENTRIES}-entry cap")
    return N, K


def hankel_block(m, N, K):
    """Plain moment Hankel block ``mu_{n+k}``, ``0 <= n < N``, ``0 <= k < K``."""
    mu = _moments(m, N + K - 2)
    return mu[np.add.outer(np.arange(N), np.arange(K))]


def dh_matrix(m, N, K=None):
    """Dense ``(n+1) mu_{n+k}`` for ``0 <= n < N``, ``0 <= k < K``."""
    N, K = _check_shape(N, N if K is None else K)
    rows = np.arange(1, N + 1, dtype=float)[:, None]
    return TruncatedMatrix(rows * hankel_block(m, N, K), "raw_DH")


def s_mu_matrix(m, p, N, K=None):
    """Dense ``S_mu`` truncated to ``N`` rows and ``K`` columns (default square)."""
    N, K = _check_shape(N, N if K is None else K)
    rows = np.arange(1, N + 1, dtype=float)[:, None] ** p.row_exponent
    cols = np.arange(1, K + 1, dtype=float)[None, :] ** p.col_exponent
    return TruncatedMatrix(rows * hankel_block(m, N, K) * cols, "S_mu")


def factorization_check(m, p, f, N):
    """Relative max deviation between ``T_beta S_mu V_alpha f`` and ``DH_mu f``.

    Both sides cover output coefficients ``0 .. N``.
    """
    a = as_coefficients(f)
    S = s_mu_matrix(m, p, int(N) + 1, a.size)
    lhs = t_beta(S @ v_alpha(a, p.alpha).coeffs, p.beta).coeffs
    rhs = apply_dh(m, a, N).coeffs
    scale = float(np.max(np.abs(rhs)))
    dev = float(np.max(np.abs(lhs - rhs)))
    if scale == 0.0:
        return dev
    return dev / scale


def tail_block(m, p, mcut, N, K=None):
    """``S_mu - S_{mu,mcut}``: the ``S_mu`` truncation with rows ``0..mcut`` zeroed."""
    N = int(N)
    mcut = int(mcut)
    if not 0 <= mcut < N:
        raise DomainError(f"need 0 <= mcut < N, got mcut={mcut}, N={N}")
    entries = np.array(s_mu_matrix(m, p, N, K).entries)
    entries[: mcut + 1] = 0.0
    return TruncatedMatrix(entries, "tail_block")


def moment_constant(m, exponent, top, shift=1):
    """``sup_{j <= top} mu_j (j + shift)**exponent``.

    The smallest C with ``mu_j <= C (j+shift)**-exponent`` on the computed
    range; it certifies an O-type decay bound there.
    """
    mu = _moments(m, int(top))
    j = np.arange(mu.size, dtype=float)
    return float(np.max(mu * (j + shift) ** float(exponent)))


def well_defined_bound(m, alpha, eps, f, n):
    """Cauchy-Schwarz majorant for ``|sum_k mu_{n+k} a_k|``.

    Uses ``mu_j <= C (j+1)**-(alpha/2 + eps)`` with C taken as the sup over
    the moments involved, so the value is a certificate rather than an
    asymptotic bound.
    """
    eps = float(eps)
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps}")
    a = as_coefficients(f)
    n = int(n)
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    K = a.size - 1
    C = moment_constant(m, 0.5 * alpha + eps, n + K)
    k = np.arange(K + 1, dtype=float)
    kernel = np.sum((k + 1.0) ** (alpha - 1.0) * (n + k + 1.0) ** -(alpha + 2.0 * eps))
    return C * math.sqrt(kernel) * dirichlet_norm(a, alpha)
