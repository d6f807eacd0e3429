"""Gamma/Beta functions, the incomplete Beta tail, and the homogeneous kernel
``K(x, y) = x**((3-beta)/2) * y**((alpha-1)/2) / (x+y)**(2-(beta-alpha)/2)``.

The kernel is non-negative and homogeneous of degree -1.  Its integral
constant ``int_0^inf K(x, 1) x**-0.5 dx`` equals ``B(2 - beta/2, alpha/2)``,
which :func:`hardy_constant` returns in closed form and
:func:`kernel_integral_check` recomputes by quadrature.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, QuadratureError

__all__ = [
    "KernelParams",
    "QuadratureSpec",
    "log_gamma",
    "gamma",
    "beta",
    "log_beta",
    "incomplete_beta_tail",
    "hardy_kernel",
    "log_hardy_kernel",
    "hardy_constant",
    "kernel_integral_check",
]

# Lanczos approximation, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True)
class KernelParams:
    """Source/target Dirichlet exponents ``0 < alpha <= 2 <= beta < 4``."""

    alpha: float
    beta: float

    def __post_init__(self):
        a, b = float(self.alpha), float(self.beta)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise DomainError(f"non-finite kernel parameters ({a}, {b})")
        if not 0.0 < a <= 2.0:
            raise DomainError(f"alpha must lie in (0, 2], got {a}")
        if not 2.0 <= b < 4.0:
            raise DomainError(f"beta must lie in [2, 4), got {b}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def carleson_exponent(self):
        """``s = 2 - (beta - alpha)/2``, the Carleson / moment-decay order."""
        return 2.0 - 0.5 * (self.beta - self.alpha)

    @property
    def row_exponent(self):
        return 0.5 * (3.0 - self.beta)

    @property
    def col_exponent(self):
        return 0.5 * (self.alpha - 1.0)


def _check_positive(name, x):
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"{name} must be positive and finite, got {x}")
    return x


def log_gamma(x):
    """Natural log of Gamma(x) for real x > 0.

    Uses reflection below 0.5 so the Lanczos sum is only evaluated on
    ``[0.5, inf)``.
    """
    x = _check_positive("x", x)
    if x < 0.5:
        # Gamma(x) Gamma(1-x) = pi / sin(pi x); sin(pi x) > 0 on (0, 0.5)
        return math.log(math.pi / math.sin(math.pi * x)) - log_gamma(1.0 - x)
    z = x - 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * math.log(t) - t + math.log(acc)


def gamma(x):
    return math.exp(log_gamma(x))


def log_beta(s, t):
    s = _check_positive("s", s)
    t = _check_positive("t", t)
    return log_gamma(s) + log_gamma(t) - log_gamma(s + t)


def beta(s, t):
    """Euler Beta function ``Gamma(s) Gamma(t) / Gamma(s + t)``.

    When one argument is a small positive integer m the finite product
    ``(m-1)! / (x (x+1) ... (x+m-1))`` is used; otherwise the Lanczos
    log-gamma.
    """
    s = _check_positive("s", s)
    t = _check_positive("t", t)
    for m, x in ((t, s), (s, t)):
        if m == int(m) and m <= 64:
            out = 1.0
            for j in range(1, int(m)):
                out *= j / (x + j)
            return out / x
    return math.exp(log_beta(s, t))


def _beta_cf(p, q, x, tol, max_iter):
    """Continued fraction for the incomplete Beta function (modified Lentz)."""
    tiny = 1e-300
    qab = p + q
    qap = p + 1.0
    qam = p - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (q - m) * x / ((qam + m2) * (p + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(p + m) * (qab + m) * x / ((p + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < tol:
            return h
    raise ConvergenceError(
        f"incomplete beta continued fraction did not converge (p={p}, q={q}, x={x})"
    )


def _lower_incomplete(p, q, x, tol, max_iter):
    # int_0^x u^(p-1) (1-u)^(q-1) du, valid when x < (p+1)/(p+q+2)
    if x == 0.0:
        return 0.0
    front = math.exp(p * math.log(x) + q * math.log1p(-x))
    return front * _beta_cf(p, q, x, tol, max_iter) / p


def incomplete_beta_tail(t, a, b, tol=1e-10, max_iter=10000):
    """``int_t^1 u**a (1-u)**b du`` for ``a >= 0``, ``b > -1``, ``0 <= t < 1``.

    ``a == 0`` uses the exact power formula; otherwise the continued
    fraction is evaluated on whichever side converges quickly.
    """
    t = float(t)
    if not 0.0 <= t < 1.0:
        raise DomainError(f"t must lie in [0, 1), got {t}")
    if a < 0 or b <= -1:
        raise DomainError(f"need a >= 0 and b > -1, got a={a}, b={b}")
    if a == 0:
        return (1.0 - t) ** (b + 1.0) / (b + 1.0)
    if t == 0.0:
        return beta(a + 1.0, b + 1.0)
    # substitute v = 1 - u: int_0^(1-t) v^b (1-v)^a dv
    p, q, x = b + 1.0, a + 1.0, 1.0 - t
    if x < (p + 1.0) / (p + q + 2.0):
        return _lower_incomplete(p, q, x, tol, max_iter)
    return beta(p, q) - _lower_incomplete(q, p, t, tol, max_iter)


def hardy_kernel(x, y, p):
    """Evaluate ``K(x, y)`` for positive x, y (scalars or arrays)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(~(x > 0)) or np.any(~(y > 0)):
        raise DomainError("hardy_kernel needs x > 0 and y > 0")
    out = x ** p.row_exponent * y ** p.col_exponent * (x + y) ** (-p.carleson_exponent)
    return out if out.ndim else float(out)


def log_hardy_kernel(log_x, log_y, p):
    """``log K(x, y)`` from ``log x`` and ``log y``; never under/overflows."""
    log_x = np.asarray(log_x, dtype=float)
    log_y = np.asarray(log_y, dtype=float)
    return (
        p.row_exponent * log_x
        + p.col_exponent * log_y
        - p.carleson_exponent * np.logaddexp(log_x, log_y)
    )


def hardy_constant(p):
    """Closed form ``B(2 - beta/2, alpha/2)`` of the kernel integral."""
    first = 2.0 - 0.5 * p.beta
    if first <= 0.0:
        raise DomainError("beta = 4 makes the Beta argument vanish")
    return beta(first, 0.5 * p.alpha)


@dataclass(frozen=True)
class QuadratureSpec:
    """Composite Gauss-Legendre rule on the compactified variable.

    ``panels * order`` is the node count.  With ``graded`` set, each half
    of ``(0, 1)`` is additionally mapped by a power substitution that
    absorbs the algebraic endpoint singularity.
    """

    panels: int = 100
    order: int = 20
    graded: bool = True
    tol: float = 1e-6

    @property
    def nodes(self):
        return self.panels * self.order


def _composite_nodes(panels, order):
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(0.0, 1.0, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def _log_integrand(log_u, log_1mu, p, variable):
    # g(x) = K(x,1) x^-1/2 (or K(1,y) y^-1/2) pulled back by x = u/(1-u)
    log_x = log_u - log_1mu
    if variable == "x":
        log_g = log_hardy_kernel(log_x, 0.0, p) - 0.5 * log_x
    else:
        log_g = log_hardy_kernel(0.0, log_x, p) - 0.5 * log_x
    return log_g - 2.0 * log_1mu


def _integrate(p, variable, panels, order, graded):
    w_nodes, w_weights = _composite_nodes(panels, order)
    log_w = np.log(w_nodes)
    # algebraic exponents of the pulled-back integrand at u = 0 and u = 1
    lo = 1.0 - 0.5 * p.beta
    hi = 0.5 * p.alpha - 1.0
    if variable == "y":
        lo, hi = hi, lo
    if not graded:
        log_u = log_w
        log_1mu = np.log1p(-w_nodes)
        return float(np.sum(w_weights * np.exp(_log_integrand(log_u, log_1mu, p, variable))))

    total = 0.0
    # left half: u = w**g / 2
    g = 1.0 / (lo + 1.0)
    log_u = math.log(0.5) + g * log_w
    log_1mu = np.log1p(-np.exp(log_u))
    log_jac = math.log(0.5 * g) + (g - 1.0) * log_w
    total += np.sum(w_weights * np.exp(_log_integrand(log_u, log_1mu, p, variable) + log_jac))
    # right half: 1 - u = w**g / 2
    g = 1.0 / (hi + 1.0)
    log_1mu = math.log(0.5) + g * log_w
    log_u = np.log1p(-np.exp(log_1mu))
    log_jac = math.log(0.5 * g) + (g - 1.0) * log_w
    total += np.sum(w_weights * np.exp(_log_integrand(log_u, log_1mu, p, variable) + log_jac))
    return float(total)


def kernel_integral_check(p, grid=None, variable="x"):
    """Integrate ``K(x,1) x**-0.5`` over ``(0, inf)`` numerically.

    ``variable="y"`` integrates ``K(1,y) y**-0.5`` instead.  The result is
    compared against a half-resolution rule; if the two differ by more than
    ``grid.tol`` (relative) a :class:`QuadratureError` carrying the
    partial value is raised.
    """
    if grid is None:
        grid = QuadratureSpec()
    if variable not in ("x", "y"):
        raise ValueError(f"variable must be 'x' or 'y', got {variable!r}")
    if grid.panels < 2 or grid.order < 1:
        raise ValueError("quadrature needs at least 2 panels and 1 node per panel")
    fine = _integrate(p, variable, grid.panels, grid.order, grid.graded)
    coarse = _integrate(p, variable, grid.panels // 2, grid.order, grid.graded)
    err = abs(fine - coarse)
    if not math.isfinite(fine) or err > grid.tol * max(1.0, abs(fine)):
        raise QuadratureError(
            f"kernel integral not resolved to {grid.tol:g}: "
            f"estimate {fine!r}, resolution change {err:.3g}",
            partial=fine,
            error_estimate=err,
        )
    return fine
