"""Norm estimation and the numerical experiments behind the boundedness and
compactness characterizations of ``DH_mu: D_alpha -> D_beta``.

Finite truncations can never prove boundedness.  Everything here reports
finite-scale evidence: norm growth across dyadic truncations, Carleson
ratios approaching ``t = 1``, moment decay, and the Hardy-type upper bound
``C_mu * B(2 - beta/2, alpha/2)``.
"""

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .measure import carleson_report, moment_decay_report, tail_mass
from .operator import apply_dh, moment_constant, s_mu_matrix, tail_block
from .spaces import adaptive_truncation, dirichlet_norm, test_function
from .specialfn import hardy_constant, hardy_kernel

__all__ = [
    "NormEstimate",
    "NormCurve",
    "TailNorm",
    "DiagnosticConfig",
    "DiagnosticReport",
    "l2_norm_estimate",
    "operator_norm_curve",
    "schur_ratio",
    "schur_inequality_check",
    "lower_bound_check",
    "compactness_diagnostic",
    "boundedness_diagnostic",
]

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 10000


class NormEstimate(NamedTuple):
    value: float
    vector: np.ndarray
    converged: bool
    iterations: int

    def __float__(self):
        return self.value


def l2_norm_estimate(M, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """Largest singular value of a nonnegative matrix by power iteration.

    Iterates the Gram map ``v -> M^T (M v)`` from the all-ones vector and
    stops once the Rayleigh quotient changes by less than ``tol`` relative.
    The matrix is rescaled by its largest entry first so that tiny tail
    blocks do not underflow.  ``vector`` is the unit right singular vector.
    """
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    A = getattr(M, "entries", M)
    A = np.asarray(A, dtype=float)
    cols = A.shape[1]
    scale = float(np.max(np.abs(A))) if A.size else 0.0
    v = np.full(cols, 1.0 / math.sqrt(cols))
    if scale == 0.0:
        return NormEstimate(0.0, v, True, 0)
    B = A / scale
    prev = 0.0
    lam = 0.0
    for it in range(1, max_iter + 1):
        w = B @ v
        lam = float(w @ w)
        z = B.T @ w
        nz = float(np.linalg.norm(z))
        if nz == 0.0:
            return NormEstimate(0.0, v, True, it)
        v = z / nz
        if abs(lam - prev) <= tol * lam:
            return NormEstimate(scale * math.sqrt(lam), v, True, it)
        prev = lam
    return NormEstimate(scale * math.sqrt(lam), v, False, max_iter)


@dataclass(frozen=True)
class NormCurve:
    truncations: list
    estimates: list
    growth_ratios: list
    converged: list

    def to_dict(self):
        return {
            "truncations": list(self.truncations),
            "estimates": list(self.estimates),
            "growth_ratios": list(self.growth_ratios),
            "converged": list(self.converged),
        }


def _growth(prev, cur):
    if prev == 0.0:
        return 1.0 if cur == 0.0 else math.inf
    return cur / prev


def operator_norm_curve(m, p, truncations, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """``||S_mu||`` estimates at each square truncation in ``truncations``."""
    truncations = [int(N) for N in truncations]
    if any(b <= a for a, b in zip(truncations, truncations[1:])):
        raise DomainError("truncations must be strictly increasing")
    results = [l2_norm_estimate(s_mu_matrix(m, p, N), tol, max_iter) for N in truncations]
    estimates = [r.value for r in results]
    growth = [_growth(a, b) for a, b in zip(estimates, estimates[1:])]
    return NormCurve(truncations, estimates, growth, [r.converged for r in results])


def _kernel_matrix(p, K):
    idx = np.arange(1, K + 1, dtype=float)
    return hardy_kernel(idx[:, None], idx[None, :], p)


def schur_ratio(p, a, kernel=None):
    """``sum_n (sum_k K(n,k) a_k)**2 / (C**2 sum_k a_k**2)`` over ``1 <= n, k <= len(a)``.

    The zero vector gives 0.
    """
    a = np.asarray(a, dtype=float)
    denom = float(a @ a)
    if denom == 0.0:
        return 0.0
    if kernel is None:
        kernel = _kernel_matrix(p, a.size)
    image = kernel @ a
    return float(image @ image) / (hardy_constant(p) ** 2 * denom)


def _random_nonnegative(rng, K, trials):
    # power-law profiles k**-gamma, gamma in [0.5, 1], sit close to the extremal
    # sequences k**-1/2; the uniform factor breaks any regularity
    k = np.arange(1, K + 1, dtype=float)
    gammas = rng.uniform(0.5, 1.0, size=trials)
    return rng.random((K, trials)) * k[:, None] ** -gammas[None, :]


def schur_inequality_check(p, trials=100, K=2048, seed=0):
    """Largest :func:`schur_ratio` over seeded random nonnegative vectors.

    Random numbers come from ``numpy.random.default_rng(seed)`` (PCG64).
    """
    if trials < 1:
        raise DomainError("need at least one trial")
    if K < 16:
        raise DomainError(f"K must be >= 16, got {K}")
    rng = np.random.default_rng(seed)
    kernel = _kernel_matrix(p, K)
    vectors = _random_nonnegative(rng, K, trials)
    images = kernel @ vectors
    ratios = np.sum(images**2, axis=0) / (hardy_constant(p) ** 2 * np.sum(vectors**2, axis=0))
    return float(np.max(ratios))


def lower_bound_check(m, p, tgrid, min_truncation=256):
    """Ratios ``mu([t,1)) / ((1-t**2)**s ||DH_mu f_t||_{D_beta})`` along ``tgrid``.

    Uniformly bounded ratios are what boundedness of ``DH_mu`` predicts.
    A zero image with positive tail mass gives ``inf``.
    """
    s = p.carleson_exponent
    out = []
    for t in tgrid:
        t = float(t)
        if not 0.0 < t < 1.0:
            raise DomainError(f"t must lie in (0, 1), got {t}")
        N = max(adaptive_truncation(t), min_truncation)
        f = test_function(t, p.alpha, N)
        image = dirichlet_norm(apply_dh(m, f, N), p.beta)
        tail = tail_mass(m, t)
        denom = (1.0 - t * t) ** s * image
        if denom == 0.0:
            out.append((t, 0.0 if tail == 0.0 else math.inf))
        else:
            out.append((t, tail / denom))
    return out


class TailNorm(NamedTuple):
    mcut: int
    norm: float
    converged: bool


def compactness_diagnostic(m, p, N, cuts, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """Norms of ``S_mu - S_{mu,mcut}`` (rows ``0..mcut`` removed) at truncation N."""
    cuts = [int(c) for c in cuts]
    if any(b <= a for a, b in zip(cuts, cuts[1:])):
        raise DomainError("cuts must be strictly increasing")
    out = []
    for c in cuts:
        est = l2_norm_estimate(tail_block(m, p, c, N), tol, max_iter)
        out.append(TailNorm(c, est.value, est.converged))
    return out


@dataclass(frozen=True)
class DiagnosticConfig:
    truncations: tuple = (128, 256, 512, 1024)
    carleson_grid: tuple = None
    decay_N: int = 4096
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER


@dataclass(frozen=True)
class DiagnosticReport:
    params: dict
    carleson: object
    moment_decay: tuple
    norm_curve: NormCurve
    moment_constant: float
    hardy_bound: float
    verdict_notes: list = field(default_factory=list)

    def to_dict(self):
        return {
            "params": dict(self.params),
            "carleson": self.carleson.to_dict(),
            "moment_decay": {"sup": self.moment_decay[0], "trend": self.moment_decay[1]},
            "norm_curve": self.norm_curve.to_dict(),
            "moment_constant": self.moment_constant,
            "hardy_bound": self.hardy_bound,
            "verdict_notes": list(self.verdict_notes),
        }


def _notes(carleson, decay, curve, hardy_bound):
    notes = []
    if carleson.sup_ratio == 0.0:
        notes.append("carleson: zero tail mass near t = 1")
    elif carleson.vanishing_trend < 0.5:
        notes.append("carleson: ratios bounded and decaying (vanishing-Carleson behaviour)")
    elif carleson.vanishing_trend <= 2.0:
        notes.append("carleson: ratios bounded on the grid")
    else:
        notes.append("carleson: ratios grow toward t = 1")
    sup, trend = decay
    if sup == 0.0:
        notes.append("moments: all zero")
    elif trend < 0.5:
        notes.append("moments: decay faster than the critical order (little-o)")
    elif trend <= 1.1:
        notes.append("moments: decay at the critical order")
    else:
        notes.append("moments: decay slower than the critical order")
    if curve.growth_ratios:
        last = curve.growth_ratios[-1]
        if last <= 1.05:
            notes.append(f"norm curve: stable (last doubling ratio {last:.4f})")
        else:
            notes.append(f"norm curve: growing (last doubling ratio {last:.4f})")
    if curve.estimates and curve.estimates[-1] > hardy_bound * (1 + 1e-6):
        notes.append("upper bound violated: norm estimate exceeds C_mu * B")
    if not all(curve.converged):
        notes.append("power iteration did not converge at every truncation")
    return notes


def boundedness_diagnostic(m, p, config=None):
    """Collect the Carleson, moment-decay and operator-norm evidence at order s."""
    config = config or DiagnosticConfig()
    s = p.carleson_exponent
    grid = None if config.carleson_grid is None else list(config.carleson_grid)
    carleson = carleson_report(m, s, grid)
    decay = moment_decay_report(m, s, config.decay_N)
    curve = operator_norm_curve(m, p, config.truncations, config.tol, config.max_iter)
    # mu_j <= C (j+2)**-s over every index the largest truncation touches
    C = moment_constant(m, s, 2 * max(config.truncations) - 2, shift=2)
    bound = C * hardy_constant(p)
    params = {
        "alpha": p.alpha,
        "beta": p.beta,
        "s": s,
        # the well-definedness exponent alpha/2 + eps with eps = 2 - beta/2
        "eps": 2.0 - 0.5 * p.beta,
    }
    return DiagnosticReport(
        params, carleson, decay, curve, C, bound, _notes(carleson, decay, curve, bound)
    )
