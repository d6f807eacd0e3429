import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dhilbert.analysis import (
    DiagnosticConfig,
    boundedness_diagnostic,
    compactness_diagnostic,
    l2_norm_estimate,
    lower_bound_check,
    operator_norm_curve,
    schur_inequality_check,
    schur_ratio,
)
from dhilbert.errors import DomainError
from dhilbert.measure import Measure
from dhilbert.operator import TruncatedMatrix, moment_constant, s_mu_matrix
from dhilbert.specialfn import KernelParams, hardy_constant, hardy_kernel

BERGMAN = KernelParams(2, 2)


def test_norm_estimate_trivial_cases():
    zero = l2_norm_estimate(TruncatedMatrix(np.zeros((3, 4)), "S_mu"))
    assert zero.value == 0.0 and zero.converged
    assert l2_norm_estimate(np.array([[2.5]])).value == pytest.approx(2.5, rel=1e-15)


def test_norm_estimate_two_by_two(half_atom):
    # [[1, r], [r, 1/2]] with r = sqrt(2)/2: trace 3/2, determinant 0
    M = s_mu_matrix(half_atom, BERGMAN, 2, 2)
    assert l2_norm_estimate(M).value == pytest.approx(1.5, rel=1e-10)


@pytest.mark.parametrize("seed", range(5))
def test_norm_estimate_against_svd(seed):
    rng = np.random.default_rng(seed)
    A = rng.random((40, 25)) ** 3
    est = l2_norm_estimate(A, tol=1e-14)
    assert est.converged
    assert est.value == pytest.approx(np.linalg.norm(A, 2), rel=1e-10)
    assert np.linalg.norm(A @ est.vector) == pytest.approx(est.value, rel=1e-10)


def test_norm_estimate_flags_nonconvergence(lebesgue):
    est = l2_norm_estimate(s_mu_matrix(lebesgue, BERGMAN, 64), max_iter=1)
    assert not est.converged and est.iterations == 1
    with pytest.raises(DomainError):
        l2_norm_estimate(np.eye(2), tol=0.0)


def test_norm_estimate_survives_tiny_entries():
    A = np.full((3, 3), 1e-200)
    assert l2_norm_estimate(A).value == pytest.approx(3e-200, rel=1e-12)


def test_norm_curve_empty(empty):
    curve = operator_norm_curve(empty, BERGMAN, [8, 16, 32])
    assert curve.estimates == [0.0, 0.0, 0.0]


def test_norm_curve_bounded_family(jacobi_b1):
    curve = operator_norm_curve(jacobi_b1, BERGMAN, [128, 256, 512, 1024])
    assert all(curve.converged)
    assert max(curve.estimates) <= 1.05 * min(curve.estimates)
    # Hardy certificate: mu_n (n+2)^2 = (n+2)/(n+1) <= 2
    assert max(curve.estimates) <= 2.0 * hardy_constant(BERGMAN)


def test_norm_curve_unbounded_family(lebesgue):
    curve = operator_norm_curve(lebesgue, BERGMAN, [128, 256, 512, 1024])
    assert all(r > 1.05 for r in curve.growth_ratios)


def test_norm_curve_requires_increasing(lebesgue):
    with pytest.raises(DomainError):
        operator_norm_curve(lebesgue, BERGMAN, [64, 32])


@settings(max_examples=15, deadline=None)
@given(
    st.sampled_from([Measure.lebesgue(), Measure.jacobi(0.5, 0.5), Measure.atom(0.95, 1.0) + Measure.jacobi(0, 2)]),
    st.sampled_from([KernelParams(2, 2), KernelParams(1, 3), KernelParams(0.5, 3.5)]),
    st.integers(2, 60),
    st.integers(1, 60),
)
def test_submatrix_monotone(m, p, n1, extra):
    small = l2_norm_estimate(s_mu_matrix(m, p, n1)).value
    large = l2_norm_estimate(s_mu_matrix(m, p, n1 + extra)).value
    assert small <= large * (1 + 1e-9)


@pytest.mark.parametrize(
    "m",
    [Measure.jacobi(0.0, 1.0), Measure.jacobi(0.0, 1.5), Measure.atom(0.5), Measure.jacobi(2.0, 0.5, 3.0)],
)
@pytest.mark.parametrize("p", [KernelParams(2, 2), KernelParams(1, 3), KernelParams(1.5, 2.5)])
def test_upper_bound_chain(m, p):
    N = 256
    C = moment_constant(m, p.carleson_exponent, 2 * N - 2, shift=2)
    est = l2_norm_estimate(s_mu_matrix(m, p, N)).value
    assert est <= C * hardy_constant(p) * (1 + 1e-6)


def test_schur_unit_vector():
    K = 4096
    e1 = np.zeros(K)
    e1[0] = 1.0
    oracle = math.fsum(hardy_kernel(float(n), 1.0, BERGMAN) ** 2 for n in range(1, K + 1))
    ratio = schur_ratio(BERGMAN, e1)
    assert ratio == pytest.approx(oracle, rel=1e-12)
    assert ratio < 1.0


def test_schur_zero_vector():
    assert schur_ratio(BERGMAN, np.zeros(32)) == 0.0


def test_schur_random_trials():
    assert schur_inequality_check(KernelParams(1.5, 2.5), trials=100, K=2048, seed=1) <= 1.0


def test_schur_seeded_is_reproducible():
    p = KernelParams(1, 3)
    assert schur_inequality_check(p, 10, 64, 5) == schur_inequality_check(p, 10, 64, 5)
    with pytest.raises(DomainError):
        schur_inequality_check(p, 0, 64, 5)
    with pytest.raises(DomainError):
        schur_inequality_check(p, 3, 8, 5)


def test_lower_bound_examples(empty, half_atom, jacobi_b1):
    assert [r for _, r in lower_bound_check(empty, BERGMAN, [0.5, 0.9])] == [0.0, 0.0]
    assert lower_bound_check(half_atom, BERGMAN, [0.6]) == [(0.6, 0.0)]
    ratios = [r for _, r in lower_bound_check(jacobi_b1, BERGMAN, [0.5, 0.9, 0.99])]
    # frozen from a run; the bracket widens slowly because ||f_t||_{D_2} grows like sqrt(log)
    np.testing.assert_allclose(ratios, [0.28695130881413605, 0.11246365912053741, 0.06790923100362539], rtol=1e-9)
    assert max(ratios) / min(ratios) < 8


def test_lower_bound_domain(jacobi_b1):
    with pytest.raises(DomainError):
        lower_bound_check(jacobi_b1, BERGMAN, [1.0])


def test_compactness_empty(empty):
    assert [t.norm for t in compactness_diagnostic(empty, BERGMAN, 64, [4, 8])] == [0.0, 0.0]


def test_compactness_atom_rank_one_oracle(half_atom):
    # S_mu = u u^T with u_n = sqrt(n+1) 2^-n, so the tail norm is |u_tail| |u|
    N = 256
    cuts = [16, 32, 64, 128]
    mpmath.mp.dps = 40
    full = mpmath.sqrt(mpmath.fsum((n + 1) * mpmath.mpf(4) ** -n for n in range(N)))
    tails = compactness_diagnostic(half_atom, BERGMAN, N, cuts)
    for cut, tail in zip(cuts, tails):
        part = mpmath.sqrt(mpmath.fsum((n + 1) * mpmath.mpf(4) ** -n for n in range(cut + 1, N)))
        assert tail.norm == pytest.approx(float(part * full), rel=1e-9)
    norms = [t.norm for t in tails]
    assert all(b < a for a, b in zip(norms, norms[1:]))
    assert norms[-1] < 1e-6


def test_compactness_vanishing_density():
    tails = compactness_diagnostic(Measure.jacobi(0.0, 1.5), BERGMAN, 1024, [16, 32, 64, 128, 256])
    norms = [t.norm for t in tails]
    assert all(b < a for a, b in zip(norms, norms[1:]))


def test_compactness_nonincreasing_in_cut(lebesgue):
    norms = [t.norm for t in compactness_diagnostic(lebesgue, KernelParams(1, 3), 200, [0, 5, 50, 150, 199])]
    assert all(b <= a * (1 + 1e-9) for a, b in zip(norms, norms[1:]))
    assert norms[-1] == 0.0


def test_boundedness_empty(empty):
    rep = boundedness_diagnostic(empty, BERGMAN, DiagnosticConfig(truncations=(16, 32), decay_N=64))
    assert rep.carleson.sup_ratio == 0.0
    assert rep.moment_decay == (0.0, 0.0)
    assert rep.norm_curve.estimates == [0.0, 0.0]
    assert rep.hardy_bound == 0.0


def test_boundedness_two_carleson_density(jacobi_b1):
    rep = boundedness_diagnostic(jacobi_b1, BERGMAN)
    assert rep.carleson.sup_ratio == pytest.approx(0.5, rel=1e-12)
    assert rep.moment_decay[0] <= 1.0
    assert rep.norm_curve.growth_ratios[-1] < 1.05
    assert rep.hardy_bound >= rep.norm_curve.estimates[-1]
    assert rep.params["s"] == 2.0 and rep.params["eps"] == 1.0
    assert any("stable" in note for note in rep.verdict_notes)


def test_boundedness_lebesgue(lebesgue):
    rep = boundedness_diagnostic(lebesgue, BERGMAN)
    ratios = rep.carleson.ratios
    assert all(b > a for a, b in zip(ratios, ratios[1:]))
    # mu_n (n+1)^2 = n+1: linear growth, so the late/early mean ratio is about 4
    assert rep.moment_decay[0] == pytest.approx(4097.0, rel=1e-12)
    assert rep.moment_decay[1] > 3
    assert rep.norm_curve.growth_ratios[-1] > 1.05
    assert rep.hardy_bound >= rep.norm_curve.estimates[-1]
    assert any("growing" in note for note in rep.verdict_notes)


@pytest.mark.parametrize("m", [Measure.jacobi(0.0, 1.0), Measure.lebesgue(), Measure.atom(0.7)])
def test_norm_representations_agree(m):
    from dhilbert.operator import apply_dh
    from dhilbert.spaces import dirichlet_norm

    p = KernelParams(1.5, 2.5)
    N = 128
    est = l2_norm_estimate(s_mu_matrix(m, p, N))
    rng = np.random.default_rng(0)
    for _ in range(16):
        f = rng.standard_normal(N)
        ratio = dirichlet_norm(apply_dh(m, f, N - 1), p.beta) / dirichlet_norm(f, p.alpha)
        assert ratio <= est.value * (1 + 1e-9)
    top = est.vector / np.arange(1, N + 1) ** ((1 - p.alpha) / 2)
    ratio = dirichlet_norm(apply_dh(m, top, N - 1), p.beta) / dirichlet_norm(top, p.alpha)
    assert ratio == pytest.approx(est.value, rel=1e-6)
